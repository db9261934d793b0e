#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tropbundle/bergman.hpp"
#include "tropbundle/fan.hpp"
#include "tropbundle/matroid.hpp"
#include "tropbundle/polyhedron.hpp"
#include "tropbundle/polynomial.hpp"

namespace tb {

struct SectionReport {
  VecI u;
  Mask flat = 0;
  int rank = 0;
};

struct GGCertificate {
  int cone = -1;
  Mask basis = 0;
  std::vector<VecI> characters;  // aligned with basis elements in ground order
};

enum class SplitStatus { Split, UnsplitWithinMatroid };

// Splitting analysis of a wall restriction: when Split, `basis` is a common
// adapted basis of the restricted rows and `degrees` the line-bundle degrees
// of its elements (ground order of the restricted matroid).
struct WallSplitting {
  int wall = -1;
  SplitStatus status = SplitStatus::UnsplitWithinMatroid;
  Mask basis = 0;            // in the restricted matroid's indexing
  std::vector<int> support;  // elements of M spanning the restricted matroid
  VecI degrees;
};

enum class NefStatus { Yes, No, UnsplitWithinMatroid };

struct NefReport {
  NefStatus status = NefStatus::UnsplitWithinMatroid;
  std::vector<WallSplitting> walls;
};

struct RestrictionResult {
  Matroid matroid;          // restriction of M to the union of the two bases
  MatI rows;                // 2 x |M'|: rows at the +/- rays of P1
  Mask basis_pos = 0, basis_neg = 0;  // adapted bases used (in M's indexing)
};

// Tropical toric vector bundle: matroid, smooth complete fan, and an
// integral diagram whose rows are Bergman points with a common apartment on
// every maximal cone.  Validation certifies one adapted basis per maximal
// cone (lex-smallest) and the corresponding characters.
class TropicalBundle {
 public:
  static TropicalBundle validate(Matroid m, Fan f, MatI diagram);

  const Matroid& matroid() const { return matroid_; }
  const Fan& fan() const { return fan_; }
  const MatI& diagram() const { return diagram_; }
  int rank() const { return matroid_.rank(); }
  Mask cone_basis(int max_cone_idx) const { return cone_basis_.at(max_cone_idx); }
  const std::vector<VecI>& cone_characters(int max_cone_idx) const {
    return cone_chars_.at(max_cone_idx);
  }

  // Klyachko flats.
  Mask klyachko_flat(int ray, const Int& t) const;
  Mask klyachko_intersection(const std::vector<std::pair<int, Int>>& ray_thresholds) const;

  // Piecewise-linear map evaluation; x must be a lattice point.
  VecI phi_at(const VecI& x) const;
  Int evaluate_v(int e, const VecI& x) const;
  // Linear extension of Phi|_sigma to all of N (sigma a maximal cone index).
  VecI phi_linear_at(int max_cone_idx, const VecI& x) const;

  // Sections.
  VecI parliament_support(int e) const;  // column e as a support vector
  Polyhedron parliament_member(int e) const;
  SectionReport h0_u(const VecI& u) const;
  SectionReport h0_u_sigma(const std::vector<int>& cone, const VecI& u) const;
  Int chi_u(const VecI& u) const;

  // Flat-indicator decomposition; flat_coefficients guards m <= 9.
  std::vector<std::pair<Mask, Int>> flat_coefficients() const;  // TooLarge
  Int h0_u_via_flats(const VecI& u) const;

  // Support vector of P_{D,F} (row-wise min over the columns of F).
  VecI flat_support(Mask flat) const;
  // Box containing every cone-direction vertex of every positive-rank flat
  // polytope; totals are summed over it.
  std::pair<VecI, VecI> support_box() const;
  Int h0_total() const;
  Int chi_total() const;

  // Characteristic classes.
  std::vector<std::pair<int, VecI>> characters_on_cone(int max_cone_idx) const;
  std::vector<std::vector<VecI>> k_class() const;  // per max cone, character multiset
  std::vector<Poly> chern_class(int i) const;      // per max cone
  std::vector<Poly> chern_character() const;       // per max cone, truncated at dim
  // Wall indices where character multisets fail to match after restriction
  // to the wall span (empty for every valid bundle).
  std::vector<int> wall_compatibility_failures() const;

  TropicalBundle tensor_line_bundle(const VecI& r) const;

  bool is_globally_generated(std::vector<GGCertificate>* certs = nullptr) const;

  // Smallest N >= 0 with all positive-rank flat polytopes of D + N*L having
  // outer normal fan Sigma; L must itself pass has_normal_fan (NotAmple).
  Int estimate_n0(const VecI& ample) const;

  // Restriction to the toric curve of a wall, as a bundle over P1 with rows
  // D[ray_pos], D[ray_neg] on the columns of the induced matroid.
  RestrictionResult restrict_to_curve(int wall_idx) const;  // NotAWall
  std::vector<RestrictionResult> restrict_to_curve_all_choices(int wall_idx) const;

  // Degrees of the wall restriction via character differences (the lattice
  // quotient by the wall span), independent of the ray lift.
  WallSplitting wall_splitting(int wall_idx) const;

  // For bundles over P1: common adapted basis for the two rows plus the
  // per-element degrees row_pos[b] + row_neg[b].  WrongFan otherwise.
  std::optional<std::pair<Mask, VecI>> splits() const;

  NefReport is_nef() const;
  NefReport is_ample() const;

 private:
  TropicalBundle() = default;
  int positive_ray() const;  // for P1-shaped fans
  int negative_ray() const;

  Matroid matroid_;
  Fan fan_;
  MatI diagram_;
  std::vector<Mask> cone_basis_;
  std::vector<std::vector<VecI>> cone_chars_;
};

// Linear pullback: lambda maps the source lattice into the bundle's lattice
// and every cone of src into a cone of the bundle's fan.
TropicalBundle pullback_linear(const TropicalBundle& bundle, const MatI& lambda, const Fan& src);

}  // namespace tb
