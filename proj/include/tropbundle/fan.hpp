#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "tropbundle/matroid.hpp"
#include "tropbundle/numeric.hpp"

namespace tb {

// Codimension-1 face shared by two maximal cones, together with the two
// off-wall rays and the coefficients of the wall relation
//   v(ray_pos) + v(ray_neg) = sum_{rho in tau} relation[rho] * v(rho).
struct Wall {
  std::vector<int> tau;  // sorted ray indices of the wall
  int cone_pos = -1, cone_neg = -1;
  int ray_pos = -1, ray_neg = -1;
  VecI relation;  // aligned with tau
};

// Smooth complete simplicial fan with primitive integer rays.  Smoothness
// (unimodular maximal cones) and completeness (every wall shared by exactly
// two maximal cones, connected dual graph) are certified at construction.
class Fan {
 public:
  Fan() = default;  // empty placeholder; every factory validates

  static Fan from_data(int dim, MatI rays, std::vector<std::vector<int>> max_cones);
  static Fan p1();
  static Fan p2();
  static Fan pn(int n);
  static Fan p1xp1();
  static Fan permutahedral(int m);
  // "p1" | "p2" | "pn:n" | "p1xp1" | "perm:m"
  static Fan named(const std::string& name);

  int dim() const { return dim_; }
  int num_rays() const { return static_cast<int>(rays_.size()); }
  const MatI& rays() const { return rays_; }
  const VecI& ray(int i) const { return rays_[i]; }
  const std::vector<std::vector<int>>& max_cones() const { return max_cones_; }
  const std::vector<Wall>& walls() const { return walls_; }

  // Every face of every maximal cone (as sorted ray-index sets), including
  // the zero cone; sorted by (size, lex).
  const std::vector<std::vector<int>>& all_cones() const;
  int codim(const std::vector<int>& cone) const { return dim_ - static_cast<int>(cone.size()); }

  // Index of some maximal cone containing x, plus the (rational, >= 0)
  // coordinates of x in its ray basis.  PointNotCovered when outside |Sigma|
  // (cannot happen for validated complete fans).
  std::pair<int, VecQ> maximal_cone_containing(const VecI& x) const;
  // Minimal face containing x: the rays with positive coefficient.
  std::vector<int> cone_containing(const VecI& x) const;

  // Solve <u, v_rho> = values[k] over the rays of a maximal cone (unimodular).
  VecI solve_character(int max_cone_idx, const VecI& values) const;

  bool structurally_equal(const Fan& o) const {
    return dim_ == o.dim_ && rays_ == o.rays_ && max_cones_ == o.max_cones_;
  }

  // Set for permutahedral fans: ray index -> subset of {0..m-1}.
  const std::vector<Mask>& perm_ray_subsets() const { return perm_subsets_; }
  int perm_m() const { return perm_m_; }
  bool is_permutahedral() const { return perm_m_ > 0; }

 private:
  void validate_and_derive();

  int dim_ = 0;
  MatI rays_;
  std::vector<std::vector<int>> max_cones_;
  std::vector<Wall> walls_;
  mutable std::vector<std::vector<int>> all_cones_;  // built lazily
  std::shared_ptr<std::mutex> cones_mutex_ = std::make_shared<std::mutex>();
  std::vector<Mask> perm_subsets_;
  int perm_m_ = 0;
};

}  // namespace tb
