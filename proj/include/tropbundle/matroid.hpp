#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "tropbundle/numeric.hpp"

namespace tb {

using Mask = std::uint32_t;

inline int popcount(Mask m) { return __builtin_popcount(m); }

// Loop-free matroid given by its basis family on a ground set of labelled
// elements.  Everything derived (rank table, circuits, flats, fundamental
// circuits) is computed eagerly, so instances are deeply immutable and safe
// to share across threads.  Intended for desk-scale ground sets (m <= 16).
class Matroid {
 public:
  static constexpr int kMaxGround = 16;

  Matroid() = default;  // empty placeholder; every factory validates

  static Matroid from_bases(std::vector<std::string> ground,
                            const std::vector<std::vector<std::string>>& bases);
  static Matroid from_basis_masks(std::vector<std::string> ground, std::vector<Mask> bases);
  static Matroid from_circuits(std::vector<std::string> ground,
                               const std::vector<std::vector<std::string>>& circuits);
  static Matroid uniform(int r, int m);
  static Matroid fano();
  static Matroid vamos();
  // Columns of `matrix` are the ground elements; exact rank over Q, or over
  // GF(p) when `prime` is set.
  static Matroid linear(std::vector<std::string> ground, const MatI& matrix,
                        std::optional<long long> prime = std::nullopt);
  // "uniform:r,m" | "fano" | "vamos"
  static Matroid named(const std::string& name);

  int size() const { return m_; }
  int rank() const { return rank_; }
  Mask full_mask() const { return m_ == 32 ? ~Mask(0) : ((Mask(1) << m_) - 1); }
  const std::vector<std::string>& ground() const { return ground_; }
  const std::string& label(int e) const { return ground_[e]; }
  int index_of(const std::string& label) const;  // InvalidInput when missing

  const std::vector<Mask>& bases() const { return bases_; }       // sorted index-tuple lex
  const std::vector<Mask>& circuits() const { return circuits_; }
  const std::vector<Mask>& flats() const { return flats_; }       // sorted by (rank, tuple)
  std::vector<Mask> flats_of_rank(int k) const;

  bool is_basis(Mask s) const { return basis_set_.count(s) > 0; }
  bool is_independent(Mask s) const { return independent_[s]; }
  int rank_of(Mask s) const { return rank_tab_[s]; }
  Mask closure(Mask s) const;
  bool is_flat(Mask s) const { return closure(s) == s; }
  bool is_loop_free() const;  // always true post-construction

  // The unique circuit inside B u {e}; errors NotABasis / ElementInBasis.
  Mask fundamental_circuit(int e, Mask basis) const;
  // Same, by precomputed per-basis table: list of (element, circuit) for e not in B.
  const std::vector<std::pair<int, Mask>>& fundamental_circuits(Mask basis) const;

  Matroid dual() const;
  Matroid quotient(Mask flat) const;      // NotAFlat
  Matroid restriction(Mask subset) const; // EmptyBases when subset empty

  int submodular_defect(Mask f1, Mask f2) const;  // NotAFlat
  bool is_modular() const;

  // Basis of maximal w-weight, built greedily in descending weight with ties
  // broken by tie_order (a permutation of element indices; ground order when
  // absent).
  Mask greedy_basis(const VecQ& w, const std::vector<int>* tie_order = nullptr) const;
  Mask max_weight_basis_bruteforce(const VecQ& w) const;

  std::vector<int> elements_of(Mask s) const;
  std::vector<std::string> labels_of(Mask s) const;  // ground order
  Mask mask_of(const std::vector<std::string>& labels) const;

  bool operator==(const Matroid& o) const {
    return ground_ == o.ground_ && bases_ == o.bases_;
  }

 private:
  void finish_construction();  // validates axioms, fills tables

  std::vector<std::string> ground_;
  int m_ = 0;
  int rank_ = 0;
  std::vector<Mask> bases_;
  std::unordered_set<Mask> basis_set_;
  std::vector<char> independent_;
  std::vector<std::int8_t> rank_tab_;
  std::vector<Mask> circuits_;
  std::vector<Mask> flats_;
  std::unordered_map<Mask, std::vector<std::pair<int, Mask>>> fund_circuits_;
};

// Lex order on the sorted index tuples of two equal-size masks.
bool tuple_lex_less(Mask a, Mask b);

}  // namespace tb
