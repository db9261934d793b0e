#pragma once

#include <vector>

#include "tropbundle/matroid.hpp"
#include "tropbundle/numeric.hpp"

namespace tb {

// Weighted flag of flats: strictly decreasing thresholds with strictly
// increasing flats, the last being the full ground set.
struct WeightedFlag {
  VecI thresholds;
  std::vector<Mask> flats;
};

namespace bergman {

// Every circuit attains its minimum at least twice.
bool is_bergman_point(const Matroid& m, const VecI& w);

WeightedFlag flag_filtration(const Matroid& m, const VecI& w);     // NotBergman
VecI point_from_flag(const Matroid& m, const WeightedFlag& flag);  // NotNested / NotAFlat

// phi_B: fill non-basis coordinates by the min over the fundamental circuit.
// `a` is indexed by the basis elements in ground order.
VecI phi_b(const Matroid& m, Mask basis, const VecI& a);
VecI project_to_basis(const Matroid& m, Mask basis, const VecI& w);  // pi_B
bool apartment_contains(const Matroid& m, Mask basis, const VecI& w);
std::vector<Mask> adapted_bases(const Matroid& m, const VecI& w);

// Canonical projection onto the Bergman fan: w'_i = sup{ k : i in
// span{ j : w_j >= k } }.  Idempotent; identity on Bergman points.
VecI projection(const Matroid& m, const VecI& w);

enum class SymKind { Elementary, Power, ExpTruncated };

// Evaluate the universal symmetric function through any adapted basis.
// Elementary i and Power k give integers; ExpTruncated n gives
// sum_{k<=n} p_k / k!.
Rat symmetric_evaluate(const Matroid& m, const VecI& w, SymKind kind, int k);

}  // namespace bergman

}  // namespace tb
