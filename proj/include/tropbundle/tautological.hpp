#pragma once

#include <string>
#include <vector>

#include "tropbundle/bundle.hpp"

namespace tb {

enum class TautKind { SubDual, Quotient };

// Tautological bundle of a matroid on the permutahedral variety, in the
// quotient-lattice model: the diagram entry at the ray of a subset S and
// column i is [e_i in closure(S)] - [the last element lies in S].
TropicalBundle tautological_bundle(const Matroid& m, TautKind kind = TautKind::SubDual);

// Pullback along negation of the cocharacter lattice; the fan must be
// permutahedral (WrongFan).
TropicalBundle cremona_pullback(const TropicalBundle& bundle);

// Bundle from user piecewise-linear ray data: rows are the Bergman
// projections of the rows of psi; validation failures (NoCommonApartment)
// signal that the fan must be refined by the caller.
TropicalBundle bundle_from_pl_data(const Matroid& m, const Fan& fan, const MatI& psi);

struct NefSweepEntry {
  int wall = -1;
  SplitStatus status = SplitStatus::UnsplitWithinMatroid;
  VecI degrees;  // sorted descending
};

struct NefSweepReport {
  std::vector<NefSweepEntry> walls;
  bool all_split = true;
  // True when every wall splits with degree multiset {1,0,...,0} or {0,...,0}.
  bool nef_tautological_shape = true;
};

// Wall-by-wall splitting sweep of the tautological bundle; guarded to m <= 6
// unless allow_large (ScaleGuard).
NefSweepReport nef_certificate_tautological(const Matroid& m, bool allow_large = false);
NefSweepReport nef_sweep(const TropicalBundle& bundle);

}  // namespace tb
