#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tropbundle/bundle.hpp"

namespace tb {

// Rank-preserving matroid extension: an injective map of ground sets that
// induces the source matroid on its image.
struct ExtensionMap {
  Matroid source;
  Matroid target;
  std::vector<int> map;  // source index -> target index

  static ExtensionMap identity(const Matroid& m);
};

// Validates injectivity, equal ranks, and basis preservation both ways;
// errors NotInjective / RankMismatch / NotAnExtension.
void check_extension(const ExtensionMap& ext);
bool is_extension(const ExtensionMap& ext);

// Push a Bergman point forward through the flag filtration (span each flat
// in the target and re-read coordinates).
VecI pushforward_point(const ExtensionMap& ext, const VecI& w);

// Push every diagram row forward; the result is re-validated.
TropicalBundle pushforward_bundle(const ExtensionMap& ext, const TropicalBundle& bundle);

// Principal extension of `m` along a flat: a new element added freely to the
// flat.  Returns the extension from m into the larger matroid.
ExtensionMap principal_extension(const Matroid& m, Mask flat, const std::string& new_label);

struct SplitWitness {
  int candidate = -1;  // -1 for the identity extension
  Mask basis = 0;      // in the pushed bundle's matroid
  std::vector<std::string> basis_labels;
  VecI degrees;
};

// Try the identity and then each candidate extension; return the first whose
// pushforward splits over P1.  Bounded search only.
std::optional<SplitWitness> equivalent_split_search(const TropicalBundle& bundle,
                                                    const std::vector<ExtensionMap>& candidates);

struct DefectObstruction {
  Mask flat_pos = 0, flat_neg = 0;
  int defect = 0;
};

// Scan pairs of flats from the two row flags of a P1 bundle for a positive
// submodular defect; such a pair rules out a common adapted basis within M.
std::optional<DefectObstruction> defect_obstruction(const TropicalBundle& bundle);

// Klyachko-flat rank comparison between a bundle and its pushforward over a
// window of thresholds; returns the tuples where the ranks differ.
struct KlyachkoRankDiff {
  VecI thresholds;
  int rank_source = 0, rank_target = 0;
};
std::vector<KlyachkoRankDiff> compare_klyachko_ranks(const ExtensionMap& ext,
                                                     const TropicalBundle& bundle,
                                                     const TropicalBundle& pushed, const Int& lo,
                                                     const Int& hi);

}  // namespace tb
