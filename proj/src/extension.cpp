#include "tropbundle/extension.hpp"

#include <algorithm>
#include <set>

#include "tropbundle/error.hpp"

namespace tb {

ExtensionMap ExtensionMap::identity(const Matroid& m) {
  ExtensionMap ext{m, m, {}};
  for (int i = 0; i < m.size(); ++i) ext.map.push_back(i);
  return ext;
}

void check_extension(const ExtensionMap& ext) {
  const Matroid& src = ext.source;
  const Matroid& tgt = ext.target;
  if (static_cast<int>(ext.map.size()) != src.size())
    fail(Err::DimensionMismatch, "map must cover the source ground set");
  std::set<int> image;
  for (int v : ext.map) {
    if (v < 0 || v >= tgt.size()) fail(Err::InvalidInput, "map image out of range");
    if (!image.insert(v).second) fail(Err::NotInjective);
  }
  if (src.rank() != tgt.rank()) fail(Err::RankMismatch);
  // Subsets of the source are bases exactly when their images are.
  const Mask full = src.full_mask();
  for (Mask s = 0; s <= full; ++s) {
    if (popcount(s) != src.rank()) continue;
    Mask img = 0;
    for (int e = 0; e < src.size(); ++e)
      if (s >> e & 1) img |= Mask(1) << ext.map[e];
    if (src.is_basis(s) != tgt.is_basis(img))
      fail(Err::NotAnExtension, "induced matroid differs on " + std::to_string(s));
  }
}

bool is_extension(const ExtensionMap& ext) {
  try {
    check_extension(ext);
    return true;
  } catch (const TbError&) {
    return false;
  }
}

VecI pushforward_point(const ExtensionMap& ext, const VecI& w) {
  check_extension(ext);
  if (!bergman::is_bergman_point(ext.source, w)) fail(Err::NotBergman);
  WeightedFlag flag = bergman::flag_filtration(ext.source, w);
  VecI out(ext.target.size());
  std::vector<char> assigned(ext.target.size(), 0);
  for (size_t i = 0; i < flag.flats.size(); ++i) {
    Mask img = 0;
    for (int e = 0; e < ext.source.size(); ++e)
      if (flag.flats[i] >> e & 1) img |= Mask(1) << ext.map[e];
    Mask span = ext.target.closure(img);
    for (int e = 0; e < ext.target.size(); ++e) {
      if (!assigned[e] && (span >> e & 1)) {
        out[e] = flag.thresholds[i];
        assigned[e] = 1;
      }
    }
  }
  // The outermost flat spans the target (equal ranks), so all coordinates
  // are assigned.
  return out;
}

TropicalBundle pushforward_bundle(const ExtensionMap& ext, const TropicalBundle& bundle) {
  check_extension(ext);
  if (!(bundle.matroid() == ext.source)) fail(Err::NotAnExtension, "bundle matroid is not the source");
  MatI rows;
  for (const VecI& row : bundle.diagram()) rows.push_back(pushforward_point(ext, row));
  return TropicalBundle::validate(ext.target, bundle.fan(), std::move(rows));
}

ExtensionMap principal_extension(const Matroid& m, Mask flat, const std::string& new_label) {
  if (!m.is_flat(flat)) fail(Err::NotAFlat);
  if (m.rank_of(flat) < 1) fail(Err::LoopDetected, "principal extension on a rank-0 flat adds a loop");
  std::vector<std::string> ground = m.ground();
  ground.push_back(new_label);
  const int x = m.size();
  std::vector<Mask> bases;
  // r'(A + x) = r(A) + 1 when the flat is not contained in cl(A), else r(A).
  for (Mask b : m.bases()) bases.push_back(b);
  const Mask full = m.full_mask();
  for (Mask a = 0; a <= full; ++a) {
    if (popcount(a) != m.rank() - 1 || !m.is_independent(a)) continue;
    Mask cl = m.closure(a);
    if ((cl & flat) == flat) continue;  // x falls into cl(A)
    bases.push_back(a | (Mask(1) << x));
  }
  ExtensionMap ext{m, Matroid::from_basis_masks(std::move(ground), std::move(bases)), {}};
  for (int i = 0; i < m.size(); ++i) ext.map.push_back(i);
  check_extension(ext);
  return ext;
}

std::optional<SplitWitness> equivalent_split_search(
    const TropicalBundle& bundle, const std::vector<ExtensionMap>& candidates) {
  auto try_one = [&](const ExtensionMap& ext, int index) -> std::optional<SplitWitness> {
    TropicalBundle pushed = pushforward_bundle(ext, bundle);
    auto s = pushed.splits();
    if (!s) return std::nullopt;
    SplitWitness w;
    w.candidate = index;
    w.basis = s->first;
    w.basis_labels = pushed.matroid().labels_of(s->first);
    w.degrees = s->second;
    return w;
  };
  if (auto w = try_one(ExtensionMap::identity(bundle.matroid()), -1)) return w;
  for (size_t i = 0; i < candidates.size(); ++i) {
    check_extension(candidates[i]);
    if (!(candidates[i].source == bundle.matroid()))
      fail(Err::NotAnExtension, "candidate " + std::to_string(i) + " has the wrong source");
    if (auto w = try_one(candidates[i], static_cast<int>(i))) return w;
  }
  return std::nullopt;
}

std::optional<DefectObstruction> defect_obstruction(const TropicalBundle& bundle) {
  const Matroid& m = bundle.matroid();
  const Fan& fan = bundle.fan();
  if (fan.dim() != 1 || fan.num_rays() != 2) fail(Err::WrongFan, "expected a bundle over P1");
  const int pos = fan.ray(0)[0] > 0 ? 0 : 1;
  WeightedFlag fp = bergman::flag_filtration(m, bundle.diagram()[pos]);
  WeightedFlag fn = bergman::flag_filtration(m, bundle.diagram()[1 - pos]);
  for (Mask f : fp.flats)
    for (Mask h : fn.flats) {
      int d = m.submodular_defect(f, h);
      if (d > 0) return DefectObstruction{f, h, d};
    }
  return std::nullopt;
}

std::vector<KlyachkoRankDiff> compare_klyachko_ranks(const ExtensionMap& ext,
                                                     const TropicalBundle& bundle,
                                                     const TropicalBundle& pushed, const Int& lo,
                                                     const Int& hi) {
  check_extension(ext);
  const int n = bundle.fan().num_rays();
  if (pushed.fan().num_rays() != n) fail(Err::DimensionMismatch);
  Int width = hi - lo + 1;
  if (width <= 0) return {};
  Int count = 1;
  for (int i = 0; i < n; ++i) {
    count *= width;
    if (count > 2000000) fail(Err::TooLarge, "threshold window too large");
  }
  std::vector<KlyachkoRankDiff> out;
  VecI t(n, lo);
  while (true) {
    std::vector<std::pair<int, Int>> q;
    for (int i = 0; i < n; ++i) q.emplace_back(i, t[i]);
    int rs = bundle.matroid().rank_of(bundle.klyachko_intersection(q));
    int rt = pushed.matroid().rank_of(pushed.klyachko_intersection(q));
    if (rs != rt) out.push_back({t, rs, rt});
    int i = n - 1;
    while (i >= 0) {
      if (t[i] < hi) {
        ++t[i];
        break;
      }
      t[i] = lo;
      --i;
    }
    if (i < 0) break;
  }
  return out;
}

}  // namespace tb
