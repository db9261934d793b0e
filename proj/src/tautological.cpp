#include "tropbundle/tautological.hpp"

#include <algorithm>

#include "tropbundle/error.hpp"

namespace tb {

TropicalBundle tautological_bundle(const Matroid& m, TautKind kind) {
  if (m.size() < 2) fail(Err::InvalidInput, "tautological bundle needs m >= 2");
  if (kind == TautKind::Quotient) return cremona_pullback(tautological_bundle(m.dual()));
  Fan fan = Fan::permutahedral(m.size());
  MatI rows(fan.num_rays(), VecI(m.size()));
  for (int r = 0; r < fan.num_rays(); ++r) {
    Mask s = fan.perm_ray_subsets()[r];
    Mask cl = m.closure(s);
    const int last_in = (s >> (m.size() - 1)) & 1;
    for (int e = 0; e < m.size(); ++e) rows[r][e] = Int(int((cl >> e) & 1) - last_in);
  }
  return TropicalBundle::validate(m, std::move(fan), std::move(rows));
}

TropicalBundle cremona_pullback(const TropicalBundle& bundle) {
  const Fan& fan = bundle.fan();
  if (!fan.is_permutahedral()) fail(Err::WrongFan, "Cremona needs the permutahedral fan");
  const int d = fan.dim();
  MatI lambda(d, VecI(d, 0));
  for (int i = 0; i < d; ++i) lambda[i][i] = -1;
  return pullback_linear(bundle, lambda, fan);
}

TropicalBundle bundle_from_pl_data(const Matroid& m, const Fan& fan, const MatI& psi) {
  if (static_cast<int>(psi.size()) != fan.num_rays())
    fail(Err::DimensionMismatch, "psi needs one row per ray");
  MatI rows;
  for (const VecI& row : psi) rows.push_back(bergman::projection(m, row));
  return TropicalBundle::validate(m, fan, std::move(rows));
}

NefSweepReport nef_sweep(const TropicalBundle& bundle) {
  NefSweepReport rep;
  const int r = bundle.rank();
  for (size_t wi = 0; wi < bundle.fan().walls().size(); ++wi) {
    WallSplitting ws = bundle.wall_splitting(static_cast<int>(wi));
    NefSweepEntry entry;
    entry.wall = static_cast<int>(wi);
    entry.status = ws.status;
    entry.degrees = ws.degrees;
    std::sort(entry.degrees.begin(), entry.degrees.end(), std::greater<Int>());
    if (ws.status != SplitStatus::Split) {
      rep.all_split = false;
      rep.nef_tautological_shape = false;
    } else {
      VecI ones(r, 0);
      if (!ones.empty()) ones[0] = 1;
      VecI zeros(r, 0);
      if (entry.degrees != ones && entry.degrees != zeros) rep.nef_tautological_shape = false;
    }
    rep.walls.push_back(std::move(entry));
  }
  return rep;
}

NefSweepReport nef_certificate_tautological(const Matroid& m, bool allow_large) {
  if (m.size() > 6 && !allow_large)
    fail(Err::ScaleGuard, "wall sweep guarded to m <= 6; pass the force flag for larger");
  return nef_sweep(tautological_bundle(m));
}

}  // namespace tb
