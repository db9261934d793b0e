#include "tropbundle/bundle.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <thread>

#include "tropbundle/error.hpp"
#include "tropbundle/linalg.hpp"

namespace tb {

namespace {

int env_threads() {
  const char* v = std::getenv("TBK_THREADS");
  if (!v) return 1;
  int n = std::atoi(v);
  return n < 1 ? 1 : std::min(n, 64);
}

// Deterministic chunked reduction over [0, n).
Int parallel_sum(long long n, const std::function<Int(long long)>& term) {
  const int threads = env_threads();
  if (threads <= 1 || n < 256) {
    Int total = 0;
    for (long long i = 0; i < n; ++i) total += term(i);
    return total;
  }
  std::vector<Int> partial(threads, 0);
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      Int local = 0;
      for (long long i = t; i < n; i += threads) local += term(i);
      partial[t] = std::move(local);
    });
  }
  for (auto& th : pool) th.join();
  Int total = 0;
  for (const Int& p : partial) total += p;
  return total;
}

}  // namespace

TropicalBundle TropicalBundle::validate(Matroid m, Fan f, MatI diagram) {
  TropicalBundle b;
  b.matroid_ = std::move(m);
  b.fan_ = std::move(f);
  b.diagram_ = std::move(diagram);
  const int n = b.fan_.num_rays();
  if (static_cast<int>(b.diagram_.size()) != n)
    fail(Err::DimensionMismatch, "diagram needs one row per ray");
  for (int r = 0; r < n; ++r) {
    if (static_cast<int>(b.diagram_[r].size()) != b.matroid_.size())
      fail(Err::DimensionMismatch, "diagram row " + std::to_string(r));
    if (!bergman::is_bergman_point(b.matroid_, b.diagram_[r]))
      fail(Err::RowNotBergman, "row " + std::to_string(r));
  }
  // Bases are enumerated in tuple-lex order, so the first adapted one is the
  // lex-smallest certificate.
  for (size_t ci = 0; ci < b.fan_.max_cones().size(); ++ci) {
    const auto& cone = b.fan_.max_cones()[ci];
    Mask found = 0;
    bool ok = false;
    for (Mask basis : b.matroid_.bases()) {
      bool all = true;
      for (int ray : cone) {
        if (!bergman::apartment_contains(b.matroid_, basis, b.diagram_[ray])) {
          all = false;
          break;
        }
      }
      if (all) {
        found = basis;
        ok = true;
        break;
      }
    }
    if (!ok) fail(Err::NoCommonApartment, "maximal cone " + std::to_string(ci));
    b.cone_basis_.push_back(found);
    std::vector<VecI> chars;
    for (int e : b.matroid_.elements_of(found)) {
      VecI values(cone.size());
      for (size_t k = 0; k < cone.size(); ++k) values[k] = b.diagram_[cone[k]][e];
      chars.push_back(b.fan_.solve_character(static_cast<int>(ci), values));
    }
    b.cone_chars_.push_back(std::move(chars));
  }
  return b;
}

Mask TropicalBundle::klyachko_flat(int ray, const Int& t) const {
  if (ray < 0 || ray >= fan_.num_rays()) fail(Err::InvalidInput, "ray index out of range");
  Mask f = 0;
  for (int e = 0; e < matroid_.size(); ++e)
    if (diagram_[ray][e] >= t) f |= Mask(1) << e;
  return f;
}

Mask TropicalBundle::klyachko_intersection(
    const std::vector<std::pair<int, Int>>& ray_thresholds) const {
  Mask f = matroid_.full_mask();
  for (const auto& [ray, t] : ray_thresholds) f &= klyachko_flat(ray, t);
  return f;
}

VecI TropicalBundle::phi_linear_at(int max_cone_idx, const VecI& x) const {
  const auto& cone = fan_.max_cones().at(max_cone_idx);
  MatI at(fan_.dim(), VecI(fan_.dim()));
  for (int i = 0; i < fan_.dim(); ++i)
    for (int j = 0; j < fan_.dim(); ++j) at[i][j] = fan_.ray(cone[j])[i];
  auto coeff = solve_rat(at, x);
  if (!coeff) fail(Err::NonSmoothCone);
  Mask basis = cone_basis_[max_cone_idx];
  auto elems = matroid_.elements_of(basis);
  VecI a(elems.size());
  for (size_t bi = 0; bi < elems.size(); ++bi) {
    Rat v = 0;
    for (size_t k = 0; k < cone.size(); ++k)
      v += (*coeff)[k] * Rat(diagram_[cone[k]][elems[bi]]);
    if (!is_integer(v)) fail(Err::InvalidInput, "non-lattice point");
    a[bi] = numerator(v);
  }
  return bergman::phi_b(matroid_, basis, a);
}

VecI TropicalBundle::phi_at(const VecI& x) const {
  auto [ci, coeff] = fan_.maximal_cone_containing(x);
  (void)coeff;
  return phi_linear_at(ci, x);
}

Int TropicalBundle::evaluate_v(int e, const VecI& x) const {
  if (e < 0 || e >= matroid_.size()) fail(Err::InvalidInput, "element index out of range");
  return phi_at(x)[e];
}

VecI TropicalBundle::parliament_support(int e) const {
  if (e < 0 || e >= matroid_.size()) fail(Err::InvalidInput, "element index out of range");
  VecI s(fan_.num_rays());
  for (int r = 0; r < fan_.num_rays(); ++r) s[r] = diagram_[r][e];
  return s;
}

Polyhedron TropicalBundle::parliament_member(int e) const {
  return from_support(fan_, parliament_support(e));
}

SectionReport TropicalBundle::h0_u(const VecI& u) const {
  std::vector<int> all(fan_.num_rays());
  for (int i = 0; i < fan_.num_rays(); ++i) all[i] = i;
  return h0_u_sigma(all, u);
}

SectionReport TropicalBundle::h0_u_sigma(const std::vector<int>& cone, const VecI& u) const {
  if (static_cast<int>(u.size()) != fan_.dim()) fail(Err::DimensionMismatch);
  SectionReport rep;
  rep.u = u;
  Mask f = matroid_.full_mask();
  for (int ray : cone) {
    if (ray < 0 || ray >= fan_.num_rays()) fail(Err::InvalidInput, "ray index out of range");
    f &= klyachko_flat(ray, dot(u, fan_.ray(ray)));
  }
  rep.flat = f;
  rep.rank = matroid_.rank_of(f);
  return rep;
}

Int TropicalBundle::chi_u(const VecI& u) const {
  if (static_cast<int>(u.size()) != fan_.dim()) fail(Err::DimensionMismatch);
  // Klyachko masks per ray at the thresholds <u, v_rho>.
  std::vector<Mask> ray_mask(fan_.num_rays());
  for (int r = 0; r < fan_.num_rays(); ++r) ray_mask[r] = klyachko_flat(r, dot(u, fan_.ray(r)));
  Int total = 0;
  for (const auto& cone : fan_.all_cones()) {
    Mask f = matroid_.full_mask();
    for (int ray : cone) f &= ray_mask[ray];
    int sign = (fan_.codim(cone) % 2 == 0) ? 1 : -1;
    total += sign * matroid_.rank_of(f);
  }
  return total;
}

std::vector<std::pair<Mask, Int>> TropicalBundle::flat_coefficients() const {
  if (matroid_.size() > 9) fail(Err::TooLarge, "flat decomposition guarded to m <= 9");
  const auto& flats = matroid_.flats();
  // f_r(G) = [some rank-r flat is contained in G] - sum_{G' < G} f_r(G'),
  // accumulated over r >= 1; flats() is sorted by rank so dependencies are
  // already resolved when G is reached.
  std::vector<Int> c(flats.size(), 0);
  for (int r = 1; r <= matroid_.rank(); ++r) {
    std::vector<Int> f(flats.size(), 0);
    for (size_t gi = 0; gi < flats.size(); ++gi) {
      Mask g = flats[gi];
      bool has = false;
      for (Mask fr : flats) {
        if (matroid_.rank_of(fr) != r) continue;
        if ((fr & g) == fr) {
          has = true;
          break;
        }
      }
      Int v = has ? 1 : 0;
      for (size_t hj = 0; hj < flats.size(); ++hj) {
        if (hj == gi) continue;
        Mask h = flats[hj];
        if ((h & g) == h && h != g) v -= f[hj];
      }
      f[gi] = v;
    }
    for (size_t gi = 0; gi < flats.size(); ++gi) c[gi] += f[gi];
  }
  std::vector<std::pair<Mask, Int>> out;
  for (size_t gi = 0; gi < flats.size(); ++gi) out.emplace_back(flats[gi], c[gi]);
  return out;
}

VecI TropicalBundle::flat_support(Mask flat) const {
  VecI s(fan_.num_rays());
  for (int r = 0; r < fan_.num_rays(); ++r) {
    bool have = false;
    Int mn = 0;
    for (int e = 0; e < matroid_.size(); ++e) {
      if (!(flat >> e & 1)) continue;
      if (!have || diagram_[r][e] < mn) {
        mn = diagram_[r][e];
        have = true;
      }
    }
    s[r] = mn;
  }
  return s;
}

Int TropicalBundle::h0_u_via_flats(const VecI& u) const {
  Int total = 0;
  for (const auto& [flat, c] : flat_coefficients()) {
    if (c == 0 || flat == 0) continue;
    VecI s = flat_support(flat);
    bool inside = true;
    for (int r = 0; r < fan_.num_rays() && inside; ++r)
      if (dot(u, fan_.ray(r)) > s[r]) inside = false;
    if (inside) total += c;
  }
  return total;
}

std::pair<VecI, VecI> TropicalBundle::support_box() const {
  // The box must cover both the flat polytopes themselves (supports of h0)
  // and the cone-direction solve points, whose hull carries the alternating
  // cone sums behind chi.  Coordinate bounds from positive ray combinations
  // contain the former even when an inequality of a flat polytope is slack;
  // the solves cover the latter.
  const int d = fan_.dim();
  VecI lo(d), hi(d);
  bool first = true;
  auto expand = [&](const VecI& u) {
    for (int i = 0; i < d; ++i) {
      if (first || u[i] < lo[i]) lo[i] = u[i];
      if (first || u[i] > hi[i]) hi[i] = u[i];
    }
    first = false;
  };
  for (Mask flat : matroid_.flats()) {
    if (matroid_.rank_of(flat) < 1) continue;
    VecI s = flat_support(flat);
    for (size_t ci = 0; ci < fan_.max_cones().size(); ++ci) {
      const auto& cone = fan_.max_cones()[ci];
      VecI values(cone.size());
      for (size_t k = 0; k < cone.size(); ++k) values[k] = s[cone[k]];
      expand(fan_.solve_character(static_cast<int>(ci), values));
    }
    auto [plo, phi] = bounding_box(fan_, s);
    bool feasible = true;
    for (int i = 0; i < d; ++i)
      if (plo[i] > phi[i]) feasible = false;
    if (feasible) {
      expand(plo);
      expand(phi);
    }
  }
  return {lo, hi};
}

namespace {
long long box_size(const VecI& lo, const VecI& hi) {
  long long n = 1;
  for (size_t i = 0; i < lo.size(); ++i) {
    Int w = hi[i] - lo[i] + 1;
    if (w <= 0) return 0;
    n *= to_ll(w);
    if (n > (1LL << 40)) fail(Err::TooLarge, "support box too large");
  }
  return n;
}

VecI box_point(const VecI& lo, const VecI& hi, long long index) {
  VecI u(lo.size());
  for (int i = static_cast<int>(lo.size()) - 1; i >= 0; --i) {
    long long w = to_ll(hi[i] - lo[i] + 1);
    u[i] = lo[i] + Int(index % w);
    index /= w;
  }
  return u;
}
}  // namespace

Int TropicalBundle::h0_total() const {
  auto [lo, hi] = support_box();
  const long long n = box_size(lo, hi);
  return parallel_sum(n, [&](long long i) { return Int(h0_u(box_point(lo, hi, i)).rank); });
}

Int TropicalBundle::chi_total() const {
  auto [lo, hi] = support_box();
  const long long n = box_size(lo, hi);
  return parallel_sum(n, [&](long long i) { return chi_u(box_point(lo, hi, i)); });
}

std::vector<std::pair<int, VecI>> TropicalBundle::characters_on_cone(int max_cone_idx) const {
  if (max_cone_idx < 0 || max_cone_idx >= static_cast<int>(fan_.max_cones().size()))
    fail(Err::NonMaximalCone);
  std::vector<std::pair<int, VecI>> out;
  auto elems = matroid_.elements_of(cone_basis_[max_cone_idx]);
  for (size_t i = 0; i < elems.size(); ++i)
    out.emplace_back(elems[i], cone_chars_[max_cone_idx][i]);
  return out;
}

std::vector<std::vector<VecI>> TropicalBundle::k_class() const {
  std::vector<std::vector<VecI>> out;
  for (size_t ci = 0; ci < fan_.max_cones().size(); ++ci) {
    auto chars = cone_chars_[ci];
    std::sort(chars.begin(), chars.end());
    out.push_back(std::move(chars));
  }
  return out;
}

std::vector<Poly> TropicalBundle::chern_class(int i) const {
  if (i < 0) fail(Err::InvalidInput, "chern index must be >= 0");
  std::vector<Poly> out;
  for (size_t ci = 0; ci < fan_.max_cones().size(); ++ci) {
    std::vector<Poly> forms;
    for (const VecI& u : cone_chars_[ci]) forms.push_back(Poly::linear(u));
    out.push_back(elementary_symmetric(forms, std::min(i, rank()), fan_.dim()));
    if (i > rank()) out.back() = Poly::constant(fan_.dim(), 0);
  }
  return out;
}

std::vector<Poly> TropicalBundle::chern_character() const {
  const int d = fan_.dim();
  std::vector<Poly> out;
  for (size_t ci = 0; ci < fan_.max_cones().size(); ++ci) {
    Poly total = Poly::constant(d, Rat(rank()));
    Int factorial = 1;
    for (int k = 1; k <= d; ++k) {
      factorial *= k;
      Poly pk = Poly::constant(d, 0);
      for (const VecI& u : cone_chars_[ci]) {
        Poly f = Poly::linear(u);
        Poly power = Poly::constant(d, 1);
        for (int j = 0; j < k; ++j) power = power * f;
        pk += power;
      }
      total += pk.scaled(Rat(1) / Rat(factorial));
    }
    out.push_back(total.truncated(d));
  }
  return out;
}

std::vector<int> TropicalBundle::wall_compatibility_failures() const {
  std::vector<int> bad;
  for (size_t wi = 0; wi < fan_.walls().size(); ++wi) {
    const Wall& w = fan_.walls()[wi];
    auto restrict = [&](int cone_idx) {
      std::vector<VecI> tuples;
      for (const VecI& u : cone_chars_[cone_idx]) {
        VecI t;
        for (int ray : w.tau) t.push_back(dot(u, fan_.ray(ray)));
        tuples.push_back(std::move(t));
      }
      std::sort(tuples.begin(), tuples.end());
      return tuples;
    };
    if (restrict(w.cone_pos) != restrict(w.cone_neg)) bad.push_back(static_cast<int>(wi));
  }
  return bad;
}

TropicalBundle TropicalBundle::tensor_line_bundle(const VecI& r) const {
  if (static_cast<int>(r.size()) != fan_.num_rays())
    fail(Err::DimensionMismatch, "line bundle needs one entry per ray");
  MatI rows = diagram_;
  for (int ray = 0; ray < fan_.num_rays(); ++ray)
    for (int e = 0; e < matroid_.size(); ++e) rows[ray][e] += r[ray];
  return validate(matroid_, fan_, std::move(rows));
}

bool TropicalBundle::is_globally_generated(std::vector<GGCertificate>* certs) const {
  if (certs) certs->clear();
  std::vector<VecI> supports;
  for (int e = 0; e < matroid_.size(); ++e) supports.push_back(parliament_support(e));
  for (size_t ci = 0; ci < fan_.max_cones().size(); ++ci) {
    const auto& cone = fan_.max_cones()[ci];
    bool cone_ok = false;
    GGCertificate cert;
    for (Mask basis : matroid_.bases()) {
      bool adapted = true;
      for (int ray : cone)
        if (!bergman::apartment_contains(matroid_, basis, diagram_[ray])) {
          adapted = false;
          break;
        }
      if (!adapted) continue;
      auto elems = matroid_.elements_of(basis);
      std::vector<VecI> chars;
      bool all_vertices = true;
      for (int e : elems) {
        VecI values(cone.size());
        for (size_t k = 0; k < cone.size(); ++k) values[k] = diagram_[cone[k]][e];
        VecI u = fan_.solve_character(static_cast<int>(ci), values);
        // u must be the sigma-direction vertex of the parliament member.
        bool feasible = true;
        for (int ray = 0; ray < fan_.num_rays() && feasible; ++ray)
          if (dot(u, fan_.ray(ray)) > supports[e][ray]) feasible = false;
        if (!feasible) {
          all_vertices = false;
          break;
        }
        chars.push_back(std::move(u));
      }
      if (all_vertices) {
        cone_ok = true;
        cert.cone = static_cast<int>(ci);
        cert.basis = basis;
        cert.characters = std::move(chars);
        break;
      }
    }
    if (!cone_ok) return false;
    if (certs) certs->push_back(std::move(cert));
  }
  return true;
}

Int TropicalBundle::estimate_n0(const VecI& ample) const {
  if (static_cast<int>(ample.size()) != fan_.num_rays())
    fail(Err::DimensionMismatch, "line bundle needs one entry per ray");
  if (!has_normal_fan(fan_, ample)) fail(Err::NotAmple);
  std::vector<VecI> flat_supports;
  for (Mask flat : matroid_.flats())
    if (matroid_.rank_of(flat) >= 1) flat_supports.push_back(flat_support(flat));
  for (Int n = 0;; ++n) {
    bool all_ok = true;
    for (const VecI& s : flat_supports) {
      VecI shifted(s.size());
      for (size_t r = 0; r < s.size(); ++r) shifted[r] = s[r] + n * ample[r];
      if (!has_normal_fan(fan_, shifted)) {
        all_ok = false;
        break;
      }
    }
    if (all_ok) return n;
    if (n > 1000000) fail(Err::TooLarge, "no ample threshold found");
  }
}

int TropicalBundle::positive_ray() const {
  if (fan_.dim() != 1 || fan_.num_rays() != 2) fail(Err::WrongFan, "expected the fan of P1");
  return fan_.ray(0)[0] > 0 ? 0 : 1;
}

int TropicalBundle::negative_ray() const { return 1 - positive_ray(); }

std::optional<std::pair<Mask, VecI>> TropicalBundle::splits() const {
  const int pos = positive_ray(), neg = negative_ray();
  for (Mask basis : matroid_.bases()) {
    if (!bergman::apartment_contains(matroid_, basis, diagram_[pos])) continue;
    if (!bergman::apartment_contains(matroid_, basis, diagram_[neg])) continue;
    VecI degrees;
    for (int e : matroid_.elements_of(basis)) degrees.push_back(diagram_[pos][e] + diagram_[neg][e]);
    return std::make_pair(basis, degrees);
  }
  return std::nullopt;
}

RestrictionResult TropicalBundle::restrict_to_curve(int wall_idx) const {
  if (wall_idx < 0 || wall_idx >= static_cast<int>(fan_.walls().size())) fail(Err::NotAWall);
  const Wall& w = fan_.walls()[wall_idx];
  RestrictionResult out;
  out.basis_pos = cone_basis_[w.cone_pos];
  out.basis_neg = cone_basis_[w.cone_neg];
  Mask support = out.basis_pos | out.basis_neg;
  out.matroid = matroid_.restriction(support);
  auto elems = matroid_.elements_of(support);
  out.rows.assign(2, VecI(elems.size()));
  for (size_t i = 0; i < elems.size(); ++i) {
    out.rows[0][i] = diagram_[w.ray_pos][elems[i]];
    out.rows[1][i] = diagram_[w.ray_neg][elems[i]];
  }
  return out;
}

std::vector<RestrictionResult> TropicalBundle::restrict_to_curve_all_choices(int wall_idx) const {
  if (wall_idx < 0 || wall_idx >= static_cast<int>(fan_.walls().size())) fail(Err::NotAWall);
  const Wall& w = fan_.walls()[wall_idx];
  auto adapted_for_cone = [&](int cone_idx) {
    std::vector<Mask> out;
    const auto& cone = fan_.max_cones()[cone_idx];
    for (Mask basis : matroid_.bases()) {
      bool all = true;
      for (int ray : cone)
        if (!bergman::apartment_contains(matroid_, basis, diagram_[ray])) {
          all = false;
          break;
        }
      if (all) out.push_back(basis);
    }
    return out;
  };
  std::vector<RestrictionResult> out;
  std::set<std::pair<Mask, Mask>> seen;
  for (Mask bp : adapted_for_cone(w.cone_pos)) {
    for (Mask bn : adapted_for_cone(w.cone_neg)) {
      if (!seen.insert({bp, bn}).second) continue;
      RestrictionResult r;
      r.basis_pos = bp;
      r.basis_neg = bn;
      Mask support = bp | bn;
      r.matroid = matroid_.restriction(support);
      auto elems = matroid_.elements_of(support);
      r.rows.assign(2, VecI(elems.size()));
      for (size_t i = 0; i < elems.size(); ++i) {
        r.rows[0][i] = diagram_[w.ray_pos][elems[i]];
        r.rows[1][i] = diagram_[w.ray_neg][elems[i]];
      }
      out.push_back(std::move(r));
    }
  }
  return out;
}

WallSplitting TropicalBundle::wall_splitting(int wall_idx) const {
  if (wall_idx < 0 || wall_idx >= static_cast<int>(fan_.walls().size())) fail(Err::NotAWall);
  WallSplitting out;
  out.wall = wall_idx;
  if (fan_.dim() == 1) {
    // The only toric curve is the whole variety; use the full matroid.
    auto s = splits();
    for (int e = 0; e < matroid_.size(); ++e) out.support.push_back(e);
    if (!s) return out;
    out.status = SplitStatus::Split;
    out.basis = s->first;
    out.degrees = s->second;
    return out;
  }
  const Wall& w = fan_.walls()[wall_idx];
  Mask support = cone_basis_[w.cone_pos] | cone_basis_[w.cone_neg];
  Matroid restricted = matroid_.restriction(support);
  auto elems = matroid_.elements_of(support);
  out.support = elems;
  // Row at the positive off-wall ray, and the negative side evaluated at the
  // opposite lift -v(ray_pos).  With this pairing the degree of a common
  // basis element is the character difference paired with v(ray_pos),
  // independent of the lift of the wall quotient.
  VecI row_pos(elems.size()), row_neg(elems.size());
  VecI neg_lift(fan_.dim());
  for (int i = 0; i < fan_.dim(); ++i) neg_lift[i] = -fan_.ray(w.ray_pos)[i];
  VecI full_neg = phi_linear_at(w.cone_neg, neg_lift);
  for (size_t i = 0; i < elems.size(); ++i) {
    row_pos[i] = diagram_[w.ray_pos][elems[i]];
    row_neg[i] = full_neg[elems[i]];
  }
  for (Mask basis : restricted.bases()) {
    if (!bergman::apartment_contains(restricted, basis, row_pos)) continue;
    if (!bergman::apartment_contains(restricted, basis, row_neg)) continue;
    out.status = SplitStatus::Split;
    out.basis = basis;
    for (int e : restricted.elements_of(basis)) out.degrees.push_back(row_pos[e] + row_neg[e]);
    return out;
  }
  return out;
}

NefReport TropicalBundle::is_nef() const {
  NefReport rep;
  bool any_unsplit = false, all_nonneg = true;
  const size_t nwalls = fan_.walls().size();
  for (size_t wi = 0; wi < nwalls; ++wi) {
    WallSplitting ws = wall_splitting(static_cast<int>(wi));
    if (ws.status != SplitStatus::Split) {
      any_unsplit = true;
    } else {
      for (const Int& d : ws.degrees)
        if (d < 0) all_nonneg = false;
    }
    rep.walls.push_back(std::move(ws));
  }
  rep.status = any_unsplit ? NefStatus::UnsplitWithinMatroid
                           : (all_nonneg ? NefStatus::Yes : NefStatus::No);
  return rep;
}

NefReport TropicalBundle::is_ample() const {
  NefReport rep = is_nef();
  if (rep.status == NefStatus::Yes) {
    for (const auto& ws : rep.walls)
      for (const Int& d : ws.degrees)
        if (d <= 0) rep.status = NefStatus::No;
  }
  return rep;
}

TropicalBundle pullback_linear(const TropicalBundle& bundle, const MatI& lambda, const Fan& src) {
  const Fan& tgt = bundle.fan();
  if (static_cast<int>(lambda.size()) != tgt.dim())
    fail(Err::DimensionMismatch, "map must land in the bundle's lattice");
  for (const auto& row : lambda)
    if (static_cast<int>(row.size()) != src.dim())
      fail(Err::DimensionMismatch, "map must be defined on the source lattice");
  auto apply = [&](const VecI& x) {
    VecI y(tgt.dim());
    for (int i = 0; i < tgt.dim(); ++i) y[i] = dot(lambda[i], x);
    return y;
  };
  // Each source cone must land inside a single target cone.
  for (size_t ci = 0; ci < src.max_cones().size(); ++ci) {
    const auto& cone = src.max_cones()[ci];
    std::vector<VecI> images;
    VecI interior(tgt.dim(), 0);
    for (int ray : cone) {
      images.push_back(apply(src.ray(ray)));
      for (int i = 0; i < tgt.dim(); ++i) interior[i] += images.back()[i];
    }
    auto inside = [&](int tgt_cone, const VecI& x) {
      const auto& tc = tgt.max_cones()[tgt_cone];
      MatI at(tgt.dim(), VecI(tgt.dim()));
      for (int i = 0; i < tgt.dim(); ++i)
        for (int j = 0; j < tgt.dim(); ++j) at[i][j] = tgt.ray(tc[j])[i];
      auto sol = solve_rat(at, x);
      if (!sol) return false;
      return std::all_of(sol->begin(), sol->end(), [](const Rat& v) { return v >= 0; });
    };
    int candidate = -1;
    try {
      candidate = src.dim() == tgt.dim() ? tgt.maximal_cone_containing(interior).first : -1;
    } catch (const TbError&) {
      candidate = -1;
    }
    bool found = false;
    if (candidate >= 0) {
      found = true;
      for (const VecI& img : images)
        if (!inside(candidate, img)) {
          found = false;
          break;
        }
    }
    if (!found) {
      for (size_t ti = 0; ti < tgt.max_cones().size() && !found; ++ti) {
        bool all = true;
        for (const VecI& img : images)
          if (!inside(static_cast<int>(ti), img)) {
            all = false;
            break;
          }
        found = all;
      }
    }
    if (!found) fail(Err::ConeImageNotContained, "source cone " + std::to_string(ci));
  }
  MatI rows;
  for (int r = 0; r < src.num_rays(); ++r) rows.push_back(bundle.phi_at(apply(src.ray(r))));
  return TropicalBundle::validate(bundle.matroid(), src, std::move(rows));
}

}  // namespace tb
