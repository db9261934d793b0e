// Acceptance suite: runs every acceptance criterion and prints one PASS/FAIL
// line per criterion.  Exit code is the number of failed criteria.

#include <chrono>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "tropbundle/extension.hpp"
#include "tropbundle/serialize.hpp"
#include "tropbundle/tautological.hpp"

using namespace tb;
namespace bg = tb::bergman;

namespace {

int g_failed = 0;

struct Criterion {
  int number;
  bool ok = true;
  std::ostringstream detail;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  explicit Criterion(int n) : number(n) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << (detail.str().empty() ? "" : "; ") << what;
    }
  }
  void finish(const std::string& summary) {
    std::cout << "criterion " << number << ": " << (ok ? "PASS" : "FAIL") << " - " << summary;
    if (!ok) std::cout << " [" << detail.str() << "]";
    std::cout << "\n";
    if (!ok) ++g_failed;
  }
};

VecI vec(std::initializer_list<long long> xs) {
  VecI v;
  for (long long x : xs) v.push_back(Int(x));
  return v;
}

TropicalBundle fano_bundle() { return bundle_from_json(example_bundle_json("fano-bundle")); }

TropicalBundle vamos_p1() { return bundle_from_json(example_bundle_json("vamos-p1")); }

// 20 random diagrams in the ample locus of (P2, U_{2,3}): entries in [0,5],
// Bergman rows, every positive-rank flat polytope with normal fan P2.
std::vector<MatI> ample_u23_diagrams() {
  std::mt19937_64 rng(20240809);
  std::uniform_int_distribution<long long> entry(0, 5);
  Matroid u = Matroid::uniform(2, 3);
  Fan p2 = Fan::p2();
  std::vector<MatI> out;
  while (out.size() < 20) {
    MatI d(3, VecI(3));
    bool rows_ok = true;
    for (int r = 0; r < 3 && rows_ok; ++r) {
      for (int e = 0; e < 3; ++e) d[r][e] = Int(entry(rng));
      if (!bg::is_bergman_point(u, d[r])) rows_ok = false;
    }
    if (!rows_ok) continue;
    TropicalBundle b = TropicalBundle::validate(u, p2, d);
    bool ample = true;
    for (Mask flat : u.flats()) {
      if (u.rank_of(flat) < 1) continue;
      if (!has_normal_fan(p2, b.flat_support(flat))) {
        ample = false;
        break;
      }
    }
    if (ample) out.push_back(std::move(d));
  }
  return out;
}

void criterion1() {
  Criterion c(1);
  TropicalBundle b = fano_bundle();
  const Matroid& f = b.matroid();
  SectionReport r = b.h0_u(vec({1, 0}));
  c.require(r.flat == f.mask_of({"w", "y2", "z2"}), "section flat is not {w,y2,z2}");
  c.require(r.rank == 2, "section rank is not 2");
  double t = c.seconds();
  c.require(t < 1.0, "runtime exceeded 1s");
  std::ostringstream s;
  s << "fano golden sections at (1,0) = {w,y2,z2} rank 2 (" << t << "s)";
  c.finish(s.str());
}

void criterion2() {
  Criterion c(2);
  Matroid u = Matroid::uniform(2, 3);
  Fan p2 = Fan::p2();
  auto diagrams = ample_u23_diagrams();
  for (const MatI& d : diagrams) {
    TropicalBundle b = TropicalBundle::validate(u, p2, d);
    Int expected = 0;
    for (int j = 0; j < 3; ++j) expected += binomial(d[0][j] + d[1][j] + d[2][j] + 2, 2);
    Int row_min_sum = 0;
    for (int r = 0; r < 3; ++r) row_min_sum += *std::min_element(d[r].begin(), d[r].end());
    expected -= binomial(row_min_sum + 2, 2);
    if (b.h0_total() != expected) {
      c.require(false, "h0_total mismatch");
      break;
    }
  }
  double t = c.seconds();
  c.require(t < 5.0, "runtime exceeded 5s");
  std::ostringstream s;
  s << "h0 totals of 20 ample U_{2,3} diagrams match the closed form (" << t << "s)";
  c.finish(s.str());
}

void criterion3() {
  Criterion c(3);
  Matroid u = Matroid::uniform(2, 3);
  Fan p2 = Fan::p2();
  auto check_box = [&](const TropicalBundle& b) {
    auto [lo, hi] = b.support_box();
    for (Int x = lo[0]; x <= hi[0]; ++x)
      for (Int y = lo[1]; y <= hi[1]; ++y) {
        VecI pt = {x, y};
        if (b.chi_u(pt) != b.h0_u(pt).rank) return false;
      }
    return true;
  };
  for (const MatI& d : ample_u23_diagrams())
    c.require(check_box(TropicalBundle::validate(u, p2, d)), "chi_u != h0_u on an ample diagram");
  TropicalBundle f = fano_bundle();
  Int n0 = f.estimate_n0(vec({1, 1, 1}));
  TropicalBundle twisted = f.tensor_line_bundle(VecI(3, n0));
  c.require(check_box(twisted), "chi_u != h0_u for the twisted fano bundle");
  c.require(f.chi_total() == f.h0_total(), "chi_total != h0_total for the untwisted fano bundle");
  c.finish("chi_u = h0_u on ample diagrams and the twisted fano bundle; fano totals agree");
}

void criterion4() {
  Criterion c(4);
  TropicalBundle f = fano_bundle();
  Int n0 = f.estimate_n0(vec({1, 1, 1}));
  c.require(n0 == 1, "N0 != 1");
  // h0 totals for N = 1..5; exact quadratic through N = 1,2,3 must match 4,5
  std::vector<Int> h(6);
  for (int n = 1; n <= 5; ++n)
    h[n] = f.tensor_line_bundle(VecI(3, Int(n))).h0_total();
  auto predict = [&](long long n) {
    // Lagrange through (1,h1),(2,h2),(3,h3)
    Rat x(n);
    Rat p = Rat(h[1]) * (x - 2) * (x - 3) / Rat(2) - Rat(h[2]) * (x - 1) * (x - 3) +
            Rat(h[3]) * (x - 1) * (x - 2) / Rat(2);
    return p;
  };
  // degree 2 means the leading difference is constant and nonzero
  c.require(h[1] - 2 * h[2] + h[3] == h[2] - 2 * h[3] + h[4], "second differences not constant");
  c.require(h[1] - 2 * h[2] + h[3] != 0, "fitted polynomial is not degree 2");
  for (int n = 4; n <= 5; ++n)
    c.require(predict(n) == Rat(h[n]), "fit fails at N=" + std::to_string(n));
  for (int n = 1; n <= 5; ++n)
    c.require(predict(n) == Rat(h[n]), "fit fails at N=" + std::to_string(n));
  double t = c.seconds();
  c.require(t < 10.0, "runtime exceeded 10s");
  std::ostringstream s;
  s << "N0(fano, O(1)) = 1 and h0(fano x L^N) is an exact quadratic in N (" << t << "s)";
  c.finish(s.str());
}

void criterion5() {
  Criterion c(5);
  std::vector<TropicalBundle> bundles;
  bundles.push_back(fano_bundle());
  {
    Matroid u24 = Matroid::uniform(2, 4);
    MatI d = {vec({2, 1, 1, 1}), vec({0, 0, 0, 1}), vec({1, 0, 0, 0})};
    bundles.push_back(TropicalBundle::validate(u24, Fan::p2(), d));
  }
  for (const TropicalBundle& b : bundles) {
    auto [lo, hi] = b.support_box();
    for (Int x = lo[0] - 2; x <= hi[0] + 2; ++x)
      for (Int y = lo[1] - 2; y <= hi[1] + 2; ++y) {
        VecI u = {x, y};
        if (b.h0_u_via_flats(u) != b.h0_u(u).rank) {
          c.require(false, "flat decomposition mismatch");
          x = hi[0] + 3;
          break;
        }
      }
  }
  c.finish("flat-indicator decomposition matches section ranks exhaustively (fano, U_{2,4})");
}

void criterion6() {
  Criterion c(6);
  // wall compatibility on P2, P1xP1 and the permutahedral fan of S4
  c.require(fano_bundle().wall_compatibility_failures().empty(), "fano wall compat");
  {
    Matroid u = Matroid::uniform(2, 3);
    MatI d = {vec({2, 1, 1}), vec({0, 0, 0}), vec({0, 0, 1}), vec({1, 0, 0})};
    TropicalBundle b = TropicalBundle::validate(u, Fan::p1xp1(), d);
    c.require(b.wall_compatibility_failures().empty(), "p1xp1 wall compat");
  }
  {
    TropicalBundle b = tautological_bundle(Matroid::uniform(2, 4));
    c.require(b.wall_compatibility_failures().empty(), "perm fan wall compat");
    TropicalBundle tw = b.tensor_line_bundle(VecI(b.fan().num_rays(), Int(1)));
    c.require(tw.wall_compatibility_failures().empty(), "twisted perm fan wall compat");
  }
  // symmetric evaluation is adapted-basis independent on 500 random points
  std::mt19937_64 rng(97);
  std::vector<Matroid> zoo = {Matroid::uniform(2, 5), Matroid::uniform(3, 6),
                              Matroid::uniform(4, 7), Matroid::fano(), Matroid::vamos()};
  int points = 0;
  while (points < 500) {
    const Matroid& m = zoo[points % zoo.size()];
    VecI w = bg::projection(m, oracle::random_vec(rng, m.size(), -3, 3));
    ++points;
    auto bases = bg::adapted_bases(m, w);
    if (bases.empty()) {
      c.require(false, "no adapted basis");
      break;
    }
    VecI ref = bg::project_to_basis(m, bases[0], w);
    std::sort(ref.begin(), ref.end());
    for (Mask b : bases) {
      VecI coords = bg::project_to_basis(m, b, w);
      std::sort(coords.begin(), coords.end());
      if (coords != ref) {
        c.require(false, "coordinate multisets differ between adapted bases");
        break;
      }
    }
  }
  c.finish("wall compatibility on P2/P1xP1/S4 fans; symmetric evaluation basis-independent (500 pts)");
}

void criterion7() {
  Criterion c(7);
  std::mt19937_64 rng(20240810);
  std::vector<Matroid> zoo;
  for (int m = 2; m <= 6; ++m)
    for (int r = 1; r <= m; ++r) zoo.push_back(Matroid::uniform(r, m));
  zoo.push_back(Matroid::fano());
  zoo.push_back(Matroid::vamos());
  int trials = 0;
  while (trials < 1000) {
    const Matroid& m = zoo[trials % zoo.size()];
    VecQ w = oracle::random_generic(rng, m.size(), 2000);
    ++trials;
    Mask greedy = m.greedy_basis(w);
    Mask brute = m.max_weight_basis_bruteforce(w);
    Mask initial_forms = 0;
    for (Mask circ : m.circuits()) {
      int arg = -1;
      Rat best;
      bool first = true;
      Mask t = circ;
      while (t) {
        int e = __builtin_ctz(t);
        t &= t - 1;
        if (first || w[e] < best) {
          best = w[e];
          arg = e;
          first = false;
        }
      }
      initial_forms |= Mask(1) << arg;
    }
    Mask complement = m.full_mask() & ~initial_forms;
    auto key = [&](Mask b) {
      VecQ ws;
      for (int e : m.elements_of(b)) ws.push_back(w[e]);
      std::sort(ws.begin(), ws.end(), std::greater<Rat>());
      return ws;
    };
    Mask lexmax = m.bases()[0];
    for (Mask b : m.bases())
      if (key(b) > key(lexmax)) lexmax = b;
    if (greedy != brute || greedy != complement || greedy != lexmax) {
      c.require(false, "characterizations disagree");
      break;
    }
  }
  c.finish("four optimal-basis characterizations agree on 1000 generic weights");
}

void criterion8() {
  Criterion c(8);
  for (const Matroid& m : {Matroid::uniform(1, 2), Matroid::uniform(2, 3), Matroid::uniform(2, 4),
                           Matroid::fano()}) {
    TropicalBundle b = tautological_bundle(m);
    c.require(b.is_globally_generated(), "tautological bundle not globally generated (m=" +
                                             std::to_string(m.size()) + ")");
  }
  for (const Matroid& m : {Matroid::uniform(2, 3), Matroid::uniform(1, 3),
                           Matroid::uniform(2, 4), Matroid::uniform(3, 4)}) {
    NefSweepReport rep = nef_sweep(tautological_bundle(m));
    c.require(rep.all_split, "a tautological wall restriction failed to split");
    c.require(rep.nef_tautological_shape, "a wall type is not {1,0,..} or {0,..}");
  }
  for (const Matroid& m : {Matroid::uniform(2, 3), Matroid::uniform(2, 4)}) {
    TropicalBundle b = tautological_bundle(m);
    c.require(cremona_pullback(cremona_pullback(b)).diagram() == b.diagram(),
              "cremona is not an involution");
  }
  {
    TropicalBundle b = tautological_bundle(Matroid::uniform(1, 2));
    auto s = b.splits();
    c.require(s.has_value() && s->second.size() == 1 && s->second[0] == 1,
              "U_{1,2} tautological degree != 1");
  }
  c.finish("tautological bundles: gg (incl. fano), nef sweeps on S3/S4, cremona involution, deg 1");
}

void criterion9() {
  Criterion c(9);
  std::mt19937_64 rng(113);
  Matroid f = Matroid::fano();
  for (int it = 0; it < 200; ++it) {
    MatI rows = {bg::projection(f, oracle::random_vec(rng, 7, -4, 4)),
                 bg::projection(f, oracle::random_vec(rng, 7, -4, 4))};
    TropicalBundle b = TropicalBundle::validate(f, Fan::p1(), rows);
    if (!b.splits().has_value()) {
      c.require(false, "a fano P1 bundle failed to split");
      break;
    }
  }
  TropicalBundle v = vamos_p1();
  c.require(!v.splits().has_value(), "the vamos bundle splits");
  auto d = defect_obstruction(v);
  c.require(d.has_value(), "no defect obstruction found");
  if (d) {
    c.require(d->flat_pos == v.matroid().mask_of({"f1", "f2"}), "wrong F");
    c.require(d->flat_neg == v.matroid().mask_of({"h1", "h2"}), "wrong H");
    c.require(d->defect == 1, "wrong defect value");
  }
  c.finish("fano P1 bundles split (200 pairs); vamos bundle unsplit with defect (F,H,1)");
}

void criterion10() {
  Criterion c(10);
  std::mt19937_64 rng(127);
  // membership and rank against brute force
  for (const Matroid& m : {Matroid::uniform(2, 4), Matroid::uniform(3, 5), Matroid::fano(),
                           Matroid::vamos()}) {
    for (int it = 0; it < 100; ++it) {
      VecI w = oracle::random_vec(rng, m.size(), -3, 3);
      if (bg::is_bergman_point(m, w) != oracle::bergman_scan(m.bases(), m.size(), w)) {
        c.require(false, "bergman membership oracle mismatch");
        break;
      }
    }
    for (Mask s = 0; s < (Mask(1) << m.size()); s += 7)
      if (m.rank_of(s) != oracle::rank_scan(m.bases(), s)) {
        c.require(false, "rank oracle mismatch");
        break;
      }
  }
  // Brianchon-Gram pointwise on every tested normal-fan polytope, 21x21 box
  Fan p2 = Fan::p2();
  Matroid u = Matroid::uniform(2, 3);
  int polytopes = 0;
  for (const MatI& d : ample_u23_diagrams()) {
    TropicalBundle b = TropicalBundle::validate(u, p2, d);
    for (Mask flat : u.flats()) {
      if (u.rank_of(flat) < 1) continue;
      VecI support = b.flat_support(flat);
      if (!has_normal_fan(p2, support)) continue;
      ++polytopes;
      Polyhedron p = from_support(p2, support);
      for (Int x = -10; x <= 10; ++x)
        for (Int y = -10; y <= 10; ++y) {
          VecI pt = {x, y};
          int alt = 0;
          for (const auto& cone : p2.all_cones()) {
            bool inside = true;
            for (int ray : cone)
              if (dot(pt, p2.ray(ray)) > support[ray]) inside = false;
            alt += (p2.codim(cone) % 2 == 0 ? 1 : -1) * (inside ? 1 : 0);
          }
          if (alt != (contains(p, pt) ? 1 : 0)) {
            c.require(false, "Brianchon-Gram identity failed");
            x = 11;
            break;
          }
        }
    }
    if (polytopes >= 40) break;
  }
  c.require(polytopes >= 40, "too few polytopes tested");
  c.finish("brute-force oracles agree; Brianchon-Gram holds pointwise on a 21x21 box");
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  if (g_failed) {
    std::cout << g_failed << " criterion(s) failed\n";
    return g_failed;
  }
  std::cout << "all acceptance criteria passed\n";
  return 0;
}
