#include "tropbundle/polyhedron.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "tropbundle/error.hpp"
#include "tropbundle/linalg.hpp"

namespace tb {

Polyhedron from_support(const Fan& fan, const VecI& support) {
  if (static_cast<int>(support.size()) != fan.num_rays())
    fail(Err::DimensionMismatch, "support vector must have one entry per ray");
  Polyhedron p;
  p.normals = fan.rays();
  p.bounds = support;
  return p;
}

bool contains(const Polyhedron& p, const VecI& u) {
  for (size_t k = 0; k < p.normals.size(); ++k)
    if (dot(u, p.normals[k]) > p.bounds[k]) return false;
  return true;
}

std::optional<VecI> vertex_in_direction(const Fan& fan, const VecI& support, int max_cone_idx) {
  if (max_cone_idx < 0 || max_cone_idx >= static_cast<int>(fan.max_cones().size()))
    fail(Err::NonMaximalCone);
  const auto& cone = fan.max_cones()[max_cone_idx];
  VecI values(cone.size());
  for (size_t i = 0; i < cone.size(); ++i) values[i] = support[cone[i]];
  VecI u = fan.solve_character(max_cone_idx, values);
  for (int rho = 0; rho < fan.num_rays(); ++rho)
    if (dot(u, fan.ray(rho)) > support[rho]) return std::nullopt;
  return u;
}

bool has_normal_fan(const Fan& fan, const VecI& support) {
  if (static_cast<int>(support.size()) != fan.num_rays())
    fail(Err::DimensionMismatch, "support vector must have one entry per ray");
  std::vector<VecI> vertex(fan.max_cones().size());
  for (size_t ci = 0; ci < fan.max_cones().size(); ++ci) {
    auto v = vertex_in_direction(fan, support, static_cast<int>(ci));
    if (!v) return false;
    vertex[ci] = *v;
  }
  // Strict convexity across every wall: the vertex of one side must satisfy
  // the off-wall inequality of the other side strictly.
  for (const Wall& w : fan.walls()) {
    if (dot(vertex[w.cone_pos], fan.ray(w.ray_neg)) >= support[w.ray_neg]) return false;
    if (dot(vertex[w.cone_neg], fan.ray(w.ray_pos)) >= support[w.ray_pos]) return false;
  }
  return true;
}

std::pair<VecI, VecI> bounding_box(const Fan& fan, const VecI& support) {
  const int d = fan.dim();
  VecI lo(d), hi(d);
  for (int i = 0; i < d; ++i) {
    for (int sgn : {+1, -1}) {
      VecI dir(d, 0);
      dir[i] = sgn;
      auto [ci, coeff] = fan.maximal_cone_containing(dir);
      const auto& cone = fan.max_cones()[ci];
      Rat bound = 0;
      for (size_t k = 0; k < cone.size(); ++k) bound += coeff[k] * Rat(support[cone[k]]);
      if (sgn > 0)
        hi[i] = rat_floor(bound);
      else
        lo[i] = -rat_floor(bound);
    }
  }
  return {lo, hi};
}

static void enumerate_box(const VecI& lo, const VecI& hi,
                          const std::function<void(const VecI&)>& visit) {
  const int d = static_cast<int>(lo.size());
  for (int i = 0; i < d; ++i)
    if (lo[i] > hi[i]) return;
  VecI u = lo;
  while (true) {
    visit(u);
    int i = d - 1;
    while (i >= 0) {
      if (u[i] < hi[i]) {
        ++u[i];
        break;
      }
      u[i] = lo[i];
      --i;
    }
    if (i < 0) break;
  }
}

std::vector<VecI> lattice_points(const Fan& fan, const VecI& support) {
  auto [lo, hi] = bounding_box(fan, support);
  Polyhedron p = from_support(fan, support);
  std::vector<VecI> out;
  enumerate_box(lo, hi, [&](const VecI& u) {
    if (contains(p, u)) out.push_back(u);
  });
  return out;
}

namespace {

using RowQ = std::pair<VecQ, Rat>;  // <u, a> <= b

VecQ normalize(VecQ a, Rat& b) {
  Rat scale = 0;
  for (const Rat& x : a)
    if (x != 0) {
      scale = abs(x);
      break;
    }
  if (scale != 0) {
    for (Rat& x : a) x /= scale;
    b /= scale;
  }
  return a;
}

// Per-coordinate interval of a polyhedron via Fourier-Motzkin elimination of
// all other variables.  Returns {lo, hi}; throws UnboundedPolyhedron when a
// direction has no bound, and returns an empty optional when infeasible.
std::optional<std::pair<Int, Int>> fm_interval(const Polyhedron& p, int keep) {
  const int d = static_cast<int>(p.normals.empty() ? 0 : p.normals[0].size());
  std::set<std::pair<VecQ, Rat>> rows;
  for (size_t k = 0; k < p.normals.size(); ++k) {
    VecQ a(d);
    for (int j = 0; j < d; ++j) a[j] = Rat(p.normals[k][j]);
    Rat b(p.bounds[k]);
    a = normalize(std::move(a), b);
    rows.insert({a, b});
  }
  for (int var = 0; var < d; ++var) {
    if (var == keep) continue;
    std::vector<RowQ> pos, neg, zero;
    for (const auto& [a, b] : rows) {
      if (a[var] > 0)
        pos.push_back({a, b});
      else if (a[var] < 0)
        neg.push_back({a, b});
      else
        zero.push_back({a, b});
    }
    std::set<RowQ> next(zero.begin(), zero.end());
    for (const auto& [ap, bp] : pos)
      for (const auto& [an, bn] : neg) {
        VecQ a(d);
        for (int j = 0; j < d; ++j) a[j] = ap[j] * (-an[var]) + an[j] * ap[var];
        Rat b = bp * (-an[var]) + bn * ap[var];
        a = normalize(std::move(a), b);
        bool all_zero = std::all_of(a.begin(), a.end(), [](const Rat& x) { return x == 0; });
        if (all_zero) {
          if (b < 0) return std::nullopt;  // infeasible
          continue;
        }
        next.insert({std::move(a), std::move(b)});
        if (next.size() > 200000) fail(Err::TooLarge, "Fourier-Motzkin blow-up");
      }
    rows = std::move(next);
  }
  std::optional<Rat> lo, hi;
  for (const auto& [a, b] : rows) {
    if (a[keep] > 0) {
      Rat v = b / a[keep];
      if (!hi || v < *hi) hi = v;
    } else if (a[keep] < 0) {
      Rat v = b / a[keep];
      if (!lo || v > *lo) lo = v;
    } else if (b < 0) {
      return std::nullopt;
    }
  }
  if (!lo || !hi) fail(Err::UnboundedPolyhedron);
  if (*lo > *hi) return std::nullopt;
  return std::make_pair(rat_ceil(*lo), rat_floor(*hi));
}

}  // namespace

std::vector<VecI> lattice_points(const Polyhedron& p) {
  if (p.normals.empty()) fail(Err::UnboundedPolyhedron);
  const int d = static_cast<int>(p.normals[0].size());
  VecI lo(d), hi(d);
  for (int i = 0; i < d; ++i) {
    auto iv = fm_interval(p, i);
    if (!iv) return {};
    lo[i] = iv->first;
    hi[i] = iv->second;
  }
  std::vector<VecI> out;
  enumerate_box(lo, hi, [&](const VecI& u) {
    if (contains(p, u)) out.push_back(u);
  });
  return out;
}

std::vector<VecQ> vertices(const Polyhedron& p) {
  if (p.normals.empty()) return {};
  const int d = static_cast<int>(p.normals[0].size());
  const int n = static_cast<int>(p.normals.size());
  if (n < d) return {};
  std::set<VecQ> verts;
  std::vector<int> idx(d);
  for (int i = 0; i < d; ++i) idx[i] = i;
  auto advance = [&]() {
    int i = d - 1;
    while (i >= 0 && idx[i] == n - d + i) --i;
    if (i < 0) return false;
    ++idx[i];
    for (int j = i + 1; j < d; ++j) idx[j] = idx[j - 1] + 1;
    return true;
  };
  while (true) {
    MatI a(d, VecI(d));
    VecI b(d);
    for (int i = 0; i < d; ++i) {
      a[i] = p.normals[idx[i]];
      b[i] = p.bounds[idx[i]];
    }
    auto sol = solve_rat(a, b);
    if (sol) {
      const VecQ& u = *sol;
      bool feasible = true;
      for (int k = 0; k < n && feasible; ++k) {
        Rat lhs = 0;
        for (int j = 0; j < d; ++j) lhs += u[j] * Rat(p.normals[k][j]);
        if (lhs > Rat(p.bounds[k])) feasible = false;
      }
      if (feasible) verts.insert(u);
    }
    if (!advance()) break;
  }
  return {verts.begin(), verts.end()};
}

}  // namespace tb
