#include "tropbundle/fan.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "tropbundle/error.hpp"
#include "tropbundle/linalg.hpp"

namespace tb {

static Int vec_gcd(const VecI& v) {
  Int g = 0;
  for (const Int& x : v) g = boost::multiprecision::gcd(g, x);
  return g;
}

void Fan::validate_and_derive() {
  if (dim_ < 1) fail(Err::InvalidInput, "fan dimension must be >= 1");
  if (rays_.empty()) fail(Err::InvalidInput, "fan needs rays");
  for (size_t i = 0; i < rays_.size(); ++i) {
    if (static_cast<int>(rays_[i].size()) != dim_)
      fail(Err::DimensionMismatch, "ray " + std::to_string(i));
    if (vec_gcd(rays_[i]) != 1)
      fail(Err::InvalidInput, "ray " + std::to_string(i) + " is not primitive");
  }
  {
    std::set<VecI> seen;
    for (const auto& r : rays_)
      if (!seen.insert(r).second) fail(Err::InvalidInput, "duplicate ray");
  }
  if (max_cones_.empty()) fail(Err::InvalidInput, "fan needs maximal cones");
  for (auto& c : max_cones_) {
    std::sort(c.begin(), c.end());
    if (std::unique(c.begin(), c.end()) != c.end())
      fail(Err::InvalidInput, "repeated ray in a cone");
    for (int r : c)
      if (r < 0 || r >= num_rays()) fail(Err::InvalidInput, "ray index out of range");
    if (static_cast<int>(c.size()) != dim_)
      fail(Err::NonSmoothCone, "maximal cones must be simplicial of full dimension");
    MatI m(dim_, VecI(dim_));
    for (int i = 0; i < dim_; ++i) m[i] = rays_[c[i]];
    Int d = det(m);
    if (d != 1 && d != -1) fail(Err::NonSmoothCone, "non-unimodular maximal cone");
  }
  {
    std::set<std::vector<int>> seen(max_cones_.begin(), max_cones_.end());
    if (seen.size() != max_cones_.size()) fail(Err::InvalidInput, "duplicate maximal cone");
  }

  // Completeness certificate: every codim-1 face lies in exactly two maximal
  // cones and the dual graph is connected.
  std::map<std::vector<int>, std::vector<std::pair<int, int>>> by_wall;  // wall -> (cone, off-ray)
  for (size_t ci = 0; ci < max_cones_.size(); ++ci) {
    const auto& c = max_cones_[ci];
    for (int drop : c) {
      std::vector<int> tau;
      for (int r : c)
        if (r != drop) tau.push_back(r);
      by_wall[tau].emplace_back(static_cast<int>(ci), drop);
    }
  }
  std::vector<std::vector<int>> adj(max_cones_.size());
  for (const auto& [tau, pair] : by_wall) {
    if (pair.size() != 2)
      fail(Err::IncompleteFan, "a codimension-1 face lies in " +
                                   std::to_string(pair.size()) + " maximal cones");
    Wall w;
    w.tau = tau;
    w.cone_pos = pair[0].first;
    w.ray_pos = pair[0].second;
    w.cone_neg = pair[1].first;
    w.ray_neg = pair[1].second;
    // v(ray_pos) + v(ray_neg) in span(tau); coefficients are integral by
    // smoothness of the adjacent cones.
    if (dim_ > 1) {
      MatI a(dim_, VecI(dim_));
      const auto& cone = max_cones_[w.cone_pos];
      for (int i = 0; i < dim_; ++i) a[i] = rays_[cone[i]];
      // transpose for column solve
      MatI at(dim_, VecI(dim_));
      for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) at[i][j] = a[j][i];
      VecI rhs(dim_);
      for (int i = 0; i < dim_; ++i) rhs[i] = rays_[w.ray_pos][i] + rays_[w.ray_neg][i];
      VecI coeff = solve_unimodular(at, rhs);
      w.relation.assign(w.tau.size(), 0);
      for (int i = 0; i < dim_; ++i) {
        int ray = cone[i];
        if (ray == w.ray_pos) {
          if (coeff[i] != 0) fail(Err::IncompleteFan, "wall relation touches the off-wall ray");
          continue;
        }
        auto it = std::lower_bound(w.tau.begin(), w.tau.end(), ray);
        w.relation[it - w.tau.begin()] = coeff[i];
      }
    }
    adj[w.cone_pos].push_back(w.cone_neg);
    adj[w.cone_neg].push_back(w.cone_pos);
    walls_.push_back(std::move(w));
  }
  std::vector<char> seen(max_cones_.size(), 0);
  std::vector<int> stack = {0};
  seen[0] = 1;
  size_t reached = 1;
  while (!stack.empty()) {
    int c = stack.back();
    stack.pop_back();
    for (int n : adj[c])
      if (!seen[n]) {
        seen[n] = 1;
        ++reached;
        stack.push_back(n);
      }
  }
  if (reached != max_cones_.size()) fail(Err::IncompleteFan, "dual graph is disconnected");
}

const std::vector<std::vector<int>>& Fan::all_cones() const {
  std::lock_guard<std::mutex> lock(*cones_mutex_);
  if (all_cones_.empty()) {
    std::set<std::vector<int>> faces;
    for (const auto& c : max_cones_) {
      const int k = static_cast<int>(c.size());
      for (Mask sub = 0; sub < (Mask(1) << k); ++sub) {
        std::vector<int> face;
        for (int i = 0; i < k; ++i)
          if (sub >> i & 1) face.push_back(c[i]);
        faces.insert(std::move(face));
      }
    }
    all_cones_.assign(faces.begin(), faces.end());
    std::sort(all_cones_.begin(), all_cones_.end(), [](const auto& a, const auto& b) {
      if (a.size() != b.size()) return a.size() < b.size();
      return a < b;
    });
  }
  return all_cones_;
}

std::pair<int, VecQ> Fan::maximal_cone_containing(const VecI& x) const {
  if (static_cast<int>(x.size()) != dim_) fail(Err::DimensionMismatch);
  // Fast path for permutahedral fans: the containing cone is read off the
  // descending order of the lifted coordinates.
  if (is_permutahedral()) {
    const int m = perm_m_;
    VecI lift(m);
    for (int i = 0; i < m - 1; ++i) lift[i] = x[i];
    lift[m - 1] = 0;
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return lift[a] > lift[b]; });
    Mask s = 0;
    std::vector<Mask> chain;
    for (int k = 0; k < m - 1; ++k) {
      s |= Mask(1) << order[k];
      chain.push_back(s);
    }
    std::map<Mask, int> ray_of;
    for (int i = 0; i < num_rays(); ++i) ray_of[perm_subsets_[i]] = i;
    std::vector<int> cone;
    for (Mask c : chain) cone.push_back(ray_of.at(c));
    std::sort(cone.begin(), cone.end());
    for (size_t ci = 0; ci < max_cones_.size(); ++ci) {
      if (max_cones_[ci] != cone) continue;
      MatI at(dim_, VecI(dim_));
      for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) at[i][j] = rays_[cone[j]][i];
      auto sol = solve_rat(at, x);
      if (sol && std::all_of(sol->begin(), sol->end(), [](const Rat& v) { return v >= 0; }))
        return {static_cast<int>(ci), *sol};
      break;  // fall through to the generic scan
    }
  }
  for (size_t ci = 0; ci < max_cones_.size(); ++ci) {
    const auto& c = max_cones_[ci];
    MatI at(dim_, VecI(dim_));
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) at[i][j] = rays_[c[j]][i];
    auto sol = solve_rat(at, x);
    if (!sol) continue;
    bool ok = true;
    for (const Rat& v : *sol)
      if (v < 0) {
        ok = false;
        break;
      }
    if (ok) return {static_cast<int>(ci), *sol};
  }
  fail(Err::PointNotCovered);
}

std::vector<int> Fan::cone_containing(const VecI& x) const {
  auto [ci, coeff] = maximal_cone_containing(x);
  std::vector<int> face;
  const auto& c = max_cones_[ci];
  for (int i = 0; i < dim_; ++i)
    if (coeff[i] > 0) face.push_back(c[i]);
  std::sort(face.begin(), face.end());
  return face;
}

VecI Fan::solve_character(int max_cone_idx, const VecI& values) const {
  if (max_cone_idx < 0 || max_cone_idx >= static_cast<int>(max_cones_.size()))
    fail(Err::NonMaximalCone);
  const auto& c = max_cones_[max_cone_idx];
  if (values.size() != c.size()) fail(Err::DimensionMismatch);
  MatI a(dim_, VecI(dim_));
  for (int i = 0; i < dim_; ++i) a[i] = rays_[c[i]];
  return solve_unimodular(a, values);
}

Fan Fan::from_data(int dim, MatI rays, std::vector<std::vector<int>> max_cones) {
  Fan f;
  f.dim_ = dim;
  f.rays_ = std::move(rays);
  f.max_cones_ = std::move(max_cones);
  f.validate_and_derive();
  return f;
}

Fan Fan::p1() { return from_data(1, {{1}, {-1}}, {{0}, {1}}); }

Fan Fan::p2() { return from_data(2, {{1, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}, {0, 2}}); }

Fan Fan::pn(int n) {
  if (n < 1) fail(Err::InvalidInput, "pn needs n >= 1");
  if (n > 8) fail(Err::TooLarge, "pn supported up to n = 8");
  MatI rays;
  for (int i = 0; i < n; ++i) {
    VecI e(n, 0);
    e[i] = 1;
    rays.push_back(e);
  }
  rays.push_back(VecI(n, -1));
  std::vector<std::vector<int>> cones;
  for (int drop = 0; drop <= n; ++drop) {
    std::vector<int> c;
    for (int i = 0; i <= n; ++i)
      if (i != drop) c.push_back(i);
    cones.push_back(c);
  }
  return from_data(n, std::move(rays), std::move(cones));
}

Fan Fan::p1xp1() {
  return from_data(2, {{1, 0}, {-1, 0}, {0, 1}, {0, -1}}, {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
}

Fan Fan::permutahedral(int m) {
  if (m < 2) fail(Err::InvalidInput, "permutahedral fan needs m >= 2");
  if (m > 8) fail(Err::TooLarge, "permutahedral fan supported up to m = 8");
  // Quotient model of Z^m / Z*1 via (x_1..x_m) -> (x_1 - x_m, .., x_{m-1} - x_m);
  // ray for a proper nonempty subset S is the image of its indicator vector.
  std::vector<Mask> subsets;
  const Mask full = (Mask(1) << m) - 1;
  for (Mask s = 1; s < full; ++s) subsets.push_back(s);
  std::sort(subsets.begin(), subsets.end(), [](Mask a, Mask b) {
    if (popcount(a) != popcount(b)) return popcount(a) < popcount(b);
    return tuple_lex_less(a, b);
  });
  std::map<Mask, int> ray_of;
  MatI rays;
  for (size_t i = 0; i < subsets.size(); ++i) {
    Mask s = subsets[i];
    ray_of[s] = static_cast<int>(i);
    VecI v(m - 1);
    const int last = (s >> (m - 1)) & 1;
    for (int j = 0; j < m - 1; ++j) v[j] = Int(int((s >> j) & 1) - last);
    rays.push_back(std::move(v));
  }
  std::vector<std::vector<int>> cones;
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    Mask s = 0;
    std::vector<int> cone;
    for (int k = 0; k < m - 1; ++k) {
      s |= Mask(1) << perm[k];
      cone.push_back(ray_of.at(s));
    }
    std::sort(cone.begin(), cone.end());
    cones.push_back(std::move(cone));
  } while (std::next_permutation(perm.begin(), perm.end()));
  Fan f = from_data(m - 1, std::move(rays), std::move(cones));
  f.perm_subsets_ = std::move(subsets);
  f.perm_m_ = m;
  return f;
}

Fan Fan::named(const std::string& name) {
  if (name == "p1") return p1();
  if (name == "p2") return p2();
  if (name == "p1xp1") return p1xp1();
  if (name.rfind("pn:", 0) == 0) {
    try {
      return pn(std::stoi(name.substr(3)));
    } catch (const std::logic_error&) {
      fail(Err::Parse, "expected pn:n");
    }
  }
  if (name.rfind("perm:", 0) == 0) {
    try {
      return permutahedral(std::stoi(name.substr(5)));
    } catch (const std::logic_error&) {
      fail(Err::Parse, "expected perm:m");
    }
  }
  fail(Err::Parse, "unknown fan name '" + name + "'");
}

}  // namespace tb
