#include "tropbundle/bergman.hpp"

#include <algorithm>

#include "tropbundle/error.hpp"

namespace tb::bergman {

bool is_bergman_point(const Matroid& m, const VecI& w) {
  if (static_cast<int>(w.size()) != m.size()) fail(Err::DimensionMismatch);
  for (Mask c : m.circuits()) {
    int hits = 0;
    bool have = false;
    Int mn = 0;
    Mask t = c;
    while (t) {
      int e = __builtin_ctz(t);
      t &= t - 1;
      if (!have || w[e] < mn) {
        mn = w[e];
        hits = 1;
        have = true;
      } else if (w[e] == mn) {
        ++hits;
      }
    }
    if (hits < 2) return false;
  }
  return true;
}

WeightedFlag flag_filtration(const Matroid& m, const VecI& w) {
  if (!is_bergman_point(m, w)) fail(Err::NotBergman);
  VecI values = w;
  std::sort(values.begin(), values.end(), std::greater<Int>());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  WeightedFlag flag;
  for (const Int& t : values) {
    Mask f = 0;
    for (int e = 0; e < m.size(); ++e)
      if (w[e] >= t) f |= Mask(1) << e;
    flag.thresholds.push_back(t);
    flag.flats.push_back(f);
  }
  return flag;
}

VecI point_from_flag(const Matroid& m, const WeightedFlag& flag) {
  if (flag.flats.empty() || flag.thresholds.size() != flag.flats.size())
    fail(Err::InvalidInput, "flag needs matching thresholds and flats");
  for (size_t i = 0; i < flag.flats.size(); ++i) {
    if (!m.is_flat(flag.flats[i])) fail(Err::NotAFlat);
    if (i > 0) {
      if (flag.thresholds[i] >= flag.thresholds[i - 1]) fail(Err::NotNested, "thresholds must strictly decrease");
      if ((flag.flats[i - 1] & flag.flats[i]) != flag.flats[i - 1] ||
          flag.flats[i - 1] == flag.flats[i])
        fail(Err::NotNested);
    }
  }
  if (flag.flats.back() != m.full_mask())
    fail(Err::NotNested, "outermost flat must be the full ground set");
  VecI w(m.size());
  for (int e = 0; e < m.size(); ++e) {
    for (size_t i = 0; i < flag.flats.size(); ++i) {
      if (flag.flats[i] >> e & 1) {
        w[e] = flag.thresholds[i];
        break;
      }
    }
  }
  return w;
}

VecI phi_b(const Matroid& m, Mask basis, const VecI& a) {
  if (!m.is_basis(basis)) fail(Err::NotABasis);
  if (static_cast<int>(a.size()) != m.rank()) fail(Err::DimensionMismatch);
  VecI w(m.size());
  auto elems = m.elements_of(basis);
  for (size_t i = 0; i < elems.size(); ++i) w[elems[i]] = a[i];
  for (const auto& [e, circ] : m.fundamental_circuits(basis)) {
    bool have = false;
    Int mn = 0;
    Mask t = circ & ~(Mask(1) << e);
    while (t) {
      int b = __builtin_ctz(t);
      t &= t - 1;
      if (!have || w[b] < mn) {
        mn = w[b];
        have = true;
      }
    }
    w[e] = mn;
  }
  return w;
}

VecI project_to_basis(const Matroid& m, Mask basis, const VecI& w) {
  if (!m.is_basis(basis)) fail(Err::NotABasis);
  if (static_cast<int>(w.size()) != m.size()) fail(Err::DimensionMismatch);
  VecI a;
  for (int e : m.elements_of(basis)) a.push_back(w[e]);
  return a;
}

bool apartment_contains(const Matroid& m, Mask basis, const VecI& w) {
  return phi_b(m, basis, project_to_basis(m, basis, w)) == w;
}

std::vector<Mask> adapted_bases(const Matroid& m, const VecI& w) {
  std::vector<Mask> out;
  for (Mask b : m.bases())
    if (apartment_contains(m, b, w)) out.push_back(b);
  return out;
}

VecI projection(const Matroid& m, const VecI& w) {
  if (static_cast<int>(w.size()) != m.size()) fail(Err::DimensionMismatch);
  VecI values = w;
  std::sort(values.begin(), values.end(), std::greater<Int>());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  VecI out(m.size());
  std::vector<char> assigned(m.size(), 0);
  Mask level_set = 0;
  for (const Int& t : values) {
    for (int e = 0; e < m.size(); ++e)
      if (w[e] >= t) level_set |= Mask(1) << e;
    Mask cl = m.closure(level_set);
    for (int e = 0; e < m.size(); ++e) {
      if (!assigned[e] && (cl >> e & 1)) {
        out[e] = t;
        assigned[e] = 1;
      }
    }
  }
  return out;
}

Rat symmetric_evaluate(const Matroid& m, const VecI& w, SymKind kind, int k) {
  if (!is_bergman_point(m, w)) fail(Err::NotBergman);
  Mask basis = adapted_bases(m, w).at(0);
  VecI a = project_to_basis(m, basis, w);
  switch (kind) {
    case SymKind::Elementary: {
      if (k < 0) fail(Err::InvalidInput, "elementary index must be >= 0");
      // DP over a: e_k coefficients
      VecI e(static_cast<size_t>(std::min<int>(k, m.rank())) + 1, 0);
      e[0] = 1;
      for (const Int& x : a)
        for (int i = static_cast<int>(e.size()) - 1; i >= 1; --i) e[i] += e[i - 1] * x;
      return k < static_cast<int>(e.size()) ? Rat(e[k]) : Rat(0);
    }
    case SymKind::Power: {
      if (k < 0) fail(Err::InvalidInput, "power index must be >= 0");
      if (k == 0) return Rat(m.rank());
      Int s = 0;
      for (const Int& x : a) s += boost::multiprecision::pow(x, static_cast<unsigned>(k));
      return Rat(s);
    }
    case SymKind::ExpTruncated: {
      if (k < 0) fail(Err::InvalidInput, "truncation degree must be >= 0");
      Rat total = Rat(m.rank());
      Int factorial = 1;
      for (int deg = 1; deg <= k; ++deg) {
        factorial *= deg;
        Int s = 0;
        for (const Int& x : a) s += boost::multiprecision::pow(x, static_cast<unsigned>(deg));
        total += Rat(s) / Rat(factorial);
      }
      return total;
    }
  }
  fail(Err::InvalidInput, "unknown symmetric kind");
}

}  // namespace tb::bergman
