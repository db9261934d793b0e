#pragma once

#include <map>
#include <vector>

#include "tropbundle/numeric.hpp"

namespace tb {

// Sparse multivariate polynomial with rational coefficients, exponent
// vectors as keys.  Only used for characteristic-class reports, so the
// operation set is minimal.
struct Poly {
  int nvars = 0;
  std::map<std::vector<int>, Rat> terms;

  static Poly constant(int nvars, const Rat& c) {
    Poly p;
    p.nvars = nvars;
    if (c != 0) p.terms[std::vector<int>(nvars, 0)] = c;
    return p;
  }

  static Poly linear(const VecI& coeffs) {
    Poly p;
    p.nvars = static_cast<int>(coeffs.size());
    for (int i = 0; i < p.nvars; ++i) {
      if (coeffs[i] == 0) continue;
      std::vector<int> e(p.nvars, 0);
      e[i] = 1;
      p.terms[e] = Rat(coeffs[i]);
    }
    return p;
  }

  Poly& operator+=(const Poly& o) {
    for (const auto& [e, c] : o.terms) {
      Rat& slot = terms[e];
      slot += c;
      if (slot == 0) terms.erase(e);
    }
    return *this;
  }

  Poly operator*(const Poly& o) const {
    Poly out;
    out.nvars = nvars;
    for (const auto& [e1, c1] : terms)
      for (const auto& [e2, c2] : o.terms) {
        std::vector<int> e(nvars);
        for (int i = 0; i < nvars; ++i) e[i] = e1[i] + e2[i];
        Rat& slot = out.terms[e];
        slot += c1 * c2;
        if (slot == 0) out.terms.erase(e);
      }
    return out;
  }

  Poly scaled(const Rat& f) const {
    Poly out;
    out.nvars = nvars;
    if (f == 0) return out;
    for (const auto& [e, c] : terms) out.terms[e] = c * f;
    return out;
  }

  Poly truncated(int max_total_degree) const {
    Poly out;
    out.nvars = nvars;
    for (const auto& [e, c] : terms) {
      int deg = 0;
      for (int x : e) deg += x;
      if (deg <= max_total_degree) out.terms[e] = c;
    }
    return out;
  }

  bool operator==(const Poly& o) const { return nvars == o.nvars && terms == o.terms; }
};

// Elementary symmetric polynomial e_k of the given linear forms.
inline Poly elementary_symmetric(const std::vector<Poly>& forms, int k, int nvars) {
  std::vector<Poly> e(k + 1);
  for (int i = 0; i <= k; ++i) e[i].nvars = nvars;
  e[0] = Poly::constant(nvars, 1);
  for (const Poly& f : forms)
    for (int i = k; i >= 1; --i) e[i] += e[i - 1] * f;
  return e[k];
}

}  // namespace tb
