#include "tropbundle/linalg.hpp"

#include "tropbundle/error.hpp"

namespace tb {

Int det(MatI a) {
  const size_t n = a.size();
  if (n == 0) return 1;
  for (auto& row : a)
    if (row.size() != n) fail(Err::DimensionMismatch, "det needs a square matrix");
  Int prev = 1;
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return sign > 0 ? a[n - 1][n - 1] : -a[n - 1][n - 1];
}

int rank_q(MatI a) {
  const size_t rows = a.size();
  if (rows == 0) return 0;
  const size_t cols = a[0].size();
  size_t r = 0;
  Int prev = 1;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[r], a[p]);
    for (size_t i = r + 1; i < rows; ++i) {
      for (size_t j = c + 1; j < cols; ++j) {
        a[i][j] = (a[i][j] * a[r][c] - a[i][c] * a[r][j]) / prev;
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return static_cast<int>(r);
}

static long long mod_inv(long long v, long long p) {
  // Fermat; p prime, v != 0 mod p.
  long long res = 1, base = v % p, e = p - 2;
  if (base < 0) base += p;
  while (e > 0) {
    if (e & 1) res = (__int128)res * base % p;
    base = (__int128)base * base % p;
    e >>= 1;
  }
  return res;
}

int rank_gfp(const MatI& a, long long p) {
  if (p < 2) fail(Err::InvalidInput, "modulus must be a prime >= 2");
  const size_t rows = a.size();
  if (rows == 0) return 0;
  const size_t cols = a[0].size();
  std::vector<std::vector<long long>> m(rows, std::vector<long long>(cols));
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j) {
      Int v = a[i][j] % p;
      if (v < 0) v += p;
      m[i][j] = static_cast<long long>(v);
    }
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = r;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[r], m[piv]);
    long long inv = mod_inv(m[r][c], p);
    for (size_t j = c; j < cols; ++j) m[r][j] = (__int128)m[r][j] * inv % p;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      long long f = m[i][c];
      for (size_t j = c; j < cols; ++j) {
        m[i][j] = (m[i][j] - (__int128)f * m[r][j]) % p;
        if (m[i][j] < 0) m[i][j] += p;
      }
    }
    ++r;
  }
  return static_cast<int>(r);
}

std::optional<VecQ> solve_rat(MatI a, VecI b) {
  const size_t n = a.size();
  if (b.size() != n) fail(Err::DimensionMismatch, "solve_rat shape mismatch");
  std::vector<VecQ> m(n, VecQ(n + 1));
  for (size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) fail(Err::DimensionMismatch, "solve_rat needs a square matrix");
    for (size_t j = 0; j < n; ++j) m[i][j] = Rat(a[i][j]);
    m[i][n] = Rat(b[i]);
  }
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(m[c], m[p]);
    Rat piv = m[c][c];
    for (size_t j = c; j <= n; ++j) m[c][j] /= piv;
    for (size_t i = 0; i < n; ++i) {
      if (i == c || m[i][c] == 0) continue;
      Rat f = m[i][c];
      for (size_t j = c; j <= n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  VecQ x(n);
  for (size_t i = 0; i < n; ++i) x[i] = m[i][n];
  return x;
}

VecI solve_unimodular(const MatI& a, const VecI& b) {
  auto x = solve_rat(a, b);
  if (!x) fail(Err::NonSmoothCone, "singular ray matrix");
  VecI r(x->size());
  for (size_t i = 0; i < x->size(); ++i) {
    if (!is_integer((*x)[i])) fail(Err::NonSmoothCone, "non-integral solution on a smooth cone");
    r[i] = numerator((*x)[i]);
  }
  return r;
}

}  // namespace tb
