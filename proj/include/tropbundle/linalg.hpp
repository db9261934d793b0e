#pragma once

#include <optional>

#include "tropbundle/numeric.hpp"

namespace tb {

// Determinant by fraction-free (Bareiss) elimination.
Int det(MatI a);

// Exact rank of an integer matrix (fraction-free elimination over Q).
int rank_q(MatI a);

// Exact rank of an integer matrix reduced mod a prime p.
int rank_gfp(const MatI& a, long long p);

// Solve the square system A x = b exactly over Q.  Returns nullopt when A is
// singular.
std::optional<VecQ> solve_rat(MatI a, VecI b);

// Solve A x = b where A is unimodular, so the solution is integral.
VecI solve_unimodular(const MatI& a, const VecI& b);

}  // namespace tb
