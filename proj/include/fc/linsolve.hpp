#pragma once

#include <vector>

#include "fc/ratfun.hpp"

namespace fc {

// Exact solve of A x = b over the rational-function field, done fraction-free:
// denominators are cleared row by row, the polynomial system is reduced by
// Bareiss elimination (every interior division is exact, no gcds), and each
// solution comes out as poly / det. Pivot choice inside a column: the row
// whose entry has the fewest terms. Throws SingularSystem with the rank found
// when no pivot exists.
//
// `basis` lists candidate denominator factors for the final num/det
// cancellation; every factor of det that matches a basis element (or divides
// out of the numerator) is handled by exact division alone. Whatever part of
// det the basis does not explain is cancelled against the numerator by one
// exact division when that works and otherwise kept as an opaque denominator
// factor, so the basis only affects how finely the result is factored — pass
// {} when nothing is known about the shape of the solution.
FieldVector solve_linear(const FieldMatrix& A, const FieldVector& b,
                         const std::vector<Polynomial>& basis = {});

// Same elimination applied to several right-hand sides at once; rhs columns
// are the columns of B (n x k).
FieldMatrix solve_linear_multi(const FieldMatrix& A, const FieldMatrix& B,
                               const std::vector<Polynomial>& basis = {});

}  // namespace fc
