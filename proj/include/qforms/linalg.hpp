#ifndef QFORMS_LINALG_HPP
#define QFORMS_LINALG_HPP

#include "qforms/rational.hpp"

#include <vector>

namespace qforms {

using RatVector = std::vector<Rational>;
using RatMatrix = std::vector<RatVector>; // row-major, rows of equal length

// In-place reduced row echelon form. Pivots are the first nonzero entry in
// each column, scanning columns left to right; fully deterministic. Returns
// the pivot column indices in order.
std::vector<int> rref(RatMatrix& m);

int rank(RatMatrix m);

struct SolveResult {
  bool full_column_rank = false; // uniqueness certificate for the solution
  bool consistent = false;
  RatVector solution;      // canonical candidate (free coordinates zero); exact when consistent
  int first_mismatch = -1; // first row no solution of the preceding rows satisfies
  Rational mismatch_value; // that row's residual, identical for every such solution
};

// Solves A x = b exactly over Q, absorbing rows in order. The solution is
// certified unique by full column rank. On an inconsistent system the first
// unresolvable row is reported: its residual against the rows before it is
// independent of which solution of those rows is chosen, so the pair
// (first_mismatch, mismatch_value) is well defined.
SolveResult solve_exact(const RatMatrix& a, const RatVector& b);

// Basis of the right nullspace of A, one vector per free column, in free
// column order. Each vector has a 1 in its free column position.
std::vector<RatVector> nullspace(RatMatrix a);

// Scales a rational vector to a primitive integer vector: multiply by the
// common denominator, divide by the content, make the first nonzero entry
// positive. Zero vectors pass through.
std::vector<Integer> primitive_integer_vector(const RatVector& v);

} // namespace qforms

#endif
