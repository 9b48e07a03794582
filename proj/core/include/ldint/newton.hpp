#pragma once

#include <functional>
#include <vector>

#include "ldint/system.hpp"

namespace ldint {

struct SolverOptions {
  /// Max-norm residual target.
  double tol = 1e-14;
  int max_iter = 25;
};

struct SolveResult {
  Vector x;
  /// Number of updates applied to the guess.
  int iterations = 0;
  double residual = 0.0;
  std::vector<double> history;
  /// Stopped because the update fell below roundoff of x while the residual was
  /// still above tol (large-magnitude problems where tol is below the attainable floor).
  bool roundoff_limited = false;
};

using VectorMap = std::function<Vector(const Vector&)>;
using MatrixMap = std::function<Matrix(const Vector&)>;

/// Newton-Raphson with an LU solve per step. Stops when the max-norm residual is
/// <= tol, or when an update is below 8 ulp of |x|_inf (roundoff floor). Throws
/// SingularMatrixError when the Jacobian is singular and ConvergenceError (with
/// residual history) past max_iter.
SolveResult newton_solve(const VectorMap& residual, const MatrixMap& jacobian, Vector guess,
                         const SolverOptions& opts = {});

/// Iterates x <- g(x) until |g(x) - x|_inf <= tol.
SolveResult fixed_point_solve(const VectorMap& g, Vector guess, const SolverOptions& opts = {});

}  // namespace ldint
