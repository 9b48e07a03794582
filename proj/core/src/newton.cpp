#include "ldint/newton.hpp"

#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>

#include "ldint/error.hpp"

namespace ldint {

namespace {

void check_options(const SolverOptions& o) {
  if (!(o.tol > 0.0) || !(o.tol < 1.0)) throw std::invalid_argument("solver tolerance must lie in (0, 1)");
  if (o.max_iter < 1) throw std::invalid_argument("solver max_iter must be positive");
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

}  // namespace

SolveResult newton_solve(const VectorMap& residual, const MatrixMap& jacobian, Vector x, const SolverOptions& opts) {
  check_options(opts);
  std::vector<double> history;
  for (int it = 0;; ++it) {
    const Vector r = residual(x);
    if (!r.allFinite()) {
      history.push_back(std::numeric_limits<double>::infinity());
      throw ConvergenceError("Newton iteration diverged to a non-finite residual", std::move(history));
    }
    const double norm = r.lpNorm<Eigen::Infinity>();
    history.push_back(norm);
    if (norm <= opts.tol) return {std::move(x), it, norm, std::move(history)};
    if (it == opts.max_iter) {
      throw ConvergenceError("Newton iteration did not converge in " + std::to_string(opts.max_iter) +
                                 " iterations (residual " + sci(norm) + ")",
                             std::move(history));
    }
    const Matrix j = jacobian(x);
    Eigen::PartialPivLU<Matrix> lu(j);
    if (!(lu.rcond() > std::numeric_limits<double>::epsilon())) {
      throw SingularMatrixError("Newton Jacobian is singular; reduce the time step");
    }
    const Vector delta = lu.solve(r);
    x -= delta;
    const double floor = 8.0 * std::numeric_limits<double>::epsilon() * x.lpNorm<Eigen::Infinity>();
    if (delta.lpNorm<Eigen::Infinity>() <= floor) {
      const double final_norm = residual(x).lpNorm<Eigen::Infinity>();
      history.push_back(final_norm);
      // Only a genuine stall at roundoff counts; a jump away from the root does not.
      if (final_norm <= 16.0 * norm + opts.tol) {
        SolveResult out{std::move(x), it + 1, final_norm, std::move(history)};
        out.roundoff_limited = final_norm > opts.tol;
        return out;
      }
    }
  }
}

SolveResult fixed_point_solve(const VectorMap& g, Vector x, const SolverOptions& opts) {
  check_options(opts);
  std::vector<double> history;
  for (int it = 0;; ++it) {
    Vector next = g(x);
    if (!next.allFinite()) {
      history.push_back(std::numeric_limits<double>::infinity());
      throw ConvergenceError("fixed-point iteration diverged to a non-finite value", std::move(history));
    }
    const double norm = (next - x).lpNorm<Eigen::Infinity>();
    history.push_back(norm);
    x = std::move(next);
    if (norm <= opts.tol) return {std::move(x), it + 1, norm, std::move(history)};
    if (it + 1 >= opts.max_iter) {
      throw ConvergenceError("fixed-point iteration did not converge in " + std::to_string(opts.max_iter) +
                                 " iterations (residual " + sci(norm) + ")",
                             std::move(history));
    }
  }
}

}  // namespace ldint
