#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string_view>

#include "ldint/diagnostics.hpp"
#include "ldint/newton.hpp"
#include "ldint/system.hpp"

namespace ldint {

enum class Method { Euler, RK2, RK4, VerletQ, VerletP, LD2, LD4 };

const char* to_string(Method m);
/// Accepts euler, rk2, rk4, verlet-q, verlet-p, ld2, ld4 (case-insensitive; '_' equals '-').
std::optional<Method> parse_method(std::string_view name);

struct StepperConfig {
  Method method = Method::LD2;
  double dt = 0.1;
  double newton_tol = 1e-14;
  int newton_max_iter = 25;
  bool compensated_summation = true;

  /// Throws std::invalid_argument on a non-finite or non-positive dt or bad solver settings.
  void validate() const;
  SolverOptions solver() const { return {newton_tol, newton_max_iter}; }
};

/// Change of (q, p) over one step, kept apart from the state so callers can add it
/// with compensated summation.
struct Increment {
  Vector dq;
  Vector dp;
  int iterations = 0;
};

/// One step's increment. dt may be negative (backward step).
Increment increment(const HamiltonianSystem& sys, const PhaseState& state, double dt, Method method,
                    const SolverOptions& opts = {});

/// state + increment, t advanced by dt, nu incremented.
PhaseState apply(const PhaseState& state, const Increment& inc, double dt);

PhaseState step_euler(const HamiltonianSystem& sys, const PhaseState& state, double dt);
PhaseState step_rk2(const HamiltonianSystem& sys, const PhaseState& state, double dt);
PhaseState step_rk4(const HamiltonianSystem& sys, const PhaseState& state, double dt);

enum class VerletVariant { Q, P };

PhaseState step_verlet(const HamiltonianSystem& sys, const PhaseState& state, double dt, VerletVariant variant,
                       const SolverOptions& opts = {});
PhaseState step_ld2(const HamiltonianSystem& sys, const PhaseState& state, double dt, const SolverOptions& opts = {});
PhaseState step_ld4(const HamiltonianSystem& sys, const PhaseState& state, double dt, const SolverOptions& opts = {});

PhaseState step(const HamiltonianSystem& sys, const PhaseState& state, const StepperConfig& config);

struct EvolveOptions {
  /// Keep every k-th record (the initial and final states are always kept).
  std::size_t record_stride = 1;
  /// Attach the finite-difference map Jacobian to each kept record.
  bool record_jacobian = false;
  /// Called after every step, kept or not.
  std::function<void(const PhaseState&, const Increment&)> on_step;
};

/// Runs `steps` steps of the configured method from `initial`. Times are t0 + nu dt.
/// Stepper failures are rethrown as StepError carrying the failing step index.
DiagnosticSeries evolve(const HamiltonianSystem& sys, const StepperConfig& config, const PhaseState& initial,
                        std::size_t steps, const EvolveOptions& options = {});

}  // namespace ldint
