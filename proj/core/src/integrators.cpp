#include "ldint/integrators.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "ldint/error.hpp"

namespace ldint {

namespace {

const Vector& finite(const Vector& v, const char* what, const HamiltonianSystem& sys) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      throw NonFiniteError(std::string(what) + " component " + std::to_string(i) + " of system '" + sys.name +
                           "' is not finite");
    }
  }
  return v;
}

Vector dHdq(const HamiltonianSystem& s, const Vector& q, const Vector& p, double t) {
  return finite(s.dH_dq(q, p, t), "dH/dq", s);
}
Vector dHdp(const HamiltonianSystem& s, const Vector& q, const Vector& p, double t) {
  return finite(s.dH_dp(q, p, t), "dH/dp", s);
}

Vector stack(const Vector& a, const Vector& b) {
  Vector u(a.size() + b.size());
  u << a, b;
  return u;
}

Increment split(const Vector& delta, Eigen::Index n, int iterations = 0) {
  return {delta.head(n), delta.tail(n), iterations};
}

// Phase-space velocity (dH/dp, -dH/dq).
Vector flow(const HamiltonianSystem& s, const Vector& u, double t) {
  const Eigen::Index n = u.size() / 2;
  const Vector q = u.head(n), p = u.tail(n);
  return stack(dHdp(s, q, p, t), -dHdq(s, q, p, t));
}

// Its total time derivative along the flow.
Vector flow_rate(const HamiltonianSystem& s, const Vector& u, double t) {
  const Eigen::Index n = u.size() / 2;
  const Vector q = u.head(n), p = u.tail(n);
  return stack(finite(s.ddt_dH_dp(q, p, t), "d/dt dH/dp", s), -finite(s.ddt_dH_dq(q, p, t), "d/dt dH/dq", s));
}

// Jacobian of the flow from the Hessian of H.
Matrix flow_jacobian(const HamiltonianSystem& s, const Vector& u, double t) {
  const Eigen::Index n = u.size() / 2;
  const Matrix h = s.hessian(u.head(n), u.tail(n), t);
  Matrix j(2 * n, 2 * n);
  j.topRows(n) = h.bottomRows(n);
  j.bottomRows(n) = -h.topRows(n);
  return j;
}

void require_rates(const HamiltonianSystem& s, const char* method) {
  if (!s.ddt_dH_dq || !s.ddt_dH_dp) {
    throw CapabilityError(std::string(method) + " needs the d/dt(dH/dq) and d/dt(dH/dp) evaluators, which system '" +
                          s.name + "' does not provide");
  }
}

Vector lu_solve(const Matrix& m, const Vector& rhs) {
  Eigen::PartialPivLU<Matrix> lu(m);
  if (!(lu.rcond() > std::numeric_limits<double>::epsilon())) {
    throw SingularMatrixError("implicit linear step matrix is singular; reduce the time step");
  }
  return lu.solve(rhs);
}

bool closed_form_harmonic(const HamiltonianSystem& s) { return s.unit_harmonic && s.dim == 1; }

// Rotation-like increment dq = -c q + b p, dp = -b q - c p.
Increment harmonic(const PhaseState& st, double c, double b) {
  return {-c * st.q + b * st.p, -b * st.q - c * st.p, 0};
}

Increment euler(const HamiltonianSystem& s, const PhaseState& st, double dt) {
  return {dt * dHdp(s, st.q, st.p, st.t), -dt * dHdq(s, st.q, st.p, st.t), 0};
}

Increment rk2(const HamiltonianSystem& s, const PhaseState& st, double dt) {
  require_rates(s, "RK2");
  const Vector fq = dHdp(s, st.q, st.p, st.t);
  const Vector fp = dHdq(s, st.q, st.p, st.t);
  const Vector gq = finite(s.ddt_dH_dp(st.q, st.p, st.t), "d/dt dH/dp", s);
  const Vector gp = finite(s.ddt_dH_dq(st.q, st.p, st.t), "d/dt dH/dq", s);
  return {dt * (fq + 0.5 * dt * gq), -dt * (fp + 0.5 * dt * gp), 0};
}

Increment rk4(const HamiltonianSystem& s, const PhaseState& st, double dt) {
  const Eigen::Index n = st.q.size();
  const Vector u = stack(st.q, st.p);
  if (s.linear && s.linear->time_independent()) {
    const Matrix a = s.linear->matrix(st.t);
    Vector w = u;
    for (int k = 4; k >= 2; --k) w = u + (dt / k) * (a * w);
    return split(dt * (a * w), n);
  }
  const Vector k1 = flow(s, u, st.t);
  const Vector k2 = flow(s, u + 0.5 * dt * k1, st.t + 0.5 * dt);
  const Vector k3 = flow(s, u + 0.5 * dt * k2, st.t + 0.5 * dt);
  const Vector k4 = flow(s, u + dt * k3, st.t + dt);
  return split((dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4), n);
}

Increment verlet(const HamiltonianSystem& s, const PhaseState& st, double dt, VerletVariant v,
                 const SolverOptions& opts) {
  const Eigen::Index n = st.q.size();
  const double t1 = st.t + dt;
  if (v == VerletVariant::Q) {
    const Vector dq = dt * dHdp(s, st.q, st.p, st.t);
    const Vector q1 = st.q + dq;
    if (s.potential) return {dq, -dt * finite(s.potential->gradient(q1), "dV/dq", s), 0};
    // p1 = p0 - dt dH/dq(q1, p1): implicit in p1 unless H is separable.
    auto residual = [&](const Vector& dp) -> Vector { return dp + dt * dHdq(s, q1, st.p + dp, t1); };
    SolveResult r;
    if (s.hessian) {
      auto jac = [&](const Vector& dp) -> Matrix {
        const Matrix h = s.hessian(q1, st.p + dp, t1);
        return Matrix::Identity(n, n) + dt * h.topRightCorner(n, n);
      };
      r = newton_solve(residual, jac, Vector::Zero(n), opts);
    } else {
      r = fixed_point_solve([&](const Vector& dp) -> Vector { return -dt * dHdq(s, q1, st.p + dp, t1); },
                            Vector::Zero(n), opts);
    }
    return {dq, r.x, r.iterations};
  }
  const Vector dp = -dt * dHdq(s, st.q, st.p, st.t);
  const Vector p1 = st.p + dp;
  if (s.potential) return {dt * p1, dp, 0};
  auto residual = [&](const Vector& dq) -> Vector { return dq - dt * dHdp(s, st.q + dq, p1, t1); };
  SolveResult r;
  if (s.hessian) {
    auto jac = [&](const Vector& dq) -> Matrix {
      const Matrix h = s.hessian(st.q + dq, p1, t1);
      return Matrix::Identity(n, n) - dt * h.bottomLeftCorner(n, n);
    };
    r = newton_solve(residual, jac, Vector::Zero(n), opts);
  } else {
    r = fixed_point_solve([&](const Vector& dq) -> Vector { return dt * dHdp(s, st.q + dq, p1, t1); },
                          Vector::Zero(n), opts);
  }
  return {r.x, dp, r.iterations};
}

Increment ld2(const HamiltonianSystem& s, const PhaseState& st, double dt, const SolverOptions& opts) {
  const Eigen::Index n = st.q.size();
  const double t1 = st.t + dt;
  if (closed_form_harmonic(s)) {
    const double d = 1.0 + dt * dt / 4.0;
    return harmonic(st, (dt * dt / 2.0) / d, dt / d);
  }
  if (s.linear) {
    const Vector u = stack(st.q, st.p);
    const Matrix a0 = s.linear->matrix(st.t);
    const Matrix a1 = s.linear->matrix(t1);
    const Matrix m = Matrix::Identity(2 * n, 2 * n) - 0.5 * dt * a1;
    return split(lu_solve(m, 0.5 * dt * (a0 * u + a1 * u)), n);
  }
  if (s.potential && s.potential->hessian) {
    // Solve for the position increment, then both endpoint forces give dp.
    const auto& pot = *s.potential;
    const Vector g0 = finite(pot.gradient(st.q), "dV/dq", s);
    const double h = dt * dt / 4.0;
    auto residual = [&](const Vector& d) -> Vector { return d + h * (pot.gradient(st.q + d) + g0) - dt * st.p; };
    auto jac = [&](const Vector& d) -> Matrix { return Matrix::Identity(n, n) + h * pot.hessian(st.q + d); };
    const SolveResult r = newton_solve(residual, jac, Vector::Zero(n), opts);
    const Vector g1 = finite(pot.gradient(st.q + r.x), "dV/dq", s);
    return {r.x, -0.5 * dt * (g0 + g1), r.iterations};
  }
  const Vector u0 = stack(st.q, st.p);
  const Vector f0 = flow(s, u0, st.t);
  if (s.hessian) {
    auto residual = [&](const Vector& d) -> Vector { return d - 0.5 * dt * (f0 + flow(s, u0 + d, t1)); };
    auto jac = [&](const Vector& d) -> Matrix {
      return Matrix::Identity(2 * n, 2 * n) - 0.5 * dt * flow_jacobian(s, u0 + d, t1);
    };
    const SolveResult r = newton_solve(residual, jac, Vector::Zero(2 * n), opts);
    return split(r.x, n, r.iterations);
  }
  const SolveResult r = fixed_point_solve(
      [&](const Vector& d) -> Vector { return 0.5 * dt * (f0 + flow(s, u0 + d, t1)); }, Vector::Zero(2 * n), opts);
  return split(r.x, n, r.iterations);
}

Increment ld4(const HamiltonianSystem& s, const PhaseState& st, double dt, const SolverOptions& opts) {
  const Eigen::Index n = st.q.size();
  const double t1 = st.t + dt;
  const double h2 = dt * dt / 12.0;
  if (closed_form_harmonic(s)) {
    const double d = 1.0 + h2 * (1.0 + h2);
    return harmonic(st, (dt * dt / 2.0) / d, dt * (1.0 - h2) / d);
  }
  if (s.linear) {
    const Vector u = stack(st.q, st.p);
    const Matrix a0 = s.linear->matrix(st.t);
    const Matrix a1 = s.linear->matrix(t1);
    Matrix b0 = a0 * a0;
    Matrix b1 = a1 * a1;
    if (!s.linear->time_independent()) {
      b0 += s.linear->rate(st.t);
      b1 += s.linear->rate(t1);
    }
    const Matrix m = Matrix::Identity(2 * n, 2 * n) - 0.5 * dt * a1 + h2 * b1;
    const Vector rhs = 0.5 * dt * (a0 * u + a1 * u) + h2 * (b0 * u - b1 * u);
    return split(lu_solve(m, rhs), n);
  }
  if (s.potential && s.potential->hessian && s.potential->hessian_derivative) {
    const auto& pot = *s.potential;
    const Vector& q0 = st.q;
    const Vector& p0 = st.p;
    const Vector g0 = finite(pot.gradient(q0), "dV/dq", s);
    const Vector c0 = pot.hessian(q0) * p0;
    const Matrix eye = Matrix::Identity(n, n);
    auto residual = [&](const Vector& x) -> Vector {
      const Vector dq = x.head(n), dp = x.tail(n);
      const Vector q1 = q0 + dq, p1 = p0 + dp;
      const Vector g1 = pot.gradient(q1);
      Vector r(2 * n);
      r.head(n) = dq - 0.5 * dt * (2.0 * p0 + dp) - h2 * (g1 - g0);
      r.tail(n) = dp + 0.5 * dt * (g0 + g1) + h2 * (c0 - pot.hessian(q1) * p1);
      return r;
    };
    auto jac = [&](const Vector& x) -> Matrix {
      const Vector q1 = q0 + x.head(n), p1 = p0 + x.tail(n);
      const Matrix v2 = pot.hessian(q1);
      Matrix j(2 * n, 2 * n);
      j.topLeftCorner(n, n) = eye - h2 * v2;
      j.topRightCorner(n, n) = -0.5 * dt * eye;
      j.bottomLeftCorner(n, n) = 0.5 * dt * v2 - h2 * pot.hessian_derivative(q1, p1);
      j.bottomRightCorner(n, n) = eye - h2 * v2;
      return j;
    };
    const SolveResult r = newton_solve(residual, jac, Vector::Zero(2 * n), opts);
    return split(r.x, n, r.iterations);
  }
  require_rates(s, "LD4");
  const Vector u0 = stack(st.q, st.p);
  const Vector f0 = flow(s, u0, st.t);
  const Vector g0 = flow_rate(s, u0, st.t);
  const SolveResult r = fixed_point_solve(
      [&](const Vector& d) -> Vector {
        const Vector u1 = u0 + d;
        return 0.5 * dt * (f0 + flow(s, u1, t1)) + h2 * (g0 - flow_rate(s, u1, t1));
      },
      Vector::Zero(2 * n), opts);
  return split(r.x, n, r.iterations);
}

void check_step_args(const HamiltonianSystem& sys, const PhaseState& st, double dt) {
  if (!std::isfinite(dt) || dt == 0.0) throw std::invalid_argument("time step must be finite and non-zero");
  st.validate();
  if (st.q.size() != sys.dim) throw std::invalid_argument("state dimension does not match system '" + sys.name + "'");
  if (!sys.dH_dq || !sys.dH_dp) throw CapabilityError("system '" + sys.name + "' lacks dH/dq or dH/dp");
}

}  // namespace

const char* to_string(Method m) {
  switch (m) {
    case Method::Euler:
      return "euler";
    case Method::RK2:
      return "rk2";
    case Method::RK4:
      return "rk4";
    case Method::VerletQ:
      return "verlet-q";
    case Method::VerletP:
      return "verlet-p";
    case Method::LD2:
      return "ld2";
    case Method::LD4:
      return "ld4";
  }
  return "?";
}

std::optional<Method> parse_method(std::string_view name) {
  std::string key;
  for (char c : name) key += c == '_' ? '-' : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  for (Method m : {Method::Euler, Method::RK2, Method::RK4, Method::VerletQ, Method::VerletP, Method::LD2, Method::LD4}) {
    if (key == to_string(m)) return m;
  }
  if (key == "verletq") return Method::VerletQ;
  if (key == "verletp") return Method::VerletP;
  return std::nullopt;
}

void StepperConfig::validate() const {
  if (!std::isfinite(dt) || !(dt > 0.0)) throw std::invalid_argument("dt must be finite and positive");
  if (!(newton_tol > 0.0) || !(newton_tol < 1.0)) throw std::invalid_argument("newton_tol must lie in (0, 1)");
  if (newton_max_iter < 1) throw std::invalid_argument("newton_max_iter must be positive");
}

Increment increment(const HamiltonianSystem& sys, const PhaseState& state, double dt, Method method,
                    const SolverOptions& opts) {
  check_step_args(sys, state, dt);
  Increment inc;
  switch (method) {
    case Method::Euler:
      inc = euler(sys, state, dt);
      break;
    case Method::RK2:
      inc = rk2(sys, state, dt);
      break;
    case Method::RK4:
      inc = rk4(sys, state, dt);
      break;
    case Method::VerletQ:
      inc = verlet(sys, state, dt, VerletVariant::Q, opts);
      break;
    case Method::VerletP:
      inc = verlet(sys, state, dt, VerletVariant::P, opts);
      break;
    case Method::LD2:
      inc = ld2(sys, state, dt, opts);
      break;
    case Method::LD4:
      inc = ld4(sys, state, dt, opts);
      break;
  }
  finite(inc.dq, "position increment", sys);
  finite(inc.dp, "momentum increment", sys);
  return inc;
}

PhaseState apply(const PhaseState& state, const Increment& inc, double dt) {
  PhaseState next;
  next.q = state.q + inc.dq;
  next.p = state.p + inc.dp;
  next.t = state.t + dt;
  next.nu = state.nu + 1;
  return next;
}

PhaseState step_euler(const HamiltonianSystem& sys, const PhaseState& s, double dt) {
  return apply(s, increment(sys, s, dt, Method::Euler), dt);
}
PhaseState step_rk2(const HamiltonianSystem& sys, const PhaseState& s, double dt) {
  return apply(s, increment(sys, s, dt, Method::RK2), dt);
}
PhaseState step_rk4(const HamiltonianSystem& sys, const PhaseState& s, double dt) {
  return apply(s, increment(sys, s, dt, Method::RK4), dt);
}
PhaseState step_verlet(const HamiltonianSystem& sys, const PhaseState& s, double dt, VerletVariant v,
                       const SolverOptions& opts) {
  return apply(s, increment(sys, s, dt, v == VerletVariant::Q ? Method::VerletQ : Method::VerletP, opts), dt);
}
PhaseState step_ld2(const HamiltonianSystem& sys, const PhaseState& s, double dt, const SolverOptions& opts) {
  return apply(s, increment(sys, s, dt, Method::LD2, opts), dt);
}
PhaseState step_ld4(const HamiltonianSystem& sys, const PhaseState& s, double dt, const SolverOptions& opts) {
  return apply(s, increment(sys, s, dt, Method::LD4, opts), dt);
}

PhaseState step(const HamiltonianSystem& sys, const PhaseState& state, const StepperConfig& config) {
  config.validate();
  return apply(state, increment(sys, state, config.dt, config.method, config.solver()), config.dt);
}

DiagnosticSeries evolve(const HamiltonianSystem& sys, const StepperConfig& config, const PhaseState& initial,
                        std::size_t steps, const EvolveOptions& options) {
  config.validate();
  check_step_args(sys, initial, config.dt);
  if (options.record_stride == 0) throw std::invalid_argument("record_stride must be positive");
  if (!std::isfinite(config.dt * static_cast<double>(steps))) throw std::invalid_argument("steps * dt overflows");

  const SolverOptions solver = config.solver();
  const double e0 = energy(sys, initial);
  const std::optional<double> c0 =
      sys.damping ? std::optional<double>(damped_invariant(*sys.damping, initial)) : std::nullopt;

  DiagnosticSeries series;
  auto record = [&](const PhaseState& s, int iterations, std::optional<double> jac) {
    DiagnosticRecord r;
    r.nu = s.nu;
    r.t = s.t;
    r.q = s.q;
    r.p = s.p;
    r.energy = energy(sys, s);
    r.dE_rel = relative_deviation(r.energy, e0);
    r.jacobian = jac;
    if (c0) r.C_rel = relative_deviation(damped_invariant(*sys.damping, s), *c0);
    r.solver_iterations = iterations;
    series.append(std::move(r));
  };
  record(initial, 0, std::nullopt);

  const Eigen::Index n = initial.q.size();
  std::vector<CompensatedAccumulator> acc_q, acc_p;
  for (Eigen::Index i = 0; i < n; ++i) {
    acc_q.emplace_back(initial.q[i]);
    acc_p.emplace_back(initial.p[i]);
  }

  PhaseState state = initial;
  int worst_iterations = 0;
  for (std::size_t k = 1; k <= steps; ++k) {
    Increment inc;
    std::optional<double> jac;
    try {
      inc = increment(sys, state, config.dt, config.method, solver);
      if (options.record_jacobian && (k % options.record_stride == 0 || k == steps)) {
        jac = map_jacobian(
            [&](const PhaseState& s) { return apply(s, increment(sys, s, config.dt, config.method, solver), config.dt); },
            state);
      }
    } catch (const Error& e) {
      throw StepError(std::string(e.what()) + " (step " + std::to_string(k) + ", t = " + std::to_string(state.t) + ")",
                      k);
    }
    if (config.compensated_summation) {
      for (Eigen::Index i = 0; i < n; ++i) {
        acc_q[i] += inc.dq[i];
        acc_p[i] += inc.dp[i];
        state.q[i] = acc_q[i].value();
        state.p[i] = acc_p[i].value();
      }
    } else {
      state.q += inc.dq;
      state.p += inc.dp;
    }
    state.nu = initial.nu + k;
    state.t = initial.t + static_cast<double>(k) * config.dt;
    if (!state.q.allFinite() || !state.p.allFinite()) {
      throw StepError("state became non-finite (step " + std::to_string(k) + ")", k);
    }
    worst_iterations = std::max(worst_iterations, inc.iterations);
    if (options.on_step) options.on_step(state, inc);
    if (k % options.record_stride == 0 || k == steps) {
      record(state, worst_iterations, jac);
      worst_iterations = 0;
    }
  }
  return series;
}

}  // namespace ldint
