#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>

#include <Eigen/Dense>

namespace ldint {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Canonical pair (q, p) at time t after nu steps.
struct PhaseState {
  Vector q;
  Vector p;
  double t = 0.0;
  std::size_t nu = 0;

  static PhaseState scalar(double q, double p, double t = 0.0);
  Eigen::Index dim() const { return q.size(); }
  /// Throws std::invalid_argument on mismatched dimensions or non-finite entries.
  void validate() const;
};

using ScalarField = std::function<double(const Vector& q, const Vector& p, double t)>;
using VectorField = std::function<Vector(const Vector& q, const Vector& p, double t)>;
using MatrixField = std::function<Matrix(const Vector& q, const Vector& p, double t)>;

/// H = p.p / 2 + V(q). Enables the explicit Verlet and rearranged LD solves.
struct SeparablePotential {
  std::function<double(const Vector& q)> value;
  std::function<Vector(const Vector& q)> gradient;
  std::function<Matrix(const Vector& q)> hessian;
  /// d/dq [V''(q) p]; needed by the LD4 Newton Jacobian.
  std::function<Matrix(const Vector& q, const Vector& p)> hessian_derivative;
};

/// d(q, p)/dt = A(t) (q, p) with (q, p) stacked into one 2N vector.
struct LinearGenerator {
  std::function<Matrix(double t)> matrix;
  /// dA/dt; empty when A is constant.
  std::function<Matrix(double t)> rate;

  bool time_independent() const { return !rate; }
};

/// Hamilton's equations dq/dt = dH/dp, dp/dt = -dH/dq plus optional structure
/// that individual schemes need.
struct HamiltonianSystem {
  std::string name;
  Eigen::Index dim = 1;
  ScalarField hamiltonian;
  VectorField dH_dq;
  VectorField dH_dp;
  /// Total time derivatives of dH/dq and dH/dp along the flow (RK2, LD4).
  VectorField ddt_dH_dq;
  VectorField ddt_dH_dp;
  /// Second partials of H as a 2N x 2N matrix [[H_qq, H_qp], [H_pq, H_pp]].
  MatrixField hessian;
  std::optional<SeparablePotential> potential;
  std::optional<LinearGenerator> linear;
  /// Damping constant of the damped-oscillator family.
  std::optional<double> damping;
  /// H = (p^2 + q^2) / 2 with dim 1; selects the closed-form steppers.
  bool unit_harmonic = false;
};

/// H = (p^2 + q^2) / 2.
HamiltonianSystem make_sho();

/// H = p^2 / 2 - cos q, so V' = sin q and V'' = cos q.
HamiltonianSystem make_pendulum();

/// H = p^2/2 e^{-gamma t} + q^2/2 e^{gamma t}, i.e. q'' + gamma q' + q = 0.
HamiltonianSystem make_damped(double gamma);

/// H = p^2 / 2.
HamiltonianSystem make_free_particle();

/// du/dt = A u for u = (q, p) stacked, A constant and 2N x 2N. The Hamiltonian slot
/// holds |u|^2 / 2, which is only a true invariant when A is skew.
HamiltonianSystem make_linear_system(Matrix generator, std::string name = "linear");

}  // namespace ldint
