#include "ldint/system.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ldint {

PhaseState PhaseState::scalar(double q, double p, double t) {
  PhaseState s;
  s.q = Vector::Constant(1, q);
  s.p = Vector::Constant(1, p);
  s.t = t;
  return s;
}

void PhaseState::validate() const {
  if (q.size() != p.size()) throw std::invalid_argument("PhaseState: q and p differ in dimension");
  if (!std::isfinite(t)) throw std::invalid_argument("PhaseState: time is not finite");
  if (!q.allFinite() || !p.allFinite()) throw std::invalid_argument("PhaseState: non-finite entry");
}

namespace {

Vector one(double x) { return Vector::Constant(1, x); }
Matrix one_by_one(double x) { return Matrix::Constant(1, 1, x); }

}  // namespace

HamiltonianSystem make_sho() {
  HamiltonianSystem sys;
  sys.name = "sho";
  sys.dim = 1;
  sys.hamiltonian = [](const Vector& q, const Vector& p, double) { return 0.5 * (p.squaredNorm() + q.squaredNorm()); };
  sys.dH_dq = [](const Vector& q, const Vector&, double) { return q; };
  sys.dH_dp = [](const Vector&, const Vector& p, double) { return p; };
  sys.ddt_dH_dq = [](const Vector&, const Vector& p, double) { return p; };
  sys.ddt_dH_dp = [](const Vector& q, const Vector&, double) -> Vector { return -q; };
  sys.hessian = [](const Vector&, const Vector&, double) { return Matrix::Identity(2, 2); };
  sys.potential = SeparablePotential{
      [](const Vector& q) { return 0.5 * q.squaredNorm(); },
      [](const Vector& q) { return q; },
      [](const Vector& q) { return Matrix::Identity(q.size(), q.size()); },
      [](const Vector& q, const Vector&) { return Matrix::Zero(q.size(), q.size()); },
  };
  Matrix a(2, 2);
  a << 0.0, 1.0, -1.0, 0.0;
  sys.linear = LinearGenerator{[a](double) { return a; }, {}};
  sys.unit_harmonic = true;
  return sys;
}

HamiltonianSystem make_pendulum() {
  HamiltonianSystem sys;
  sys.name = "pendulum";
  sys.dim = 1;
  sys.hamiltonian = [](const Vector& q, const Vector& p, double) { return 0.5 * p.squaredNorm() - std::cos(q[0]); };
  sys.dH_dq = [](const Vector& q, const Vector&, double) { return one(std::sin(q[0])); };
  sys.dH_dp = [](const Vector&, const Vector& p, double) { return p; };
  sys.ddt_dH_dq = [](const Vector& q, const Vector& p, double) { return one(std::cos(q[0]) * p[0]); };
  sys.ddt_dH_dp = [](const Vector& q, const Vector&, double) { return one(-std::sin(q[0])); };
  sys.hessian = [](const Vector& q, const Vector&, double) {
    Matrix h = Matrix::Zero(2, 2);
    h(0, 0) = std::cos(q[0]);
    h(1, 1) = 1.0;
    return h;
  };
  sys.potential = SeparablePotential{
      [](const Vector& q) { return -std::cos(q[0]); },
      [](const Vector& q) { return one(std::sin(q[0])); },
      [](const Vector& q) { return one_by_one(std::cos(q[0])); },
      [](const Vector& q, const Vector& p) { return one_by_one(-std::sin(q[0]) * p[0]); },
  };
  return sys;
}

HamiltonianSystem make_damped(double gamma) {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
    throw std::invalid_argument("make_damped: gamma must be finite and non-negative");
  }
  HamiltonianSystem sys;
  sys.name = "damped";
  sys.dim = 1;
  sys.damping = gamma;
  sys.hamiltonian = [gamma](const Vector& q, const Vector& p, double t) {
    return 0.5 * p.squaredNorm() * std::exp(-gamma * t) + 0.5 * q.squaredNorm() * std::exp(gamma * t);
  };
  sys.dH_dq = [gamma](const Vector& q, const Vector&, double t) -> Vector { return std::exp(gamma * t) * q; };
  sys.dH_dp = [gamma](const Vector&, const Vector& p, double t) -> Vector { return std::exp(-gamma * t) * p; };
  sys.ddt_dH_dq = [gamma](const Vector& q, const Vector& p, double t) -> Vector {
    return gamma * std::exp(gamma * t) * q + p;
  };
  sys.ddt_dH_dp = [gamma](const Vector& q, const Vector& p, double t) -> Vector {
    return -gamma * std::exp(-gamma * t) * p - q;
  };
  sys.hessian = [gamma](const Vector&, const Vector&, double t) {
    Matrix h = Matrix::Zero(2, 2);
    h(0, 0) = std::exp(gamma * t);
    h(1, 1) = std::exp(-gamma * t);
    return h;
  };
  sys.linear = LinearGenerator{
      [gamma](double t) {
        Matrix a(2, 2);
        a << 0.0, std::exp(-gamma * t), -std::exp(gamma * t), 0.0;
        return a;
      },
      [gamma](double t) {
        Matrix a(2, 2);
        a << 0.0, -gamma * std::exp(-gamma * t), -gamma * std::exp(gamma * t), 0.0;
        return a;
      },
  };
  return sys;
}

HamiltonianSystem make_free_particle() {
  HamiltonianSystem sys;
  sys.name = "free";
  sys.dim = 1;
  sys.hamiltonian = [](const Vector&, const Vector& p, double) { return 0.5 * p.squaredNorm(); };
  sys.dH_dq = [](const Vector& q, const Vector&, double) -> Vector { return Vector::Zero(q.size()); };
  sys.dH_dp = [](const Vector&, const Vector& p, double) { return p; };
  sys.ddt_dH_dq = [](const Vector& q, const Vector&, double) -> Vector { return Vector::Zero(q.size()); };
  sys.ddt_dH_dp = [](const Vector& q, const Vector&, double) -> Vector { return Vector::Zero(q.size()); };
  sys.hessian = [](const Vector&, const Vector&, double) {
    Matrix h = Matrix::Zero(2, 2);
    h(1, 1) = 1.0;
    return h;
  };
  sys.potential = SeparablePotential{
      [](const Vector&) { return 0.0; },
      [](const Vector& q) -> Vector { return Vector::Zero(q.size()); },
      [](const Vector& q) -> Matrix { return Matrix::Zero(q.size(), q.size()); },
      [](const Vector& q, const Vector&) -> Matrix { return Matrix::Zero(q.size(), q.size()); },
  };
  Matrix a = Matrix::Zero(2, 2);
  a(0, 1) = 1.0;
  sys.linear = LinearGenerator{[a](double) { return a; }, {}};
  return sys;
}

HamiltonianSystem make_linear_system(Matrix generator, std::string name) {
  if (generator.rows() != generator.cols() || generator.rows() % 2 != 0 || generator.rows() == 0) {
    throw std::invalid_argument("make_linear_system: generator must be square with even, positive size");
  }
  const Eigen::Index n = generator.rows() / 2;
  HamiltonianSystem sys;
  sys.name = std::move(name);
  sys.dim = n;
  auto stack = [n](const Vector& q, const Vector& p) {
    Vector u(2 * n);
    u << q, p;
    return u;
  };
  sys.hamiltonian = [](const Vector& q, const Vector& p, double) { return 0.5 * (q.squaredNorm() + p.squaredNorm()); };
  sys.dH_dp = [generator, stack, n](const Vector& q, const Vector& p, double) -> Vector {
    return (generator * stack(q, p)).head(n);
  };
  sys.dH_dq = [generator, stack, n](const Vector& q, const Vector& p, double) -> Vector {
    return -(generator * stack(q, p)).tail(n);
  };
  const Matrix squared = generator * generator;
  sys.ddt_dH_dp = [squared, stack, n](const Vector& q, const Vector& p, double) -> Vector {
    return (squared * stack(q, p)).head(n);
  };
  sys.ddt_dH_dq = [squared, stack, n](const Vector& q, const Vector& p, double) -> Vector {
    return -(squared * stack(q, p)).tail(n);
  };
  sys.linear = LinearGenerator{[generator](double) { return generator; }, {}};
  return sys;
}

}  // namespace ldint
