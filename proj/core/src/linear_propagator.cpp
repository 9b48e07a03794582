#include "ldint/linear_propagator.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "ldint/error.hpp"
#include "ldint/quadrature.hpp"

namespace ldint {

namespace {

// sum_l w_l X^l with w_0 = 1, by Horner.
Matrix matrix_polynomial(const std::vector<double>& w, const Matrix& x) {
  const Eigen::Index m = x.rows();
  Matrix r = w.back() * Matrix::Identity(m, m);
  for (std::size_t l = w.size() - 1; l-- > 0;) {
    r = r * x;
    r.diagonal().array() += w[l];
  }
  return r;
}

std::vector<double> series_weights(PropagatorKind kind, unsigned n) {
  std::vector<double> w(n + 1, 1.0);
  if (kind == PropagatorKind::Taylor) {
    for (unsigned l = 1; l <= n; ++l) w[l] = w[l - 1] / l;
  } else {
    const QuadratureRule rule = QuadratureRule::lanczos_dyche(n);
    for (unsigned l = 1; l <= n; ++l) w[l] = rule.weights()[l - 1];
  }
  return w;
}

void check_symmetric(const Matrix& m, const char* what) {
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw std::invalid_argument(std::string("OscillatorNetwork: ") + what + " matrix is not symmetric");
  }
}

}  // namespace

LinearPropagator::LinearPropagator(Matrix generator, double dt, unsigned n, PropagatorKind kind,
                                   PropagatorStorage storage)
    : a_(std::move(generator)), dt_(dt), n_(n), kind_(kind), storage_(storage) {
  if (a_.rows() != a_.cols() || a_.rows() == 0) throw std::invalid_argument("propagator: generator must be square");
  if (!a_.allFinite()) throw std::invalid_argument("propagator: generator has non-finite entries");
  if (!std::isfinite(dt)) throw std::invalid_argument("propagator: dt must be finite");
  if (n == 0) throw std::invalid_argument("propagator: order n must be at least 1");

  const std::vector<double> w = series_weights(kind, n);
  const Matrix x = dt * a_;
  const Eigen::Index m = a_.rows();
  numerator_ = matrix_polynomial(w, x);
  if (kind == PropagatorKind::Taylor) {
    denominator_ = Matrix::Identity(m, m);
    p_ = numerator_;
    lu_.compute(denominator_);
    return;
  }
  denominator_ = matrix_polynomial(w, -x);
  lu_.compute(denominator_);
  if (!(lu_.rcond() > std::numeric_limits<double>::epsilon())) {
    throw SingularMatrixError("propagator denominator is singular (pole of the LD map); use a smaller dt");
  }
  p_ = lu_.solve(numerator_);
  const double resid = (denominator_ * p_ - numerator_).norm() / std::max(numerator_.norm(), 1e-300);
  if (!(resid <= 1e-10)) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "propagator solve residual %.3e exceeds 1e-10; use a smaller dt", resid);
    throw SingularMatrixError(buf);
  }
}

Vector LinearPropagator::apply(const Vector& u) const {
  if (u.size() != a_.rows()) throw std::invalid_argument("propagator: state dimension mismatch");
  if (storage_ == PropagatorStorage::Dense || kind_ == PropagatorKind::Taylor) return p_ * u;
  return lu_.solve(numerator_ * u);
}

Matrix LinearPropagator::block_a() const {
  const Eigen::Index h = size() / 2;
  return p_.topLeftCorner(h, h);
}
Matrix LinearPropagator::block_b() const {
  const Eigen::Index h = size() / 2;
  return p_.topRightCorner(h, h);
}
Matrix LinearPropagator::block_c() const {
  const Eigen::Index h = size() / 2;
  return p_.bottomLeftCorner(h, h);
}
Matrix LinearPropagator::block_d() const {
  const Eigen::Index h = size() / 2;
  return p_.bottomRightCorner(h, h);
}

LinearPropagator build_propagator(const Matrix& generator, double dt, unsigned n, PropagatorStorage storage) {
  return LinearPropagator(generator, dt, n, PropagatorKind::LanczosDyche, storage);
}

LinearPropagator build_taylor_propagator(const Matrix& generator, double dt, unsigned n) {
  return LinearPropagator(generator, dt, n, PropagatorKind::Taylor, PropagatorStorage::Dense);
}

OscillatorNetwork::OscillatorNetwork(Matrix mass, Matrix stiffness) : m_(std::move(mass)), k_(std::move(stiffness)) {
  if (m_.rows() == 0 || m_.rows() != m_.cols() || k_.rows() != k_.cols() || k_.rows() != m_.rows()) {
    throw std::invalid_argument("OscillatorNetwork: M and K must be square and of equal size");
  }
  if (!m_.allFinite() || !k_.allFinite()) throw std::invalid_argument("OscillatorNetwork: non-finite entry");
  check_symmetric(m_, "mass");
  check_symmetric(k_, "stiffness");
  Eigen::LLT<Matrix> llt(m_);
  if (llt.info() != Eigen::Success) throw std::invalid_argument("OscillatorNetwork: mass matrix is not positive definite");
  m_inv_ = llt.solve(Matrix::Identity(m_.rows(), m_.cols()));
  m_inv_ = 0.5 * (m_inv_ + m_inv_.transpose()).eval();
}

OscillatorNetwork OscillatorNetwork::parse(std::istream& in) {
  long long n = 0;
  if (!(in >> n) || n <= 0) throw std::invalid_argument("oscillator file: first entry must be a positive N");
  Matrix m(n, n), k(n, n);
  for (Matrix* target : {&m, &k}) {
    for (long long i = 0; i < n; ++i) {
      for (long long j = 0; j < n; ++j) {
        if (!(in >> (*target)(i, j))) throw std::invalid_argument("oscillator file: expected 2N rows of N numbers");
      }
    }
  }
  std::string extra;
  if (in >> extra) throw std::invalid_argument("oscillator file: trailing data after K");
  return OscillatorNetwork(std::move(m), std::move(k));
}

OscillatorNetwork OscillatorNetwork::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open oscillator file '" + path + "'");
  return parse(in);
}

double OscillatorNetwork::energy(const Vector& q, const Vector& p) const {
  if (q.size() != dim() || p.size() != dim()) throw std::invalid_argument("OscillatorNetwork: dimension mismatch");
  return 0.5 * p.dot(m_inv_ * p) + 0.5 * q.dot(k_ * q);
}

Matrix oscillator_generator(const OscillatorNetwork& net) {
  const Eigen::Index n = net.dim();
  Matrix a = Matrix::Zero(2 * n, 2 * n);
  a.topRightCorner(n, n) = net.inverse_mass();
  a.bottomLeftCorner(n, n) = -net.stiffness();
  return a;
}

HamiltonianSystem make_coupled(const OscillatorNetwork& net) {
  const Matrix a = oscillator_generator(net);
  HamiltonianSystem sys;
  sys.name = "coupled";
  sys.dim = net.dim();
  const Matrix m_inv = net.inverse_mass();
  const Matrix k = net.stiffness();
  const Eigen::Index n = net.dim();
  sys.hamiltonian = [m_inv, k](const Vector& q, const Vector& p, double) {
    return 0.5 * p.dot(m_inv * p) + 0.5 * q.dot(k * q);
  };
  sys.dH_dq = [k](const Vector& q, const Vector&, double) -> Vector { return k * q; };
  sys.dH_dp = [m_inv](const Vector&, const Vector& p, double) -> Vector { return m_inv * p; };
  sys.ddt_dH_dq = [k, m_inv](const Vector&, const Vector& p, double) -> Vector { return k * (m_inv * p); };
  sys.ddt_dH_dp = [k, m_inv](const Vector& q, const Vector&, double) -> Vector { return -(m_inv * (k * q)); };
  sys.hessian = [m_inv, k, n](const Vector&, const Vector&, double) {
    Matrix h = Matrix::Zero(2 * n, 2 * n);
    h.topLeftCorner(n, n) = k;
    h.bottomRightCorner(n, n) = m_inv;
    return h;
  };
  sys.linear = LinearGenerator{[a](double) { return a; }, {}};
  return sys;
}

const char* to_string(StencilScheme s) {
  return s == StencilScheme::CentralDifference2 ? "cd2" : "cd4";
}

MolOperator mol_advection_operator(std::size_t grid_points, double dx, StencilScheme scheme) {
  const std::size_t min_points = scheme == StencilScheme::CentralDifference2 ? 4 : 5;
  if (grid_points < min_points) {
    throw std::invalid_argument("mol_advection_operator: need at least " + std::to_string(min_points) +
                                " grid points for this stencil");
  }
  if (!(dx > 0.0) || !std::isfinite(dx)) throw std::invalid_argument("mol_advection_operator: dx must be positive");

  // Offsets and first-derivative weights; L = -D.
  std::vector<std::pair<long long, double>> stencil;
  if (scheme == StencilScheme::CentralDifference2) {
    stencil = {{-1, -0.5}, {1, 0.5}};
  } else {
    stencil = {{-2, 1.0 / 12.0}, {-1, -8.0 / 12.0}, {1, 8.0 / 12.0}, {2, -1.0 / 12.0}};
  }
  const auto n = static_cast<long long>(grid_points);
  std::vector<Eigen::Triplet<double>> entries;
  for (long long i = 0; i < n; ++i) {
    for (const auto& [off, w] : stencil) {
      entries.emplace_back(i, ((i + off) % n + n) % n, -w / dx);
    }
  }
  MolOperator op;
  op.grid_points = grid_points;
  op.dx = dx;
  op.scheme = scheme;
  op.L.resize(n, n);
  op.L.setFromTriplets(entries.begin(), entries.end());
  return op;
}

LinearTrajectory evolve_linear(const LinearPropagator& prop, const Vector& u0, std::size_t steps, bool keep_states) {
  if (u0.size() != prop.size()) throw std::invalid_argument("evolve_linear: dimension mismatch");
  LinearTrajectory traj;
  traj.dt = prop.dt();
  traj.norms.reserve(steps + 1);
  traj.states.push_back(u0);
  traj.norms.push_back(u0.norm());
  Vector u = u0;
  for (std::size_t k = 0; k < steps; ++k) {
    u = prop.apply(u);
    traj.norms.push_back(u.norm());
    if (keep_states) traj.states.push_back(u);
  }
  if (!keep_states && steps > 0) traj.states.push_back(u);
  return traj;
}

void write_norm_csv(std::ostream& out, const LinearTrajectory& traj) {
  out << "step,t,norm\n";
  char buf[96];
  for (std::size_t k = 0; k < traj.norms.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", k, static_cast<double>(k) * traj.dt, traj.norms[k]);
    out << buf;
  }
}

}  // namespace ldint
