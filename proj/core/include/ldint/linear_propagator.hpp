#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "ldint/system.hpp"

namespace ldint {

enum class PropagatorKind {
  /// N(-A dt) P = N(A dt), the (n,n) Padé map.
  LanczosDyche,
  /// Truncated exponential sum_{l<=n} (A dt)^l / l!, i.e. order-n explicit Runge-Kutta on linear systems.
  Taylor,
};

enum class PropagatorStorage {
  /// Each step is one solve with the LU factors of the denominator.
  Factorized,
  /// Each step is one multiply by the explicitly formed P.
  Dense,
};

/// One-step map u_{nu+1} = P u_nu for du/dt = A u.
class LinearPropagator {
 public:
  /// Throws SingularMatrixError if N(-A dt) is singular (dt hits a pole of the map).
  LinearPropagator(Matrix generator, double dt, unsigned n, PropagatorKind kind = PropagatorKind::LanczosDyche,
                   PropagatorStorage storage = PropagatorStorage::Factorized);

  const Matrix& generator() const { return a_; }
  double dt() const { return dt_; }
  unsigned order() const { return n_; }
  PropagatorKind kind() const { return kind_; }
  PropagatorStorage storage() const { return storage_; }
  Eigen::Index size() const { return a_.rows(); }

  /// N(A dt) and N(-A dt) (identity for Taylor).
  const Matrix& numerator() const { return numerator_; }
  const Matrix& denominator() const { return denominator_; }
  /// Dense P.
  const Matrix& matrix() const { return p_; }

  Vector apply(const Vector& u) const;

  /// Quadrants of P for a 2N x 2N generator acting on (q, p):
  /// q' = A q + B p, p' = C q + D p.
  Matrix block_a() const;
  Matrix block_b() const;
  Matrix block_c() const;
  Matrix block_d() const;

 private:
  Matrix a_;
  double dt_;
  unsigned n_;
  PropagatorKind kind_;
  PropagatorStorage storage_;
  Matrix numerator_;
  Matrix denominator_;
  Matrix p_;
  Eigen::PartialPivLU<Matrix> lu_;
};

LinearPropagator build_propagator(const Matrix& generator, double dt, unsigned n,
                                  PropagatorStorage storage = PropagatorStorage::Factorized);

/// The explicit Taylor / Runge-Kutta propagator of order n, for comparison.
LinearPropagator build_taylor_propagator(const Matrix& generator, double dt, unsigned n);

/// Masses M (symmetric positive definite) coupled through stiffness K (symmetric).
/// H = p^T M^{-1} p / 2 + q^T K q / 2.
class OscillatorNetwork {
 public:
  OscillatorNetwork(Matrix mass, Matrix stiffness);

  /// Text format: first line N, then N rows of M, then N rows of K, whitespace separated.
  static OscillatorNetwork parse(std::istream& in);
  static OscillatorNetwork load(const std::string& path);

  Eigen::Index dim() const { return m_.rows(); }
  const Matrix& mass() const { return m_; }
  const Matrix& stiffness() const { return k_; }
  const Matrix& inverse_mass() const { return m_inv_; }
  double energy(const Vector& q, const Vector& p) const;

 private:
  Matrix m_;
  Matrix k_;
  Matrix m_inv_;
};

/// [[0, M^{-1}], [-K, 0]].
Matrix oscillator_generator(const OscillatorNetwork& net);

/// The network as a HamiltonianSystem (linear, so LD steps use the exact linear solve).
HamiltonianSystem make_coupled(const OscillatorNetwork& net);

enum class StencilScheme { CentralDifference2, CentralDifference4 };

const char* to_string(StencilScheme s);

/// Periodic method-of-lines operator L ~ -d/dx for u_t + u_x = 0.
struct MolOperator {
  std::size_t grid_points = 0;
  double dx = 0.0;
  StencilScheme scheme = StencilScheme::CentralDifference2;
  Eigen::SparseMatrix<double> L;

  Matrix dense() const { return Matrix(L); }
};

/// Throws std::invalid_argument for N < 4 (second order) or N < 5 (fourth order) or dx <= 0.
MolOperator mol_advection_operator(std::size_t grid_points, double dx,
                                   StencilScheme scheme = StencilScheme::CentralDifference2);

struct LinearTrajectory {
  double dt = 0.0;
  /// u_0 .. u_steps; only u_0 and the last state when states are not kept.
  std::vector<Vector> states;
  /// |u_nu|_2 for nu = 0..steps.
  std::vector<double> norms;
};

LinearTrajectory evolve_linear(const LinearPropagator& prop, const Vector& u0, std::size_t steps,
                               bool keep_states = true);

/// CSV `step,t,norm`, 17 significant digits.
void write_norm_csv(std::ostream& out, const LinearTrajectory& traj);

}  // namespace ldint
