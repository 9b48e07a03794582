#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <gtest/gtest.h>

#include "ldint/error.hpp"
#include "ldint/linear_propagator.hpp"
#include "ldint/stability.hpp"

using namespace ldint;

TEST(Propagator, ZeroGeneratorIsIdentity) {
  const auto p = build_propagator(Matrix::Zero(3, 3), 0.5, 3);
  EXPECT_TRUE(p.matrix().isApprox(Matrix::Identity(3, 3)));
}

TEST(Propagator, ShoFirstOrderEntries) {
  Matrix a(2, 2);
  a << 0, 1, -1, 0;
  const auto p = build_propagator(a, 0.75, 1);
  const double diag = 1 - 0.28125 / 1.140625, off = 0.75 / 1.140625;
  EXPECT_NEAR(p.matrix()(0, 0), diag, 1e-15);
  EXPECT_NEAR(p.matrix()(1, 1), diag, 1e-15);
  EXPECT_NEAR(p.matrix()(0, 1), off, 1e-15);
  EXPECT_NEAR(p.matrix()(1, 0), -off, 1e-15);
  EXPECT_NEAR(p.block_b()(0, 0), off, 1e-15);
}

TEST(Propagator, EigenvaluesFollowIncrementFunction) {
  // Symmetric A: real spectrum from an independent eigen solver.
  Matrix a(3, 3);
  a << -2, 0.5, 0, 0.5, -1, 0.3, 0, 0.3, -0.4;
  const double dt = 0.9;
  for (unsigned n : {1u, 2u, 3u}) {
    const auto p = build_propagator(a, dt, n);
    const Eigen::SelfAdjointEigenSolver<Matrix> ea(a);
    Eigen::EigenSolver<Matrix> ep(p.matrix());
    std::vector<double> got, want;
    const IncrementFunction f(IncrementKind::LanczosDyche, n);
    for (int i = 0; i < 3; ++i) {
      got.push_back(ep.eigenvalues()[i].real());
      want.push_back(f({ea.eigenvalues()[i] * dt, 0}).real());
    }
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(got[i], want[i], 1e-13);
  }
}

TEST(Propagator, SkewGeneratorGivesOrthogonalMap) {
  const auto op = mol_advection_operator(16, 0.1, StencilScheme::CentralDifference4);
  const auto p = build_propagator(op.dense(), 0.7, 2);
  EXPECT_TRUE((p.matrix().transpose() * p.matrix()).isApprox(Matrix::Identity(16, 16), 1e-13));
}

TEST(Propagator, PoleRaises) {
  EXPECT_THROW(build_propagator(Matrix::Constant(1, 1, 2.0), 1.0, 1), SingularMatrixError);
}

TEST(Propagator, StorageModesAgree) {
  const auto op = mol_advection_operator(12, 0.2);
  const Vector u = Vector::LinSpaced(12, -1, 1);
  const auto f = build_propagator(op.dense(), 0.5, 3, PropagatorStorage::Factorized);
  const auto d = build_propagator(op.dense(), 0.5, 3, PropagatorStorage::Dense);
  EXPECT_LT((f.apply(u) - d.apply(u)).lpNorm<Eigen::Infinity>(), 1e-14);
}

TEST(Propagator, TaylorKindIsTruncatedExponential) {
  Matrix a(2, 2);
  a << 0, 1, -1, 0;
  const auto p = build_taylor_propagator(a, 0.1, 2);
  Matrix expect = Matrix::Identity(2, 2) + 0.1 * a + 0.005 * a * a;
  EXPECT_TRUE(p.matrix().isApprox(expect, 1e-15));
}

TEST(Oscillators, UnitOscillatorGenerator) {
  const OscillatorNetwork net(Matrix::Identity(1, 1), Matrix::Identity(1, 1));
  Matrix expect(2, 2);
  expect << 0, 1, -1, 0;
  EXPECT_EQ(oscillator_generator(net), expect);
}

TEST(Oscillators, CoupledSpectrumImaginary) {
  std::istringstream in("2\n1 0\n0 1\n2 -1\n-1 2\n");
  const auto net = OscillatorNetwork::parse(in);
  Eigen::EigenSolver<Matrix> es(oscillator_generator(net));
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(es.eigenvalues()[i].real(), 0.0, 1e-12);
  EXPECT_NEAR(net.energy(Vector::Ones(2), Vector::Zero(2)), 1.0, 1e-15);
}

TEST(Oscillators, RejectsBadInput) {
  std::istringstream short_in("2\n1 0\n0 1\n2 -1\n");
  EXPECT_THROW(OscillatorNetwork::parse(short_in), std::invalid_argument);
  Matrix k(2, 2);
  k << 2, -1, 0, 2;
  EXPECT_THROW(OscillatorNetwork(Matrix::Identity(2, 2), k), std::invalid_argument);
  EXPECT_THROW(OscillatorNetwork(Matrix::Identity(2, 2), Matrix::Identity(3, 3)), std::invalid_argument);
}

TEST(Mol, SecondOrderStencil) {
  const auto op = mol_advection_operator(4, 1.0);
  const Matrix d = op.dense();
  // Row 0: (0, -1/2, 0, 1/2), circulant.
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(d(i, i), 0.0);
    EXPECT_EQ(d(i, (i + 1) % 4), -0.5);
    EXPECT_EQ(d(i, (i + 3) % 4), 0.5);
    EXPECT_EQ(d(i, (i + 2) % 4), 0.0);
  }
  EXPECT_TRUE((d + d.transpose()).isZero());
}

TEST(Mol, SizeChecks) {
  EXPECT_THROW(mol_advection_operator(3, 1.0), std::invalid_argument);
  EXPECT_THROW(mol_advection_operator(4, 1.0, StencilScheme::CentralDifference4), std::invalid_argument);
  EXPECT_THROW(mol_advection_operator(8, 0.0), std::invalid_argument);
}

TEST(Mol, SpatialOrder) {
  // Sine wave advected one unit with a tiny time step; error is the stencil's.
  for (auto [scheme, order] : {std::pair{StencilScheme::CentralDifference2, 2.0},
                               std::pair{StencilScheme::CentralDifference4, 4.0}}) {
    std::vector<double> errs;
    for (std::size_t n : {16u, 32u}) {
      const double dx = 2 * std::numbers::pi / n, dt = 0.05;
      const auto op = mol_advection_operator(n, dx, scheme);
      Vector u(n), exact(n);
      for (std::size_t j = 0; j < n; ++j) {
        u[j] = std::sin(j * dx);
        exact[j] = std::sin(j * dx - 1.0);
      }
      const auto traj = evolve_linear(build_propagator(op.dense(), dt, 4), u, 20, false);
      errs.push_back((traj.states.back() - exact).lpNorm<Eigen::Infinity>());
    }
    EXPECT_NEAR(std::log2(errs[0] / errs[1]), order, 0.2);
  }
}

TEST(Mol, CflFreeVersusExplicit) {
  const std::size_t n = 64;
  const double dx = 1.0 / n, dt = 4 * dx;
  const auto op = mol_advection_operator(n, dx);
  Vector u(n);
  for (std::size_t j = 0; j < n; ++j) u[j] = std::exp(-50 * std::pow(j * dx - 0.5, 2));
  const auto ld = evolve_linear(build_propagator(op.dense(), dt, 2), u, 1000, false);
  EXPECT_LT(std::abs(ld.norms.back() / ld.norms.front() - 1), 1e-10);
  const auto rk = evolve_linear(build_taylor_propagator(op.dense(), dt, 2), u, 100, false);
  EXPECT_GT(rk.norms.back(), 1e3 * rk.norms.front());
}

TEST(Mol, ZeroStepsAndCsv) {
  const auto op = mol_advection_operator(8, 0.5);
  const Vector u = Vector::Ones(8);
  const auto traj = evolve_linear(build_propagator(op.dense(), 0.5, 2), u, 0);
  ASSERT_EQ(traj.states.size(), 1u);
  EXPECT_EQ(traj.states[0], u);
  std::ostringstream os;
  write_norm_csv(os, traj);
  EXPECT_EQ(os.str().substr(0, 12), "step,t,norm\n");
}
