// Acceptance checks. Usage: ldint_acceptance [criterion...]; no argument runs all ten.
// Prints one PASS/FAIL line per criterion and exits non-zero if any fails.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "ldint/ldint.hpp"
#include "oracles.hpp"

using namespace ldint;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += "[fail] ";
    }
    detail += what + "; ";
  }
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

std::string fix(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

double max_of(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
  return *std::max_element(v.begin() + static_cast<long>(lo), v.begin() + static_cast<long>(hi));
}

double min_of(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
  return *std::min_element(v.begin() + static_cast<long>(lo), v.begin() + static_cast<long>(hi));
}

// Block maxima of v[1..] over `blocks` equal blocks.
std::vector<double> block_maxima(const std::vector<double>& v, std::size_t blocks) {
  const std::size_t len = (v.size() - 1) / blocks;
  std::vector<double> out;
  for (std::size_t b = 0; b < blocks; ++b) out.push_back(max_of(v, 1 + b * len, 1 + (b + 1) * len));
  return out;
}

bool strictly_increasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] > v[i - 1])) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

Outcome coefficient_exactness() {
  Outcome o;
  const std::vector<std::vector<Rational>> published = {
      {Rational(1, 2)},
      {Rational(1, 2), Rational(1, 12)},
      {Rational(1, 2), Rational(1, 10), Rational(1, 120)},
      {Rational(1, 2), Rational(3, 28), Rational(1, 84), Rational(1, 1680)},
      {Rational(1, 2), Rational(1, 9), Rational(1, 72), Rational(1, 1008), Rational(1, 30240)},
  };
  for (unsigned n = 1; n <= published.size(); ++n) {
    const QuadratureRule rule = QuadratureRule::lanczos_dyche(n);
    const auto w = rule.exact_weights();
    const auto c = ld_coefficients(n);
    bool same = w.size() == n && c.size() == n;
    for (unsigned l = 1; same && l <= n; ++l) {
      BigInt lf = 1;
      for (unsigned k = 2; k <= l; ++k) lf *= k;
      same = w[l - 1] == published[n - 1][l - 1] && c[l - 1] / Rational(lf) == published[n - 1][l - 1];
    }
    o.require(same, "n=" + std::to_string(n) + (same ? " exact" : " mismatch"));
  }
  return o;
}

Outcome fig1_reproduction() {
  Outcome o;
  const auto g = builtin_function("gaussian");
  const double a = -0.5, b = 0.5, dt = 1.0;
  const double exact = oracle::gaussian_integral(a, b);
  constexpr unsigned kMax = 16;
  std::vector<double> ld(kMax + 1), em(kMax + 1), ty(kMax + 1);
  for (unsigned n = 1; n <= kMax; ++n) {
    const DerivativeJet j1 = g->jet(a, n - 1);
    const DerivativeJet j2 = g->jet(b, n - 1);
    ld[n] = std::abs(integrate(QuadratureRule::lanczos_dyche(n), j1, j2, dt) - exact);
    em[n] = std::abs(integrate(QuadratureRule::euler_maclaurin(n), j1, j2, dt) - exact);
    ty[n] = std::abs(integrate(QuadratureRule::taylor(n), j1, dt) - exact);
  }
  // Monotone decrease until the 1e-15 floor.
  bool monotone = true;
  unsigned reach = 0;
  for (unsigned n = 1; n <= kMax; ++n) {
    if (ld[n] < 1e-15) {
      reach = n;
      break;
    }
    if (n > 1 && !(ld[n] < ld[n - 1])) monotone = false;
  }
  o.require(monotone, "LD monotone to floor");
  o.require(reach != 0 && reach <= 10,
            "LD < 1e-15 first at n=" + (reach ? std::to_string(reach) : std::string("none")) + " (need <= 10; LD(10)=" +
                sci(ld[10]) + ", LD(11)=" + sci(ld[11]) + ", LD(12)=" + sci(ld[12]) + ")");
  bool taylor_slow = true, em_behind = true;
  for (unsigned n = 3; n <= 10; ++n) {
    taylor_slow = taylor_slow && std::log10(ty[n]) >= std::log10(ld[n]) + 1.0;
    em_behind = em_behind && std::log10(em[n]) >= std::log10(ld[n]) + 1.0;
  }
  o.require(taylor_slow, "Taylor >= 10x LD for n=3..10 (T(10)=" + sci(ty[10]) + ")");
  o.require(em_behind, "EM >= 10x LD for n=3..10 (EM(10)=" + sci(em[10]) + ")");
  return o;
}

Outcome superconvergence() {
  Outcome o;
  const auto f = builtin_function("exp");
  const double length = 2.0;
  const double ld_h0[] = {0.2, 0.5, 1.0, 2.0};
  for (unsigned n = 1; n <= 4; ++n) {
    const QuadratureRule rule = QuadratureRule::lanczos_dyche(n);
    const double exact = oracle::reference_integral("exp", 0.0, length);
    std::vector<double> errs, hs;
    for (int k = 0; k < 4; ++k) {
      const double h = ld_h0[n - 1] / std::ldexp(1.0, k);
      const int panels = static_cast<int>(std::lround(length / h));
      double sum = 0.0;
      for (int i = 0; i < panels; ++i) {
        sum += integrate(rule, f->jet(i * h, n - 1), f->jet((i + 1) * h, n - 1), h);
      }
      errs.push_back(std::abs(sum - exact));
      hs.push_back(h);
    }
    const OrderFit fit = convergence_order(errs, hs);
    const double expect = 2.0 * n;
    o.require(!fit.saturated && std::abs(fit.order - expect) <= 0.2, "LD" + std::to_string(n) + " " + fix(fit.order));
  }
  for (unsigned n = 1; n <= 4; ++n) {
    const QuadratureRule rule = QuadratureRule::taylor(n);
    std::vector<double> errs, hs;
    for (int k = 0; k < 4; ++k) {
      const double h = 0.4 / std::ldexp(1.0, k);
      errs.push_back(std::abs(integrate(rule, f->jet(0.0, n - 1), h) - oracle::reference_integral("exp", 0.0, h)));
      hs.push_back(h);
    }
    const OrderFit fit = convergence_order(errs, hs);
    o.require(!fit.saturated && std::abs(fit.order - (n + 1.0)) <= 0.2, "T" + std::to_string(n) + " " + fix(fit.order));
  }
  return o;
}

Outcome a_stability() {
  Outcome o;
  for (unsigned n = 1; n <= 6; ++n) {
    const AStabilityReport r = check_a_stability(n, 100000, 1234 + n);
    o.require(r.a_stable && r.samples >= 100000, "n=" + std::to_string(n) + " max|z|-1=" + sci(r.worst_abs - 1.0));
  }
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> expo(-3.0, 3.0);
  double worst = 0.0;
  for (unsigned n = 1; n <= 6; ++n) {
    const IncrementFunction f(IncrementKind::LanczosDyche, n);
    for (int k = 0; k < 1000; ++k) {
      const double theta = (k % 2 ? 1.0 : -1.0) * std::pow(10.0, expo(rng));
      worst = std::max(worst, std::abs(std::abs(f({0.0, theta})) - 1.0));
    }
  }
  o.require(worst <= 1e-13, "imag axis ||z|-1| max " + sci(worst));

  const IncrementFunction rk1(IncrementKind::RungeKutta, 1);
  const StabilityMap map = scan_region(rk1, {-5, 5}, {-5, 5}, 401, 401);
  std::size_t wrong = 0, near = 0;
  for (std::size_t i = 0; i < map.im_points; ++i) {
    for (std::size_t j = 0; j < map.re_points; ++j) {
      const double disk = std::hypot(1.0 + map.re_at(j), map.im_at(i));
      if (std::abs(disk - 1.0) <= 1e-10) {
        ++near;
        continue;
      }
      if (map.stable_mask[map.index(i, j)] != (disk < 1.0)) ++wrong;
    }
  }
  o.require(wrong == 0, "RK1 disk misclassified " + std::to_string(wrong) + " (" + std::to_string(near) +
                            " boundary cells within 1e-10)");
  return o;
}

Outcome sho_conservation() {
  Outcome o;
  const HamiltonianSystem sho = make_sho();
  const std::size_t steps = static_cast<std::size_t>(std::lround(1000 * 2 * std::numbers::pi / 0.1));
  for (Method m : {Method::LD2, Method::LD4}) {
    StepperConfig c{m, 0.1};
    const double e = evolve(sho, c, PhaseState::scalar(1, 0), steps).max_dE_rel();
    o.require(e < 1e-12, std::string(to_string(m)) + " max " + sci(e));
  }
  for (Method m : {Method::RK2, Method::RK4}) {
    StepperConfig c{m, 0.1};
    const auto v = evolve(sho, c, PhaseState::scalar(1, 0), steps).dE_rel_values();
    bool mono = true;
    for (std::size_t k = 2; k < v.size(); ++k) mono = mono && v[k] >= v[k - 1];
    o.require(v.back() > 1e-8 && mono, std::string(to_string(m)) + " final " + sci(v.back()) +
                                           (mono ? " monotone" : " not monotone"));
  }
  return o;
}

Outcome symplecticity() {
  Outcome o;
  const HamiltonianSystem sho = make_sho();
  const PhaseState s = PhaseState::scalar(0.6, -0.3);
  for (double dt : {0.1, 0.75}) {
    for (Method m : {Method::LD2, Method::LD4, Method::VerletQ, Method::VerletP}) {
      const double j = map_jacobian([&](const PhaseState& x) { return apply(x, increment(sho, x, dt, m), dt); }, s);
      o.require(std::abs(j - 1.0) <= 1e-6, std::string(to_string(m)) + "@" + fix(dt) + " " + sci(j - 1.0));
    }
  }
  const double dt = 0.75;
  const double j = map_jacobian([&](const PhaseState& x) { return step_euler(sho, x, dt); }, s);
  o.require(j > 1.0 + dt * dt / 2.0 * 0.9, "euler J=" + fix(j));
  return o;
}

// Shared shape check for the pendulum and damped runs: LD bounded and oscillatory,
// RK block maxima strictly increasing and ending above the same-order LD band.
void band_checks(Outcome& o, const std::vector<double>& ld2, const std::vector<double>& ld4,
                 const std::vector<double>& rk2, const std::vector<double>& rk4) {
  const std::size_t n = ld2.size() - 1;
  double band[2];
  int idx = 0;
  for (const auto* v : {&ld2, &ld4}) {
    const double first = max_of(*v, 1, n / 2 + 1);
    const double second = max_of(*v, n / 2 + 1, n + 1);
    const double low = min_of(*v, n / 2 + 1, n + 1);
    band[idx] = std::max(first, second);
    o.require(second <= 1.05 * first && low < 0.1 * second,
              std::string(idx ? "LD4" : "LD2") + " band " + sci(band[idx]) + " halves ratio " + fix(second / first));
    ++idx;
  }
  o.require(band[1] < band[0], "LD4 band < LD2 band");
  idx = 0;
  for (const auto* v : {&rk2, &rk4}) {
    const auto blocks = block_maxima(*v, 10);
    const bool mono = strictly_increasing(blocks);
    o.require(mono && v->back() > band[idx],
              std::string(idx ? "RK4" : "RK2") + " final " + sci(v->back()) + (mono ? " monotone" : " not monotone"));
    ++idx;
  }
}

Outcome pendulum() {
  Outcome o;
  const HamiltonianSystem sys = make_pendulum();
  std::vector<std::vector<double>> series;
  int iters = 0;
  for (Method m : {Method::LD2, Method::LD4, Method::RK2, Method::RK4}) {
    const DiagnosticSeries s = evolve(sys, StepperConfig{m, 0.1}, PhaseState::scalar(1.0, 0.0), 10000);
    series.push_back(s.dE_rel_values());
    iters = std::max(iters, s.max_solver_iterations());
  }
  band_checks(o, series[0], series[1], series[2], series[3]);
  o.require(iters <= 3, "Newton iterations max " + std::to_string(iters));
  return o;
}

Outcome damped() {
  Outcome o;
  const double gamma = 1e-4;
  const HamiltonianSystem sys = make_damped(gamma);
  std::vector<std::vector<double>> series;
  for (Method m : {Method::LD2, Method::LD4, Method::RK2, Method::RK4}) {
    series.push_back(evolve(sys, StepperConfig{m, 0.1}, PhaseState::scalar(1.0, 0.0), 10000).C_rel_values());
  }
  band_checks(o, series[0], series[1], series[2], series[3]);
  double worst = 0.0;
  for (double g : {1e-4, 0.05, 0.3}) {
    const double c0 = damped_invariant(g, PhaseState::scalar(1.0, 0.0));
    for (double t : {0.5, 3.0, 17.0, 100.0, 1000.0}) {
      const auto [q, p] = oracle::damped_exact(g, 1.0, 0.0, t);
      worst = std::max(worst, relative_deviation(damped_invariant(g, PhaseState::scalar(q, p, t)), c0));
    }
  }
  o.require(worst <= 1e-10, "C on exact trajectories " + sci(worst));
  return o;
}

Outcome propagator_identities() {
  Outcome o;
  double scalar = 0.0;
  for (unsigned n = 1; n <= 6; ++n) {
    const IncrementFunction z(IncrementKind::LanczosDyche, n);
    for (double lambda : {-3.0, -0.5, 0.3, 1.1}) {
      for (double dt : {0.1, 0.75}) {
        const double p = build_propagator(Matrix::Constant(1, 1, lambda), dt, n).matrix()(0, 0);
        const double ref = z({lambda * dt, 0.0}).real();
        scalar = std::max(scalar, std::abs(p - ref) / std::abs(ref));
      }
    }
  }
  o.require(scalar <= 1e-14, "1x1 vs zeta " + sci(scalar));

  Matrix a(2, 2);
  a << 0, 1, -1, 0;
  double det = 0.0, inv = 0.0;
  for (unsigned n = 1; n <= 6; ++n) {
    for (double dt : {0.1, 0.75, 2.0}) {
      const auto fwd = build_propagator(a, dt, n);
      det = std::max(det, std::abs(fwd.matrix().determinant() - 1.0));
      const auto back = build_propagator(a, -dt, n);
      inv = std::max(inv, (fwd.matrix() * back.matrix() - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff());
    }
  }
  o.require(det <= 1e-13, "SHO det-1 " + sci(det));

  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal;
  const int n_osc = 6;
  Matrix r(n_osc, n_osc), s(n_osc, n_osc);
  for (int i = 0; i < n_osc; ++i)
    for (int j = 0; j < n_osc; ++j) {
      r(i, j) = normal(rng);
      s(i, j) = normal(rng);
    }
  const Matrix mass = Matrix::Identity(n_osc, n_osc) + 0.1 * r * r.transpose();
  const Matrix stiff = Matrix::Identity(n_osc, n_osc) + 0.2 * s * s.transpose();
  const OscillatorNetwork net(mass, stiff);
  const Matrix gen = oscillator_generator(net);
  for (double dt : {0.1, 0.5}) {
    const auto fwd = build_propagator(gen, dt, 2);
    const auto back = build_propagator(gen, -dt, 2);
    inv = std::max(inv, (fwd.matrix() * back.matrix() - Matrix::Identity(2 * n_osc, 2 * n_osc)).cwiseAbs().maxCoeff());
  }
  o.require(inv <= 1e-12, "P(dt)P(-dt)-I " + sci(inv));

  const auto prop = build_propagator(gen, 0.1, 2);
  Vector u(2 * n_osc);
  for (int i = 0; i < 2 * n_osc; ++i) u[i] = normal(rng);
  double drift = 0.0;
  for (int k = 0; k < 200; ++k) {
    const double e0 = net.energy(u.head(n_osc), u.tail(n_osc));
    u = prop.apply(u);
    drift = std::max(drift, relative_deviation(net.energy(u.head(n_osc), u.tail(n_osc)), e0));
  }
  o.require(drift <= 1e-13, "network energy per step " + sci(drift));
  return o;
}

Outcome cfl_free() {
  Outcome o;
  const std::size_t n = 64;
  const double dx = 1.0 / n;
  const double dt = 4.0 * dx;
  const MolOperator op = mol_advection_operator(n, dx);
  Vector u0(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = (static_cast<double>(i) + 0.5) * dx - 0.5;
    u0[static_cast<Eigen::Index>(i)] = std::exp(-x * x / (2 * 0.05 * 0.05));
  }
  const auto ld = evolve_linear(build_propagator(op.dense(), dt, 2), u0, 1000, false);
  double drift = 0.0;
  for (double v : ld.norms) drift = std::max(drift, relative_deviation(v, ld.norms.front()));
  o.require(drift < 1e-10, "LD2 norm drift " + sci(drift));

  const auto rk = evolve_linear(build_taylor_propagator(op.dense(), dt, 2), u0, 1000, false);
  double peak = 0.0;
  for (double v : rk.norms) {
    if (std::isfinite(v)) peak = std::max(peak, v);
  }
  const bool blown = peak > 1e3 * rk.norms.front() || !std::isfinite(rk.norms.back());
  o.require(blown, "RK2 norm growth " + sci(peak / rk.norms.front()));
  return o;
}

struct Criterion {
  int id;
  const char* name;
  Outcome (*run)();
};

const Criterion kCriteria[] = {
    {1, "coefficient exactness", coefficient_exactness},
    {2, "quadrature error comparison (gaussian, single step)", fig1_reproduction},
    {3, "superconvergence order", superconvergence},
    {4, "A-stability", a_stability},
    {5, "SHO energy conservation", sho_conservation},
    {6, "symplecticity", symplecticity},
    {7, "pendulum energy band", pendulum},
    {8, "damped oscillator invariant", damped},
    {9, "linear propagator identities", propagator_identities},
    {10, "CFL-free advection", cfl_free},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));
  int failures = 0;
  for (const auto& c : kCriteria) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.id) == wanted.end()) continue;
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    std::printf("criterion %2d %s: %s | %s\n", c.id, out.pass ? "PASS" : "FAIL", c.name, out.detail.c_str());
    if (!out.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
