#include "ldint/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

#include "ldint/error.hpp"

namespace ldint {

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string join(const Vector& v) {
  std::string s;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) s += ';';
    s += fmt(v[i]);
  }
  return s;
}

}  // namespace

void DiagnosticSeries::append(DiagnosticRecord record) {
  if (!records_.empty() && record.nu <= records_.back().nu) {
    throw std::invalid_argument("DiagnosticSeries: step index must increase");
  }
  records_.push_back(std::move(record));
}

double DiagnosticSeries::max_dE_rel() const {
  double m = 0.0;
  for (const auto& r : records_) m = std::max(m, r.dE_rel);
  return m;
}

int DiagnosticSeries::max_solver_iterations() const {
  int m = 0;
  for (const auto& r : records_) m = std::max(m, r.solver_iterations);
  return m;
}

std::vector<double> DiagnosticSeries::dE_rel_values() const {
  std::vector<double> v;
  v.reserve(records_.size());
  for (const auto& r : records_) v.push_back(r.dE_rel);
  return v;
}

std::vector<double> DiagnosticSeries::C_rel_values() const {
  std::vector<double> v;
  for (const auto& r : records_) {
    if (r.C_rel) v.push_back(*r.C_rel);
  }
  return v;
}

void write_csv(std::ostream& out, const DiagnosticSeries& series) {
  out << "nu,t,q,p,E,dE_rel,J,C_rel\n";
  for (const auto& r : series.records()) {
    out << r.nu << ',' << fmt(r.t) << ',' << join(r.q) << ',' << join(r.p) << ',' << fmt(r.energy) << ','
        << fmt(r.dE_rel) << ',' << (r.jacobian ? fmt(*r.jacobian) : "") << ',' << (r.C_rel ? fmt(*r.C_rel) : "")
        << '\n';
  }
}

double energy(const HamiltonianSystem& sys, const PhaseState& state) {
  if (!sys.hamiltonian) throw CapabilityError("energy: system '" + sys.name + "' has no Hamiltonian evaluator");
  return sys.hamiltonian(state.q, state.p, state.t);
}

double relative_deviation(double value, double reference) {
  const double d = std::abs(value - reference);
  return reference == 0.0 ? d : d / std::abs(reference);
}

double damped_invariant(double gamma, const PhaseState& s) {
  return 0.5 * s.p.squaredNorm() * std::exp(-gamma * s.t) + 0.5 * gamma * s.p.dot(s.q) +
         0.5 * s.q.squaredNorm() * std::exp(gamma * s.t);
}

double map_jacobian(const StateMap& step, const PhaseState& state, std::optional<double> epsilon) {
  if (epsilon && !(*epsilon > 0.0)) throw std::invalid_argument("map_jacobian: epsilon must be positive");
  const double base = epsilon ? *epsilon : std::cbrt(std::numeric_limits<double>::epsilon());
  const Eigen::Index n = state.q.size();
  Matrix jac(2 * n, 2 * n);

  auto output = [&](const PhaseState& s) {
    const PhaseState out = step(s);
    Vector u(2 * n);
    u << out.q, out.p;
    return u;
  };

  for (Eigen::Index k = 0; k < 2 * n; ++k) {
    PhaseState plus = state;
    PhaseState minus = state;
    double& xp = k < n ? plus.q[k] : plus.p[k - n];
    double& xm = k < n ? minus.q[k] : minus.p[k - n];
    const double x = xp;
    const double h = base * std::max(1.0, std::abs(x));
    xp = x + h;
    xm = x - h;
    // Use the actually representable spacing.
    const double width = xp - xm;
    jac.col(k) = (output(plus) - output(minus)) / width;
  }
  return jac.determinant();
}

OrderFit convergence_order(std::span<const double> errors, std::span<const double> dts) {
  if (errors.size() != dts.size()) throw std::invalid_argument("convergence_order: size mismatch");
  if (errors.size() < 3) throw std::invalid_argument("convergence_order: need at least 3 pairs");
  for (double h : dts) {
    if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("convergence_order: dts must be positive");
  }
  if (std::adjacent_find(dts.begin(), dts.end(), std::not_equal_to<>()) == dts.end()) {
    throw std::invalid_argument("convergence_order: dts must not all be equal");
  }
  OrderFit fit;
  for (double e : errors) {
    if (!(e > 0.0)) {
      fit.saturated = true;
      return fit;
    }
  }
  const double m = static_cast<double>(errors.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    const double x = std::log(dts[i]);
    const double y = std::log(errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = m * sxx - sx * sx;
  fit.order = (m * sxy - sx * sy) / denom;
  return fit;
}

}  // namespace ldint
