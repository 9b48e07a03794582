#include "ldint/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ldint {

namespace {

void require_positive_order(unsigned n, const char* what) {
  if (n == 0) throw std::invalid_argument(std::string(what) + ": order n must be at least 1");
}

void require_jet_order(const DerivativeJet& jet, unsigned n, const char* which) {
  if (n > 0 && jet.order() < n - 1) {
    throw std::invalid_argument(std::string(which) + " carries derivatives up to order " +
                                std::to_string(jet.order()) + " but the rule requires order " +
                                std::to_string(n - 1));
  }
}

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw std::invalid_argument(std::string(what) + " is not finite");
}

double sign_power(unsigned k) { return (k % 2 == 0) ? 1.0 : -1.0; }

}  // namespace

const char* to_string(RuleKind kind) {
  switch (kind) {
    case RuleKind::LanczosDyche:
      return "LD";
    case RuleKind::EulerMaclaurin:
      return "EM";
    case RuleKind::Taylor:
      return "Taylor";
  }
  return "?";
}

std::vector<Rational> ld_coefficients(unsigned n) {
  require_positive_order(n, "ld_coefficients");
  std::vector<Rational> c;
  c.reserve(n);
  const BigInt n_fact = factorial(n);
  const BigInt two_n_fact = factorial(2 * n);
  for (unsigned l = 1; l <= n; ++l) {
    c.emplace_back(n_fact * factorial(2 * n - l), two_n_fact * factorial(n - l));
  }
  return c;
}

std::vector<Rational> bernoulli_numbers(unsigned n) {
  require_positive_order(n, "bernoulli_numbers");
  // Akiyama-Tanigawa; yields B_1 = +1/2.
  std::vector<Rational> work(n + 1);
  std::vector<Rational> b;
  b.reserve(n);
  for (unsigned m = 0; m <= n; ++m) {
    work[m] = Rational(1, m + 1);
    for (unsigned j = m; j >= 1; --j) work[j - 1] = Rational(j) * (work[j - 1] - work[j]);
    if (m >= 1) b.push_back(work[0]);
  }
  return b;
}

QuadratureRule::QuadratureRule(RuleKind kind, unsigned n) : kind_(kind), n_(n) {
  require_positive_order(n, "QuadratureRule");
  switch (kind) {
    case RuleKind::LanczosDyche:
      coefficients_ = ld_coefficients(n);
      break;
    case RuleKind::EulerMaclaurin:
      coefficients_ = bernoulli_numbers(n);
      break;
    case RuleKind::Taylor:
      coefficients_.assign(n, Rational(1));
      break;
  }
  exact_weights_.reserve(n);
  weights_.reserve(n);
  for (unsigned l = 1; l <= n; ++l) {
    exact_weights_.push_back(coefficients_[l - 1] / Rational(factorial(l)));
    weights_.push_back(to_double(exact_weights_.back()));
  }
}

double integrate(const QuadratureRule& rule, const DerivativeJet& jet1, const DerivativeJet& jet2, double dt) {
  if (!rule.two_point()) {
    throw std::invalid_argument("integrate: Taylor rule is one-point; pass only the left jet");
  }
  require_finite(dt, "integrate: dt");
  const unsigned n = rule.order();
  require_jet_order(jet1, n, "left jet");
  require_jet_order(jet2, n, "right jet");
  const double span = jet2.t() - jet1.t();
  const double scale = std::max({1.0, std::abs(jet1.t()), std::abs(jet2.t())});
  if (std::abs(span - dt) > 1e-12 * scale) {
    throw std::invalid_argument("integrate: dt does not match jet2.t - jet1.t");
  }
  const auto w = rule.weights();
  double sum = 0.0;
  for (unsigned l = n; l >= 1; --l) {
    const double g = jet1[l - 1] + sign_power(l - 1) * jet2[l - 1];
    sum = (sum + w[l - 1] * g) * dt;
  }
  return sum;
}

double integrate(const QuadratureRule& rule, const DerivativeJet& jet1, double dt) {
  if (rule.two_point()) {
    throw std::invalid_argument(std::string("integrate: ") + to_string(rule.kind()) +
                                " rule needs both endpoint jets");
  }
  require_finite(dt, "integrate: dt");
  const unsigned n = rule.order();
  require_jet_order(jet1, n, "left jet");
  const auto w = rule.weights();
  double sum = 0.0;
  for (unsigned l = n; l >= 1; --l) sum = (sum + w[l - 1] * jet1[l - 1]) * dt;
  return sum;
}

Rational integrate_exact(const QuadratureRule& rule, std::span<const Rational> jet1,
                         std::span<const Rational> jet2, const Rational& dt) {
  const unsigned n = rule.order();
  if (jet1.size() < n || (rule.two_point() && jet2.size() < n)) {
    throw std::invalid_argument("integrate_exact: rule requires derivatives up to order " +
                                std::to_string(n - 1));
  }
  const auto w = rule.exact_weights();
  Rational sum = 0;
  for (unsigned l = n; l >= 1; --l) {
    Rational g = jet1[l - 1];
    if (rule.two_point()) {
      if ((l - 1) % 2 == 0) {
        g += jet2[l - 1];
      } else {
        g -= jet2[l - 1];
      }
    }
    sum = (sum + w[l - 1] * g) * dt;
  }
  return sum;
}

RemainderEstimate remainder_bound(const QuadratureRule& rule, double dt, double deriv, TauPolicy policy) {
  require_finite(dt, "remainder_bound: dt");
  require_finite(deriv, "remainder_bound: derivative");
  if (policy == TauPolicy::SupremumBound && deriv < 0) {
    throw std::invalid_argument("remainder_bound: derivative bound must be non-negative");
  }
  const unsigned n = rule.order();
  RemainderEstimate est;
  est.tau_policy = policy;
  switch (rule.kind()) {
    case RuleKind::LanczosDyche: {
      const BigInt nf = factorial(n);
      est.coefficient = Rational(nf * nf, factorial(2 * n + 1) * factorial(2 * n));
      if (n % 2 == 1) est.coefficient = -est.coefficient;
      est.formula_order = static_cast<int>(2 * n + 1);
      est.derivative_order = 2 * n;
      break;
    }
    case RuleKind::EulerMaclaurin: {
      if (n % 2 != 0) {
        throw std::invalid_argument("remainder_bound: Euler-Maclaurin remainder is only defined for even n (got " +
                                    std::to_string(n) + ")");
      }
      const auto b = bernoulli_numbers(n + 2);
      est.coefficient = -b[n + 1] / Rational(factorial(n + 2));
      est.formula_order = static_cast<int>(n + 3);
      est.derivative_order = n + 2;
      break;
    }
    case RuleKind::Taylor:
      est.coefficient = Rational(BigInt(1), factorial(n + 1));
      est.formula_order = static_cast<int>(n + 1);
      est.derivative_order = n;
      break;
  }
  const double c = to_double(est.coefficient);
  const double h = std::pow(dt, est.formula_order);
  est.bound = policy == TauPolicy::SupremumBound ? std::abs(c) * std::abs(h) * deriv : c * h * deriv;
  return est;
}

TwoPointInterpolant::TwoPointInterpolant(double t1, double t2, std::vector<double> a, std::vector<double> b)
    : t1_(t1), t2_(t2), a_(std::move(a)), b_(std::move(b)) {
  if (a_.size() != b_.size() || a_.empty()) {
    throw std::invalid_argument("TwoPointInterpolant: coefficient lists must be non-empty and equal length");
  }
}

double TwoPointInterpolant::operator()(double t) const {
  const double w = (t - t1_) * (t - t2_);
  double value = 0.0;
  for (std::size_t l = a_.size(); l-- > 0;) {
    value = value * w + ((t - t2_) * a_[l] + (t - t1_) * b_[l]);
  }
  return value;
}

std::vector<double> TwoPointInterpolant::power_coefficients() const {
  const double dt = t2_ - t1_;
  const std::size_t n = a_.size();
  std::vector<double> result(2 * n, 0.0);
  // w^l in powers of h = t - t1, with w = h^2 - dt h.
  std::vector<double> w_power{1.0};
  for (std::size_t l = 0; l < n; ++l) {
    // w^l * [(h - dt) a_l + h b_l] = w^l * [(a_l + b_l) h - dt a_l]
    for (std::size_t k = 0; k < w_power.size(); ++k) {
      result[k] += -dt * a_[l] * w_power[k];
      result[k + 1] += (a_[l] + b_[l]) * w_power[k];
    }
    std::vector<double> next(w_power.size() + 2, 0.0);
    for (std::size_t k = 0; k < w_power.size(); ++k) {
      next[k + 1] += -dt * w_power[k];
      next[k + 2] += w_power[k];
    }
    w_power = std::move(next);
  }
  return result;
}

TwoPointInterpolant two_point_interpolant(const DerivativeJet& jet1, const DerivativeJet& jet2, unsigned n) {
  require_positive_order(n, "two_point_interpolant");
  require_jet_order(jet1, n, "left jet");
  require_jet_order(jet2, n, "right jet");
  const double t1 = jet1.t();
  const double t2 = jet2.t();
  if (t1 == t2) throw std::invalid_argument("two_point_interpolant: endpoints coincide");
  const double dt = t2 - t1;

  // Taylor coefficients f^(k)/k! of the running remainder at each endpoint.
  std::vector<double> left(n);
  std::vector<double> right(n);
  double k_fact = 1.0;
  for (unsigned k = 0; k < n; ++k) {
    if (k > 0) k_fact *= k;
    left[k] = jet1[k] / k_fact;
    right[k] = jet2[k] / k_fact;
  }

  std::vector<double> a(n);
  std::vector<double> b(n);
  for (unsigned l = 0; l < n; ++l) {
    // Linear part (t - t2) a_l + (t - t1) b_l interpolates the remainder at both ends.
    a[l] = -left[0] / dt;
    b[l] = right[0] / dt;
    if (l + 1 == n) break;
    const double slope = a[l] + b[l];
    // Subtract the linear part, then divide by w = (t - t1)(t - t2).
    const std::size_t m = left.size() - 1;
    std::vector<double> next_left(m);
    std::vector<double> next_right(m);
    double carry_left = 0.0;
    double carry_right = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      const double dl = left[k + 1] - (k == 0 ? slope : 0.0);
      const double dr = right[k + 1] - (k == 0 ? slope : 0.0);
      // Near t1: w = h (h - dt). Near t2: w = s (s + dt).
      carry_left = (carry_left - dl) / dt;
      carry_right = (dr - carry_right) / dt;
      next_left[k] = carry_left;
      next_right[k] = carry_right;
    }
    left = std::move(next_left);
    right = std::move(next_right);
  }
  return TwoPointInterpolant(t1, t2, std::move(a), std::move(b));
}

}  // namespace ldint
