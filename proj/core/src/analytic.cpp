#include "ldint/analytic.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace ldint {

namespace {

using HighPrecision = boost::multiprecision::cpp_bin_float_50;

// Rejects jet requests beyond the recurrence's supported order.
AnalyticFunction guarded(AnalyticFunction f) {
  f.jet = [name = f.name, max = f.max_order, inner = std::move(f.jet)](double t, unsigned order) {
    if (order > max) {
      throw std::invalid_argument(name + ": derivative order " + std::to_string(order) +
                                  " exceeds supported maximum " + std::to_string(max));
    }
    return inner(t, order);
  };
  return f;
}

}  // namespace

AnalyticFunction gaussian_function() {
  AnalyticFunction f;
  f.name = "gaussian";
  f.max_order = 40;
  f.jet = [](double t, unsigned order) {
    // f^(k)(t) = (-1)^k H_k(t) e^{-t^2}, physicists' Hermite polynomials.
    std::vector<double> hermite(order + 1);
    hermite[0] = 1.0;
    if (order >= 1) hermite[1] = 2.0 * t;
    for (unsigned k = 1; k < order; ++k) {
      hermite[k + 1] = 2.0 * t * hermite[k] - 2.0 * k * hermite[k - 1];
    }
    const double g = std::exp(-t * t);
    std::vector<double> values(order + 1);
    for (unsigned k = 0; k <= order; ++k) values[k] = ((k % 2 == 0) ? 1.0 : -1.0) * hermite[k] * g;
    return DerivativeJet(t, std::move(values));
  };
  f.integral = [](double a, double b) {
    const HighPrecision half_root_pi = boost::math::constants::root_pi<HighPrecision>() / 2;
    const HighPrecision value = half_root_pi * (erf(HighPrecision(b)) - erf(HighPrecision(a)));
    return value.convert_to<double>();
  };
  return guarded(std::move(f));
}

AnalyticFunction exponential_function() {
  AnalyticFunction f;
  f.name = "exp";
  f.max_order = 64;
  f.jet = [](double t, unsigned order) {
    return DerivativeJet(t, std::vector<double>(order + 1, std::exp(t)));
  };
  f.integral = [](double a, double b) {
    const HighPrecision value = exp(HighPrecision(b)) - exp(HighPrecision(a));
    return value.convert_to<double>();
  };
  return guarded(std::move(f));
}

AnalyticFunction sine_function() {
  AnalyticFunction f;
  f.name = "sin";
  f.max_order = 64;
  f.jet = [](double t, unsigned order) {
    const double s = std::sin(t);
    const double c = std::cos(t);
    const double cycle[4] = {s, c, -s, -c};
    std::vector<double> values(order + 1);
    for (unsigned k = 0; k <= order; ++k) values[k] = cycle[k % 4];
    return DerivativeJet(t, std::move(values));
  };
  f.integral = [](double a, double b) {
    const HighPrecision value = cos(HighPrecision(a)) - cos(HighPrecision(b));
    return value.convert_to<double>();
  };
  return guarded(std::move(f));
}

std::vector<Rational> polynomial_jet(const std::vector<Rational>& coefficients, const Rational& t,
                                     unsigned order) {
  std::vector<Rational> jet(order + 1, Rational(0));
  std::vector<Rational> current = coefficients;
  for (unsigned k = 0; k <= order; ++k) {
    Rational value = 0;
    for (auto it = current.rbegin(); it != current.rend(); ++it) value = value * t + *it;
    jet[k] = value;
    if (current.empty()) break;
    std::vector<Rational> next;
    for (std::size_t i = 1; i < current.size(); ++i) next.push_back(current[i] * static_cast<int>(i));
    current = std::move(next);
  }
  return jet;
}

AnalyticFunction polynomial_function(std::string name, std::vector<Rational> coefficients) {
  AnalyticFunction f;
  f.name = std::move(name);
  f.max_order = 64;
  f.polynomial = coefficients;
  f.jet = [coefficients](double t, unsigned order) {
    const auto exact = polynomial_jet(coefficients, from_double(t), order);
    std::vector<double> values;
    values.reserve(exact.size());
    for (const auto& v : exact) values.push_back(to_double(v));
    return DerivativeJet(t, std::move(values));
  };
  f.integral = [coefficients](double a, double b) {
    const Rational ra = from_double(a);
    const Rational rb = from_double(b);
    Rational sum = 0;
    Rational pa = ra;
    Rational pb = rb;
    for (std::size_t k = 0; k < coefficients.size(); ++k) {
      sum += coefficients[k] * (pb - pa) / static_cast<int>(k + 1);
      pa *= ra;
      pb *= rb;
    }
    return to_double(sum);
  };
  return guarded(std::move(f));
}

std::optional<AnalyticFunction> builtin_function(std::string_view name) {
  if (name == "gaussian") return gaussian_function();
  if (name == "exp") return exponential_function();
  if (name == "sin") return sine_function();
  if (name == "cubic") return polynomial_function("cubic", {0, 0, 0, 1});
  if (name == "quintic") return polynomial_function("quintic", {1, 0, -1, 0, 0, 1});
  return std::nullopt;
}

std::vector<std::string> builtin_function_names() { return {"gaussian", "exp", "sin", "cubic", "quintic"}; }

}  // namespace ldint
