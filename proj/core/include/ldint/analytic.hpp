#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ldint/jet.hpp"
#include "ldint/rational.hpp"

namespace ldint {

/// A test integrand with closed-form derivatives of every order.
struct AnalyticFunction {
  std::string name;
  /// Highest derivative order the jet recurrence supports.
  unsigned max_order = 0;
  std::function<DerivativeJet(double t, unsigned order)> jet;
  /// Reference value of the integral over [a, b], evaluated in 50-digit arithmetic.
  std::function<double(double a, double b)> integral;
  /// Power-series coefficients for polynomial integrands (exact-rational mode).
  std::optional<std::vector<Rational>> polynomial;
};

/// e^{-t^2}; derivatives via the Hermite recurrence.
AnalyticFunction gaussian_function();
AnalyticFunction exponential_function();
AnalyticFunction sine_function();
/// Polynomial sum_k c_k t^k with rational coefficients.
AnalyticFunction polynomial_function(std::string name, std::vector<Rational> coefficients);

/// Looks up gaussian, exp, sin, cubic (t^3) or quintic (t^5 - t^2 + 1). Returns nullopt for unknown names.
std::optional<AnalyticFunction> builtin_function(std::string_view name);
std::vector<std::string> builtin_function_names();

/// Exact derivative jet of a rational polynomial at a rational point.
std::vector<Rational> polynomial_jet(const std::vector<Rational>& coefficients, const Rational& t,
                                     unsigned order);

}  // namespace ldint
