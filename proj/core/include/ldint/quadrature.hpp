#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ldint/jet.hpp"
#include "ldint/rational.hpp"

namespace ldint {

enum class RuleKind { LanczosDyche, EulerMaclaurin, Taylor };

const char* to_string(RuleKind kind);

/// Lanczos-Dyche coefficients C_ln = n!(2n-l)! / ((2n)!(n-l)!) for l = 1..n.
std::vector<Rational> ld_coefficients(unsigned n);

/// Bernoulli numbers B_1..B_n with the B_1 = +1/2 convention.
std::vector<Rational> bernoulli_numbers(unsigned n);

/// Single-panel integration rule using endpoint derivatives up to order n-1.
///
/// All three kinds share the form
///   I = sum_{l=1..n} c_l dt^l / l! [f1^(l-1) + (-1)^(l-1) f2^(l-1)]
/// (Taylor drops the f2 term and uses c_l = 1). Coefficients are kept exactly and
/// the products c_l / l! are rounded to double once, here.
class QuadratureRule {
 public:
  QuadratureRule(RuleKind kind, unsigned n);

  static QuadratureRule lanczos_dyche(unsigned n) { return {RuleKind::LanczosDyche, n}; }
  static QuadratureRule euler_maclaurin(unsigned n) { return {RuleKind::EulerMaclaurin, n}; }
  static QuadratureRule taylor(unsigned n) { return {RuleKind::Taylor, n}; }

  RuleKind kind() const { return kind_; }
  unsigned order() const { return n_; }
  /// Whether the rule uses the right-endpoint jet.
  bool two_point() const { return kind_ != RuleKind::Taylor; }
  std::span<const Rational> coefficients() const { return coefficients_; }
  /// c_l / l!, exactly rounded; index l-1.
  std::span<const double> weights() const { return weights_; }
  /// Exact c_l / l!; index l-1.
  std::span<const Rational> exact_weights() const { return exact_weights_; }

 private:
  RuleKind kind_;
  unsigned n_;
  std::vector<Rational> coefficients_;
  std::vector<Rational> exact_weights_;
  std::vector<double> weights_;
};

/// Two-point (LD, EM) integral over [jet1.t, jet2.t]. `dt` must equal jet2.t - jet1.t.
double integrate(const QuadratureRule& rule, const DerivativeJet& jet1, const DerivativeJet& jet2, double dt);

/// One-point integral; only valid for Taylor rules.
double integrate(const QuadratureRule& rule, const DerivativeJet& jet1, double dt);

/// Same sums in exact arithmetic; jets are [f, f', ...] as rationals.
Rational integrate_exact(const QuadratureRule& rule, std::span<const Rational> jet1,
                         std::span<const Rational> jet2, const Rational& dt);

enum class TauPolicy {
  /// `deriv` is the signed derivative sampled at the interval midpoint; the estimate is signed.
  Midpoint,
  /// `deriv` is a non-negative bound on |f^(k)| over the interval; the bound is non-negative.
  SupremumBound,
};

struct RemainderEstimate {
  /// Power of dt in the remainder term.
  int formula_order = 0;
  /// Signed coefficient multiplying dt^formula_order f^(k)(tau).
  Rational coefficient;
  TauPolicy tau_policy = TauPolicy::SupremumBound;
  double bound = 0.0;
  /// Derivative order k the remainder depends on.
  unsigned derivative_order = 0;
};

/// Remainder of the rule: LD (-1)^n n!^2/((2n+1)!(2n)!) dt^(2n+1) f^(2n);
/// EM (even n only) -B_(n+2)/(n+2)! dt^(n+3) f^(n+2); Taylor dt^(n+1)/(n+1)! f^(n).
RemainderEstimate remainder_bound(const QuadratureRule& rule, double dt, double deriv,
                                  TauPolicy policy = TauPolicy::SupremumBound);

/// Hermite interpolant matching two jets to order n-1, in two-point Taylor form
///   P(t) = sum_{l=0}^{n-1} w(t)^l [(t - t2) a_l + (t - t1) b_l],  w(t) = (t - t1)(t - t2).
class TwoPointInterpolant {
 public:
  TwoPointInterpolant(double t1, double t2, std::vector<double> a, std::vector<double> b);

  double t1() const { return t1_; }
  double t2() const { return t2_; }
  unsigned order() const { return static_cast<unsigned>(a_.size()); }
  std::span<const double> a_coeffs() const { return a_; }
  std::span<const double> b_coeffs() const { return b_; }

  double operator()(double t) const;
  /// Monomial coefficients of P in powers of (t - t1).
  std::vector<double> power_coefficients() const;

 private:
  double t1_;
  double t2_;
  std::vector<double> a_;
  std::vector<double> b_;
};

TwoPointInterpolant two_point_interpolant(const DerivativeJet& jet1, const DerivativeJet& jet2, unsigned n);

}  // namespace ldint
