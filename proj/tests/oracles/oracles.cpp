#include "oracles.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace oracle {

using big = boost::multiprecision::cpp_bin_float_50;

namespace {

template <class F>
double kronrod(F f, double a, double b) {
  if (a == b) return 0.0;
  const big r = boost::math::quadrature::gauss_kronrod<big, 61>::integrate(f, big(a), big(b), 12, big("1e-45"));
  return static_cast<double>(r);
}

}  // namespace

double gaussian_integral(double a, double b) {
  return kronrod([](const big& t) { return big(exp(-t * t)); }, a, b);
}

double reference_integral(const char* name, double a, double b) {
  const std::string n = name;
  if (n == "gaussian") return gaussian_integral(a, b);
  if (n == "exp") return kronrod([](const big& t) { return big(exp(t)); }, a, b);
  if (n == "sin") return kronrod([](const big& t) { return big(sin(t)); }, a, b);
  throw std::invalid_argument("reference_integral: unknown function " + n);
}

std::vector<long double> hermite_coefficients(double t1, double t2, const std::vector<double>& f1,
                                              const std::vector<double>& f2) {
  const std::size_t n = f1.size();
  const std::size_t m = 2 * n;
  const long double h = static_cast<long double>(t2) - t1;
  // Row for the k-th derivative at offset x of sum_j c_j x^j.
  std::vector<std::vector<long double>> a(m, std::vector<long double>(m + 1, 0.0L));
  for (std::size_t k = 0; k < n; ++k) {
    for (int side = 0; side < 2; ++side) {
      auto& row = a[2 * k + side];
      const long double x = side == 0 ? 0.0L : h;
      for (std::size_t j = k; j < m; ++j) {
        long double falling = 1.0L;
        for (std::size_t i = 0; i < k; ++i) falling *= static_cast<long double>(j - i);
        row[j] = falling * std::pow(x, static_cast<long double>(j - k));
      }
      row[m] = side == 0 ? f1[k] : f2[k];
    }
  }
  // Gaussian elimination with partial pivoting.
  for (std::size_t c = 0; c < m; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < m; ++r) {
      if (std::fabs(a[r][c]) > std::fabs(a[piv][c])) piv = r;
    }
    std::swap(a[c], a[piv]);
    for (std::size_t r = 0; r < m; ++r) {
      if (r == c) continue;
      const long double f = a[r][c] / a[c][c];
      for (std::size_t j = c; j <= m; ++j) a[r][j] -= f * a[c][j];
    }
  }
  std::vector<long double> coeffs(m);
  for (std::size_t j = 0; j < m; ++j) coeffs[j] = a[j][m] / a[j][j];
  return coeffs;
}

std::pair<double, double> sho_exact(double q0, double p0, double t) {
  return {q0 * std::cos(t) + p0 * std::sin(t), -q0 * std::sin(t) + p0 * std::cos(t)};
}

std::pair<double, double> damped_exact(double gamma, double q0, double p0, double t) {
  if (!(gamma < 2.0)) throw std::invalid_argument("damped_exact: underdamped only");
  // q = e^{-gamma t/2} (A cos w t + B sin w t); q'(0) = p0.
  const double w = std::sqrt(1.0 - 0.25 * gamma * gamma);
  const double a = q0;
  const double b = (p0 + 0.5 * gamma * q0) / w;
  const double decay = std::exp(-0.5 * gamma * t);
  const double c = std::cos(w * t), s = std::sin(w * t);
  const double q = decay * (a * c + b * s);
  const double dq = decay * (-0.5 * gamma * (a * c + b * s) + w * (-a * s + b * c));
  return {q, std::exp(gamma * t) * dq};
}

double bisect(const std::function<double(double)>& f, double lo, double hi, double tol) {
  double flo = f(lo);
  if (flo * f(hi) > 0) throw std::invalid_argument("bisect: no sign change");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace oracle
