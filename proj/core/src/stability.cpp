#include "ldint/stability.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

#include "ldint/error.hpp"
#include "ldint/quadrature.hpp"

namespace ldint {

namespace {

std::complex<double> horner(const std::vector<double>& c, std::complex<double> x) {
  std::complex<double> acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double horner_abs(const std::vector<double>& c, double r) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * r + std::abs(*it);
  return acc;
}

}  // namespace

const char* to_string(IncrementKind kind) {
  switch (kind) {
    case IncrementKind::Exact:
      return "exact";
    case IncrementKind::RungeKutta:
      return "rk";
    case IncrementKind::LanczosDyche:
      return "ld";
  }
  return "?";
}

IncrementFunction::IncrementFunction(IncrementKind kind, unsigned n) : kind_(kind), n_(n) {
  if (kind == IncrementKind::Exact) return;
  if (n == 0) throw std::invalid_argument("IncrementFunction: order n must be at least 1");
  numerator_.assign(n + 1, 1.0);
  if (kind == IncrementKind::RungeKutta) {
    for (unsigned l = 1; l <= n; ++l) numerator_[l] = numerator_[l - 1] / l;
  } else {
    const QuadratureRule rule = QuadratureRule::lanczos_dyche(n);
    for (unsigned l = 1; l <= n; ++l) numerator_[l] = rule.weights()[l - 1];
  }
}

std::complex<double> IncrementFunction::operator()(std::complex<double> mu) const {
  switch (kind_) {
    case IncrementKind::Exact:
      return std::exp(mu);
    case IncrementKind::RungeKutta:
      return horner(numerator_, mu);
    case IncrementKind::LanczosDyche: {
      const std::complex<double> num = horner(numerator_, mu);
      const std::complex<double> den = horner(numerator_, -mu);
      const double scale = horner_abs(numerator_, std::abs(mu));
      if (std::abs(den) <= 4.0 * std::numeric_limits<double>::epsilon() * scale) {
        throw PoleError("LD increment function has a pole at mu = (" + std::to_string(mu.real()) + ", " +
                            std::to_string(mu.imag()) + ")",
                        mu);
      }
      return num / den;
    }
  }
  return {};
}

std::complex<double> zeta(const IncrementFunction& f, std::complex<double> mu) { return f(mu); }

double StabilityMap::re_at(std::size_t j) const {
  return re_range.lo + (re_range.hi - re_range.lo) * static_cast<double>(j) / static_cast<double>(re_points - 1);
}

double StabilityMap::im_at(std::size_t i) const {
  return im_range.lo + (im_range.hi - im_range.lo) * static_cast<double>(i) / static_cast<double>(im_points - 1);
}

std::size_t StabilityMap::pole_count() const { return static_cast<std::size_t>(std::count(pole_mask.begin(), pole_mask.end(), true)); }

StabilityMap scan_region(const IncrementFunction& f, Interval re_range, Interval im_range, std::size_t re_points,
                         std::size_t im_points, unsigned threads) {
  if (re_points < 2 || im_points < 2) throw std::invalid_argument("scan_region: need at least 2 points per axis");
  if (!(re_range.hi > re_range.lo) || !(im_range.hi > im_range.lo)) {
    throw std::invalid_argument("scan_region: ranges must be non-degenerate");
  }
  StabilityMap map;
  map.re_range = re_range;
  map.im_range = im_range;
  map.re_points = re_points;
  map.im_points = im_points;
  const std::size_t cells = re_points * im_points;
  map.values.assign(cells, 0.0);
  std::vector<char> stable(cells, 0);
  std::vector<char> pole(cells, 0);

  auto fill_rows = [&](std::size_t first, std::size_t last) {
    for (std::size_t i = first; i < last; ++i) {
      for (std::size_t j = 0; j < re_points; ++j) {
        const std::size_t k = map.index(i, j);
        try {
          const double a = std::abs(f({map.re_at(j), map.im_at(i)}));
          map.values[k] = a;
          stable[k] = a <= 1.0 + kStabilityTolerance;
        } catch (const PoleError&) {
          map.values[k] = std::numeric_limits<double>::infinity();
          pole[k] = 1;
        }
      }
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, im_points));
  if (threads <= 1) {
    fill_rows(0, im_points);
  } else {
    std::vector<std::jthread> workers;
    const std::size_t chunk = (im_points + threads - 1) / threads;
    for (std::size_t first = 0; first < im_points; first += chunk) {
      workers.emplace_back(fill_rows, first, std::min(im_points, first + chunk));
    }
  }
  map.stable_mask.assign(stable.begin(), stable.end());
  map.pole_mask.assign(pole.begin(), pole.end());
  return map;
}

void write_csv(std::ostream& out, const StabilityMap& map) {
  out << "re,im,abs_zeta,stable\n";
  char line[128];
  for (std::size_t i = 0; i < map.im_points; ++i) {
    for (std::size_t j = 0; j < map.re_points; ++j) {
      const std::size_t k = map.index(i, j);
      std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%d\n", map.re_at(j), map.im_at(i), map.values[k],
                    map.stable_mask[k] ? 1 : 0);
      out << line;
    }
  }
}

AStabilityReport check_a_stability(unsigned n, std::size_t samples, std::uint64_t seed) {
  if (n < 1 || n > 12) throw std::invalid_argument("check_a_stability: n must lie in [1, 12]");
  const IncrementFunction f(IncrementKind::LanczosDyche, n);
  AStabilityReport report;
  auto probe = [&](std::complex<double> mu) {
    const double a = std::abs(f(mu));
    ++report.samples;
    if (a > report.worst_abs) {
      report.worst_abs = a;
      report.worst_mu = mu;
    }
  };

  // Structured part: imaginary axis, rays into the left half plane, large radii.
  const std::size_t structured = std::min<std::size_t>(samples / 4, 4096);
  for (std::size_t k = 0; k < structured / 4; ++k) {
    const double x = static_cast<double>(k) / static_cast<double>(std::max<std::size_t>(structured / 4, 1));
    const double theta = std::pow(10.0, -3.0 + 9.0 * x);
    probe({0.0, theta});
    probe({0.0, -theta});
  }
  constexpr int kRays = 16;
  const std::size_t per_ray = std::max<std::size_t>(structured / (2 * kRays), 1);
  for (int r = 0; r < kRays; ++r) {
    const double angle = std::numbers::pi / 2 + std::numbers::pi * (r + 0.5) / kRays;
    for (std::size_t k = 0; k < per_ray; ++k) {
      const double radius = std::pow(10.0, -3.0 + 11.0 * static_cast<double>(k) / static_cast<double>(per_ray));
      probe(std::polar(radius, angle));
    }
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> log_radius(-3.0, 6.0);
  std::uniform_real_distribution<double> angle(std::numbers::pi / 2, 3 * std::numbers::pi / 2);
  std::uniform_real_distribution<double> box(-20.0, 20.0);
  while (report.samples < samples) {
    if (report.samples % 2 == 0) {
      const std::complex<double> mu = std::polar(std::pow(10.0, log_radius(rng)), angle(rng));
      probe({std::min(mu.real(), 0.0), mu.imag()});
    } else {
      probe({-std::abs(box(rng)), box(rng)});
    }
  }

  report.a_stable = report.worst_abs <= 1.0 + kStabilityTolerance;
  report.far_field_abs = std::abs(f(-1e8));
  return report;
}

}  // namespace ldint
