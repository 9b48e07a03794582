#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace ldint {

enum class IncrementKind { Exact, RungeKutta, LanczosDyche };

const char* to_string(IncrementKind kind);

/// Amplification factor zeta(mu) of a one-step method on du/dt = lambda u, mu = lambda dt.
///
/// RungeKutta: sum_{l<=n} mu^l / l!. LanczosDyche: N(mu) / N(-mu) with
/// N(mu) = sum_{l<=n} C_ln / l! mu^l, the (n,n) Padé approximant of e^mu.
class IncrementFunction {
 public:
  IncrementFunction(IncrementKind kind, unsigned n);

  IncrementKind kind() const { return kind_; }
  unsigned order() const { return n_; }
  /// Polynomial coefficients (index l) of the numerator; empty for Exact.
  const std::vector<double>& numerator() const { return numerator_; }

  /// Throws PoleError if the LD denominator vanishes at mu.
  std::complex<double> operator()(std::complex<double> mu) const;

 private:
  IncrementKind kind_;
  unsigned n_;
  std::vector<double> numerator_;
};

std::complex<double> zeta(const IncrementFunction& f, std::complex<double> mu);

/// |zeta| <= 1 + kStabilityTolerance counts as stable, so that unit-modulus
/// points (the imaginary axis for LD) are not lost to one ulp of rounding.
inline constexpr double kStabilityTolerance = 1e-12;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// |zeta| sampled on a uniform grid; cell (i, j) is re = re_axis[j], im = im_axis[i].
struct StabilityMap {
  Interval re_range;
  Interval im_range;
  std::size_t re_points = 0;
  std::size_t im_points = 0;
  std::vector<double> values;
  std::vector<bool> stable_mask;
  std::vector<bool> pole_mask;

  double re_at(std::size_t j) const;
  double im_at(std::size_t i) const;
  std::size_t index(std::size_t i, std::size_t j) const { return i * re_points + j; }
  std::size_t pole_count() const;
};

/// Grid scan of |zeta|; pole cells are marked unstable and flagged in pole_mask.
/// Cells with |zeta| <= 1 + kStabilityTolerance are stable.
/// `threads` = 0 picks the hardware concurrency.
StabilityMap scan_region(const IncrementFunction& f, Interval re_range, Interval im_range,
                         std::size_t re_points, std::size_t im_points, unsigned threads = 0);

/// CSV `re,im,abs_zeta,stable`, row-major over (im, re), 17 significant digits.
void write_csv(std::ostream& out, const StabilityMap& map);

struct AStabilityReport {
  bool a_stable = true;
  std::size_t samples = 0;
  double worst_abs = 0.0;
  std::complex<double> worst_mu;
  /// |zeta(mu)| at mu = -1e8; tends to 1, so the LD map is not L-stable.
  double far_field_abs = 0.0;
};

/// Samples Re(mu) <= 0 (imaginary axis, rays, large magnitudes and uniform random
/// points) and checks |zeta_LD| <= 1 + kStabilityTolerance. Requires 1 <= n <= 12.
AStabilityReport check_a_stability(unsigned n, std::size_t samples, std::uint64_t seed = 20240611);

}  // namespace ldint
