#pragma once

#include <cmath>

namespace ldint {

/// Neumaier (Kahan-Babuska) compensated sum.
///
/// The running rounding error is kept in `compensation` and folded back in on
/// read, so the error of a long sum stays bounded independently of its length.
/// Unlike plain Kahan it also stays exact when an increment exceeds the sum.
class CompensatedAccumulator {
 public:
  CompensatedAccumulator() = default;
  explicit CompensatedAccumulator(double initial) : sum_(initial) {}

  CompensatedAccumulator& operator+=(double value) {
    const double t = sum_ + value;
    if (std::abs(sum_) >= std::abs(value)) {
      compensation_ += (sum_ - t) + value;
    } else {
      compensation_ += (value - t) + sum_;
    }
    sum_ = t;
    return *this;
  }

  double value() const { return sum_ + compensation_; }
  double sum() const { return sum_; }
  double compensation() const { return compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

}  // namespace ldint
