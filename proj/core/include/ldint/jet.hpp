#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ldint {

/// Value and derivatives [f(t), f'(t), ..., f^(m)(t)] of a function at one time.
class DerivativeJet {
 public:
  /// Throws std::invalid_argument if `values` is empty or holds a non-finite entry.
  DerivativeJet(double t, std::vector<double> values);

  double t() const { return t_; }
  /// Highest derivative order m carried by the jet.
  std::size_t order() const { return values_.size() - 1; }
  double operator[](std::size_t k) const { return values_[k]; }
  std::span<const double> values() const { return values_; }

 private:
  double t_;
  std::vector<double> values_;
};

}  // namespace ldint
