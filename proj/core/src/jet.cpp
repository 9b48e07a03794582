#include "ldint/jet.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ldint {

DerivativeJet::DerivativeJet(double t, std::vector<double> values) : t_(t), values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("DerivativeJet: needs at least the function value");
  if (!std::isfinite(t_)) throw std::invalid_argument("DerivativeJet: time is not finite");
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (!std::isfinite(values_[k])) {
      throw std::invalid_argument("DerivativeJet: derivative of order " + std::to_string(k) +
                                  " is not finite");
    }
  }
}

}  // namespace ldint
