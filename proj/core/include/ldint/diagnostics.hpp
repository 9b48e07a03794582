#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "ldint/compensated.hpp"
#include "ldint/system.hpp"

namespace ldint {

struct DiagnosticRecord {
  std::size_t nu = 0;
  double t = 0.0;
  Vector q;
  Vector p;
  double energy = 0.0;
  double dE_rel = 0.0;
  std::optional<double> jacobian;
  std::optional<double> C_rel;
  /// Iterations of the implicit solve that produced this state (0 for explicit steps).
  int solver_iterations = 0;
};

/// Ordered per-step record of a trajectory. dE_rel is relative to the first
/// record's energy.
class DiagnosticSeries {
 public:
  DiagnosticSeries() = default;

  /// Throws std::invalid_argument unless nu strictly increases.
  void append(DiagnosticRecord record);

  const std::vector<DiagnosticRecord>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  const DiagnosticRecord& front() const { return records_.front(); }
  const DiagnosticRecord& back() const { return records_.back(); }

  double max_dE_rel() const;
  int max_solver_iterations() const;
  std::vector<double> dE_rel_values() const;
  /// Empty when the records carry no C_rel.
  std::vector<double> C_rel_values() const;

 private:
  std::vector<DiagnosticRecord> records_;
};

/// CSV `nu,t,q,p,E,dE_rel,J,C_rel`, 17 significant digits. Absent optionals are blank;
/// vector q and p join their components with ';'.
void write_csv(std::ostream& out, const DiagnosticSeries& series);

/// H(q, p, t). Throws CapabilityError if the system has no Hamiltonian evaluator.
double energy(const HamiltonianSystem& sys, const PhaseState& state);

/// |E - E0| / |E0|; falls back to |E - E0| when E0 is zero.
double relative_deviation(double value, double reference);

/// C = p^2/2 e^{-gamma t} + gamma p q / 2 + q^2/2 e^{gamma t}, conserved by the damped oscillator.
double damped_invariant(double gamma, const PhaseState& state);

using StateMap = std::function<PhaseState(const PhaseState&)>;

/// Central-difference determinant of d(q', p') / d(q, p) for the map at `state`.
/// Without `epsilon` each coordinate uses cbrt(machine eps) * max(1, |x|); with it,
/// epsilon * max(1, |x|).
double map_jacobian(const StateMap& step, const PhaseState& state, std::optional<double> epsilon = std::nullopt);

struct OrderFit {
  double order = 0.0;
  /// Some error was zero or negative, i.e. the sequence hit roundoff; order is not fitted.
  bool saturated = false;
};

/// Least-squares slope of log(error) against log(dt). Needs at least 3 pairs; the
/// dts must be positive and not all equal.
OrderFit convergence_order(std::span<const double> errors, std::span<const double> dts);

}  // namespace ldint
