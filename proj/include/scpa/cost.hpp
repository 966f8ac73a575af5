// Aggregator cost side: quadratic total cost, average total cost (the
// break-even supply curve), per-unit revenue deficit and multiplicative
// lognormal cost shocks.
#pragma once

#include <stdexcept>

#include "scpa/rng.hpp"

namespace scpa {

// c(x) = (a * shock) * x^2. Any monotone cost could sit behind the same three
// queries; the quadratic form is the default the simulator ships with.
struct CostModel {
  double a = 0.002;   // $/kWh^2
  double shock = 1.0; // multiplicative, 1 = mean value

  CostModel with_shock(double s) const { return CostModel{a, s}; }
  double effective_a() const { return a * shock; }
};

inline double total_cost(const CostModel& m, double x) {
  if (x < 0.0) throw std::invalid_argument("total_cost: negative quantity");
  return m.effective_a() * x * x;
}

// ATC(x) = c(x)/x. Undefined at x = 0; callers special-case zero demand.
inline double average_total_cost(const CostModel& m, double x) {
  if (x <= 0.0) throw std::invalid_argument("average_total_cost: x must be > 0");
  return m.effective_a() * x;
}

// Per-unit revenue deficit: ATC(x) - p. Zero demand produces no deficit, so
// empty slots terminate instead of ascending forever.
inline double revenue_deficit(const CostModel& m, double price, double x) {
  if (x == 0.0) return 0.0;
  return average_total_cost(m, x) - price;
}

// Fresh multiplicative shock ~ lognormal(0, log_sd^2); base a is untouched.
inline CostModel apply_cost_shock(const CostModel& m, RngStream& rng, double log_sd) {
  return m.with_shock(rng.lognormal(0.0, log_sd));
}

} // namespace scpa
