// Revealed-preference activity rule for the clock and proxy phases.
//
// A bidder's history within one clock session is a ledger of accepted
// (price vector, bid vector) pairs. A candidate bid d at prices p is
// admissible against a prior pair (p_k, d_k) iff
//
//     (p - p_k) . (d - d_k) <= tol,
//
// the pairwise consequence of quasi-linear utility maximisation that is
// independent of the (private) value function: both of a sincere bidder's
// optimality inequalities sum to exactly this product. Demand may only move
// toward slots whose prices rose less. Parking patterns - stocking up on a
// slot and later swinging quantity onto slots whose prices have risen -
// make the product positive and are rejected.
//
// Ledgers are cleared when the clock auction restarts after a proxy close.
#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "scpa/types.hpp"

namespace scpa {

struct BidLedger {
  std::vector<std::pair<PriceVector, DemandBid>> entries;

  void record(PriceVector prices, DemandBid bid) {
    entries.emplace_back(std::move(prices), std::move(bid));
  }
  void clear() { entries.clear(); }
  bool empty() const { return entries.empty(); }
  std::size_t size() const { return entries.size(); }
};

struct RpViolation {
  std::size_t prior_iteration = 0; // index into the ledger (0-based)
  double product = 0.0;            // offending (dp . dd) value
};

inline double rp_product(const PriceVector& prior_prices, const DemandBid& prior_bid,
                         const PriceVector& prices, const DemandBid& bid) {
  double sum = 0.0;
  for (std::size_t h = 0; h < bid.size(); ++h) {
    sum += (prices[h] - prior_prices[h]) * (bid[h] - prior_bid[h]);
  }
  return sum;
}

// nullopt = admissible. The tolerance absorbs floating-point noise from the
// bid solvers; it is scaled by the magnitude of the quantities involved.
inline std::optional<RpViolation> check_rp_constraints(const BidLedger& ledger,
                                                       const DemandBid& candidate,
                                                       const PriceVector& prices,
                                                       double tol = 1e-9) {
  for (std::size_t k = 0; k < ledger.entries.size(); ++k) {
    const auto& [p_k, d_k] = ledger.entries[k];
    if (p_k.size() != prices.size() || d_k.size() != candidate.size() ||
        candidate.size() != prices.size()) {
      throw std::invalid_argument("check_rp_constraints: dimension mismatch");
    }
    double scale = 1.0;
    for (std::size_t h = 0; h < candidate.size(); ++h) {
      scale += prices[h] * candidate[h] + p_k[h] * d_k[h];
    }
    const double product = rp_product(p_k, d_k, prices, candidate);
    if (product > tol * scale) return RpViolation{k, product};
  }
  return std::nullopt;
}

// Post-hoc re-assertion over a full ledger: every stored pair must be
// pairwise admissible. Used by tests and the day-long soundness check.
inline std::optional<RpViolation> recheck_ledger(const BidLedger& ledger, double tol = 1e-9) {
  for (std::size_t l = 1; l < ledger.entries.size(); ++l) {
    BidLedger prefix;
    prefix.entries.assign(ledger.entries.begin(), ledger.entries.begin() + l);
    auto v = check_rp_constraints(prefix, ledger.entries[l].second, ledger.entries[l].first, tol);
    if (v) return v;
  }
  return std::nullopt;
}

} // namespace scpa
