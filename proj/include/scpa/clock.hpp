// One clock session over the live horizon: monotone ascending prices driven
// by per-slot revenue deficits, secant step sizing capped at a maximum
// increment, RP activity-rule enforcement, termination and restart pricing.
#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "scpa/activity_rule.hpp"
#include "scpa/cost.hpp"
#include "scpa/types.hpp"

namespace scpa {

// Post-round record for one slot: the prices at which the round's deficits
// were computed, so the secant rule sees the previous two increments.
struct SlotRound {
  double price = 0.0;
  double deficit = 0.0;
  double demand = 0.0;
};

struct ClockState {
  int iteration = 0; // completed rounds
  PriceVector prices; // prices for the next round
  std::vector<std::vector<SlotRound>> history; // per live slot
  std::vector<BidLedger> ledgers;              // per agent
  std::vector<DemandBid> accepted_bids;        // latest accepted bid per agent
  bool terminated = false;
  bool forced_close = false;

  ClockState() = default;
  ClockState(PriceVector opening, std::size_t agent_count)
      : prices(std::move(opening)),
        history(prices.size()),
        ledgers(agent_count),
        accepted_bids(agent_count, DemandBid(prices.size(), 0.0)) {}

  int live_slots() const { return static_cast<int>(prices.size()); }

  // Closing prices are the prices at which the final round's deficits were
  // evaluated (the `prices` member is already bumped for a next round that
  // never runs once the session terminates).
  PriceVector closing_prices() const {
    PriceVector out(history.size(), 0.0);
    for (std::size_t h = 0; h < history.size(); ++h) {
      out[h] = history[h].empty() ? prices[h] : history[h].back().price;
    }
    return out;
  }
};

// Secant step: zero of the line through the previous two (price, deficit)
// points, capped at max_increment. Fewer than two points, a non-descending
// deficit or a repeated price all fall back to the full increment.
inline double price_step(const std::vector<SlotRound>& history, double max_increment) {
  if (history.size() < 2) return max_increment;
  const SlotRound& prev = history[history.size() - 2];
  const SlotRound& last = history.back();
  if (last.deficit >= prev.deficit) return max_increment;
  if (last.price <= prev.price) return max_increment;
  const double slope = (last.deficit - prev.deficit) / (last.price - prev.price);
  const double zero_crossing = last.price - last.deficit / slope;
  const double step = zero_crossing - last.price;
  if (step <= 0.0) return max_increment;
  return std::min(step, max_increment);
}

// p_{k+1,h} = p_{k,h} + step_h when the slot still runs a deficit, else
// unchanged. A slot that was frozen resumes ascending as soon as demand
// substitution pushes its deficit back above zero.
inline void update_prices(ClockState& state, double max_increment) {
  for (std::size_t h = 0; h < state.prices.size(); ++h) {
    if (state.history[h].empty()) continue;
    if (state.history[h].back().deficit > 0.0) {
      state.prices[h] += price_step(state.history[h], max_increment);
    }
  }
}

inline bool is_terminated(const ClockState& state, double eps, int max_iterations) {
  if (state.iteration < 1) throw std::logic_error("is_terminated: no completed round");
  bool cleared = true;
  for (const auto& hist : state.history) {
    if (!hist.empty() && hist.back().deficit > eps) {
      cleared = false;
      break;
    }
  }
  return cleared || state.iteration >= max_iterations;
}

struct ClockRoundResult {
  std::vector<double> aggregate;   // per slot, incl. uncontrolled load
  std::vector<double> deficits;    // per slot
  std::vector<std::size_t> rejected_agents; // RP rejections this round
  bool all_cleared = false;        // every deficit <= eps
};

// One clock iteration: validate candidate bids against the RP rule (a
// rejected candidate keeps the agent's previous accepted bid), aggregate
// demand plus uncontrolled load, compute deficits at the round's prices and
// record history. Price updates are applied by the caller only when the
// session continues, so closing prices match the final recorded deficits.
inline ClockRoundResult clock_round(ClockState& state,
                                    const std::vector<DemandBid>& candidate_bids,
                                    const std::vector<double>& uncontrolled,
                                    const std::vector<CostModel>& cost,
                                    double eps,
                                    double rp_tol = 1e-9) {
  const std::size_t slots = state.prices.size();
  if (uncontrolled.size() != slots || cost.size() != slots) {
    throw std::invalid_argument("clock_round: per-slot input size mismatch");
  }
  if (candidate_bids.size() != state.ledgers.size()) {
    throw std::invalid_argument("clock_round: one bid per agent required");
  }

  ClockRoundResult result;
  result.aggregate.assign(slots, 0.0);
  result.deficits.assign(slots, 0.0);

  for (std::size_t i = 0; i < candidate_bids.size(); ++i) {
    const DemandBid* effective = &candidate_bids[i];
    auto violation = check_rp_constraints(state.ledgers[i], candidate_bids[i], state.prices, rp_tol);
    if (violation) {
      result.rejected_agents.push_back(i);
      effective = &state.accepted_bids[i];
    } else {
      state.ledgers[i].record(state.prices, candidate_bids[i]);
      state.accepted_bids[i] = candidate_bids[i];
    }
    for (std::size_t h = 0; h < slots; ++h) result.aggregate[h] += (*effective)[h];
  }

  for (std::size_t h = 0; h < slots; ++h) {
    result.aggregate[h] += uncontrolled[h];
    result.deficits[h] = revenue_deficit(cost[h], state.prices[h], result.aggregate[h]);
    state.history[h].push_back(SlotRound{state.prices[h], result.deficits[h], result.aggregate[h]});
  }
  state.iteration += 1;

  result.all_cleared = true;
  for (double d : result.deficits) {
    if (d > eps) {
      result.all_cleared = false;
      break;
    }
  }
  return result;
}

// Opening prices for the restarted session: the cleared slot drops off the
// front, surviving slots reopen at a discount off their closing prices, and
// the newly opened slot t+H starts from the configured initial price.
inline PriceVector restart_prices(const PriceVector& closing, double discount,
                                  double initial_price) {
  if (discount < 0.0 || discount >= 1.0) {
    throw std::invalid_argument("restart_prices: discount must be in [0,1)");
  }
  PriceVector opening;
  opening.reserve(closing.size());
  for (std::size_t h = 1; h < closing.size(); ++h) {
    opening.push_back((1.0 - discount) * closing[h]);
  }
  opening.push_back(initial_price);
  return opening;
}

} // namespace scpa
