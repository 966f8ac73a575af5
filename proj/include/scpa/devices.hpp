// Appliance scheduling for the device-portfolio bidder model.
//
// Two device modes:
//   - program: a fixed consecutive per-slot draw profile; the scheduler
//     chooses the start slot inside the device's window. Once a start slot
//     has cleared, the program is committed and runs to completion.
//   - interruptible: a total energy requirement delivered at rated per-slot
//     power across the cheapest window slots, optionally with a minimum
//     up-time (every run of on-slots at least U long).
//
// Scheduling is exact at fixture scale: start-slot enumeration for programs,
// depth-first branch-and-bound over on/off binaries with a relaxation bound
// for interruptibles with up-time. A device whose window extends past the
// known price horizon is deferred until the window is fully visible.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "scpa/types.hpp"

namespace scpa {

enum class DeviceMode { Program, Interruptible };

struct DeviceSpec {
  std::string name;
  DeviceMode mode = DeviceMode::Program;
  std::vector<double> profile_kwh; // program: consecutive draws
  double energy_kwh = 0.0;         // interruptible: total requirement
  double slot_max_kwh = 0.0;       // interruptible: rated per-slot power
  int min_uptime_slots = 0;        // interruptible: 0/1 = unconstrained
  int window_first = 1;            // slot-of-day, 1-based inclusive
  int window_last = kSlotsPerDay;
  std::string after; // precedence: may not start before this device ends

  double daily_energy() const {
    if (mode == DeviceMode::Interruptible) return energy_kwh;
    double e = 0.0;
    for (double p : profile_kwh) e += p;
    return e;
  }
  int run_slots() const {
    return mode == DeviceMode::Program ? static_cast<int>(profile_kwh.size())
                                       : 0;
  }
};

// One day's instance of a catalog device, with the day-start shift shock
// already applied to the window and clearing-time progress tracked.
struct DeviceInstance {
  DeviceSpec spec;
  int day = 1;
  long window_first_abs = 1;
  long window_last_abs = kSlotsPerDay;
  int predecessor = -1; // index into the agent's instance list for this day

  // progress
  double remaining_kwh = 0.0; // interruptible
  long started_at = -1;       // program: committed start slot
  bool done = false;
  int run_length = 0; // interruptible: committed consecutive on-slots
  int forced_on = 0;  // up-time continuation owed in the next slot(s)
  bool truncation_logged = false;

  long program_end() const { // one past the last occupied slot
    return started_at + static_cast<long>(spec.profile_kwh.size());
  }
};

struct DeviceSolveResult {
  std::vector<double> draws; // aligned to the live horizon
  double cost = 0.0;
  long chosen_start = -1; // programs
  bool scheduled = false;
  bool truncated = false; // infeasibility fallback applied
};

namespace detail {

// Minimum-cost on/off selection: choose exactly `n` slots out of `prices`
// such that every maximal run of consecutive on-slots is >= uptime (a run
// touching index 0 may continue an already-running prefix of length
// `initial_run`). Draws fill the chosen slots at rated power, the most
// expensive chosen slot takes the remainder.
struct UptimeSelection {
  std::vector<int> chosen;
  double cost = std::numeric_limits<double>::infinity();
};

class UptimeSolver {
 public:
  UptimeSolver(const std::vector<double>& prices, int uptime, int n,
               double rated, double energy, int initial_run)
      : prices_(prices),
        uptime_(uptime),
        n_(n),
        rated_(rated),
        energy_(energy),
        initial_run_(initial_run) {
    const int w = static_cast<int>(prices.size());
    // suffix_cheapest_[i][k]: sum of the k cheapest prices in [i, w)
    suffix_cheapest_.assign(w + 1, std::vector<double>(n + 1, 0.0));
    for (int i = w - 1; i >= 0; --i) {
      std::vector<double> tail(prices.begin() + i, prices.end());
      std::sort(tail.begin(), tail.end());
      for (int k = 1; k <= n; ++k) {
        suffix_cheapest_[i][k] = suffix_cheapest_[i][k - 1] +
                                 (k - 1 < static_cast<int>(tail.size())
                                      ? tail[k - 1]
                                      : std::numeric_limits<double>::infinity());
      }
    }
    max_price_ = 0.0;
    for (double p : prices) max_price_ = std::max(max_price_, p);
  }

  UptimeSelection solve() {
    current_.clear();
    dfs(0, initial_run_, 0, 0.0);
    return best_;
  }

 private:
  void dfs(int i, int run, int count, double sum) {
    const int w = static_cast<int>(prices_.size());
    if (count == n_) {
      if (run == 0 || run >= uptime_ || starts_at_front(run)) {
        commit(sum);
      } else if (run > 0) {
        return; // open short run with no slots left to extend it
      }
      if (run == 0 || run >= uptime_ || starts_at_front(run)) return;
    }
    if (i == w) {
      if (count == n_ && (run == 0 || run >= uptime_ || starts_at_front(run))) commit(sum);
      return;
    }
    if (count + (w - i) < n_) return; // cannot reach n slots
    // relaxation: n - count cheapest remaining, ignoring run structure
    const double bound = sum + suffix_cheapest_[i][n_ - count];
    if (rated_cost(bound) >= best_.cost) return;

    // on
    if (count < n_) {
      current_.push_back(i);
      dfs(i + 1, run + 1, count + 1, sum + prices_[i]);
      current_.pop_back();
    }
    // off: only legal when not in the middle of a too-short run
    if (run == 0 || run >= uptime_ || starts_at_front(run)) {
      dfs(i + 1, 0, count, sum);
    }
  }

  bool starts_at_front(int run) const {
    // a run that includes index 0 continues the committed prefix
    return initial_run_ > 0 && !current_.empty() && current_.front() == 0 &&
           run == static_cast<int>(current_.size()) + initial_run_ -
                      (current_.empty() ? 0 : 0) &&
           current_.back() == static_cast<int>(current_.size()) - 1;
  }

  double rated_cost(double price_sum) const {
    const double spare = rated_ * n_ - energy_;
    return rated_ * price_sum - spare * max_price_;
  }

  void commit(double sum) {
    // exact cost: fill chosen at rated power, remainder on the dearest slot
    double dearest = 0.0;
    for (int idx : current_) dearest = std::max(dearest, prices_[idx]);
    const double spare = rated_ * n_ - energy_;
    const double cost = rated_ * sum - spare * dearest;
    if (cost < best_.cost) {
      best_.cost = cost;
      best_.chosen = current_;
    }
  }

  const std::vector<double>& prices_;
  int uptime_, n_;
  double rated_, energy_;
  int initial_run_;
  double max_price_ = 0.0;
  std::vector<std::vector<double>> suffix_cheapest_;
  UptimeSelection best_;
  std::vector<int> current_;
};

inline std::vector<double> fill_at_rated(const std::vector<int>& chosen,
                                         const std::vector<double>& prices,
                                         double rated, double energy,
                                         std::size_t size) {
  std::vector<int> order = chosen;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return prices[a] < prices[b]; });
  std::vector<double> draws(size, 0.0);
  double left = energy;
  for (int idx : order) {
    const double take = std::min(rated, left);
    draws[idx] = take;
    left -= take;
    if (left <= 0.0) break;
  }
  return draws;
}

} // namespace detail

// Program device: pick the cheapest feasible start (earliest wins ties). A
// window that extends past the horizon defers the device; a window too short
// for the full profile truncates it at the earliest feasible start.
inline DeviceSolveResult schedule_program(const DeviceInstance& inst,
                                          const PriceVector& prices,
                                          const Horizon& horizon,
                                          long earliest_start) {
  DeviceSolveResult r;
  r.draws.assign(prices.size(), 0.0);
  if (inst.done) return r;

  const int len = static_cast<int>(inst.spec.profile_kwh.size());
  if (inst.started_at >= 0) { // committed: emit the tail of the profile
    r.scheduled = true;
    r.chosen_start = inst.started_at;
    for (int k = 0; k < len; ++k) {
      const long s = inst.started_at + k;
      if (horizon.contains(s)) {
        r.draws[horizon.offset_of(s)] = inst.spec.profile_kwh[k];
        r.cost += inst.spec.profile_kwh[k] * prices[horizon.offset_of(s)];
      }
    }
    return r;
  }

  if (inst.window_last_abs > horizon.last_slot()) return r; // defer

  const long wf = std::max({inst.window_first_abs, earliest_start, horizon.start_slot});
  const long wl = inst.window_last_abs;
  const long last_start = wl - len + 1;

  double best = std::numeric_limits<double>::infinity();
  long best_start = -1;
  for (long s = wf; s <= last_start; ++s) {
    double cost = 0.0;
    for (int k = 0; k < len; ++k) cost += inst.spec.profile_kwh[k] * prices[horizon.offset_of(s + k)];
    if (cost < best) {
      best = cost;
      best_start = s;
    }
  }
  if (best_start >= 0) {
    r.scheduled = true;
    r.chosen_start = best_start;
    r.cost = best;
    for (int k = 0; k < len; ++k) r.draws[horizon.offset_of(best_start + k)] = inst.spec.profile_kwh[k];
    return r;
  }

  // window shrank below the profile length: truncate at the earliest slot
  if (wf <= wl) {
    r.scheduled = true;
    r.truncated = true;
    r.chosen_start = wf;
    const int fit = static_cast<int>(std::min<long>(len, wl - wf + 1));
    for (int k = 0; k < fit; ++k) {
      r.draws[horizon.offset_of(wf + k)] = inst.spec.profile_kwh[k];
      r.cost += inst.spec.profile_kwh[k] * prices[horizon.offset_of(wf + k)];
    }
    return r;
  }
  r.truncated = true; // window entirely passed
  return r;
}

// Interruptible device: deliver the remaining energy at rated power over the
// cheapest admissible slots of window x horizon.
inline DeviceSolveResult schedule_interruptible(const DeviceInstance& inst,
                                                const PriceVector& prices,
                                                const Horizon& horizon,
                                                const std::vector<int>* tie_break = nullptr) {
  DeviceSolveResult r;
  r.draws.assign(prices.size(), 0.0);
  if (inst.done || inst.remaining_kwh <= 1e-12) return r;
  if (inst.forced_on == 0 && inst.window_last_abs > horizon.last_slot()) return r; // defer

  const double m = inst.spec.slot_max_kwh;
  double energy = inst.remaining_kwh;
  if (m <= 0.0) throw std::invalid_argument("interruptible device needs slot_max_kwh > 0");

  // up-time continuation owed from a run committed in cleared slots
  int forced = inst.forced_on;
  int offset0 = -1;
  if (forced > 0) {
    for (int k = 0; k < forced && k < static_cast<int>(prices.size()); ++k) {
      const double take = std::min(m, energy);
      r.draws[k] = take;
      r.cost += take * prices[k];
      energy -= take;
      if (energy <= 1e-12) break;
    }
    offset0 = forced;
    r.scheduled = true;
    if (energy <= 1e-12) return r;
  }

  const long wf = std::max(inst.window_first_abs, horizon.start_slot + std::max(0, offset0));
  const long wl = std::min(inst.window_last_abs, horizon.last_slot());
  if (wf > wl) {
    if (r.scheduled) return r;
    r.truncated = true;
    return r;
  }

  std::vector<double> wprices;
  std::vector<int> woffsets;
  for (long s = wf; s <= wl; ++s) {
    woffsets.push_back(horizon.offset_of(s));
    wprices.push_back(prices[horizon.offset_of(s)]);
  }
  const int w = static_cast<int>(wprices.size());
  const int uptime = inst.spec.min_uptime_slots;
  int n = static_cast<int>(std::ceil(energy / m - 1e-12));
  n = std::max(n, uptime > 1 ? uptime : 1);

  if (n > w) { // cannot fit: deliver what fits, cheapest first
    r.truncated = true;
    n = w;
    energy = std::min(energy, m * static_cast<double>(w));
  }

  std::vector<int> chosen;
  if (uptime <= 1) {
    std::vector<int> order(w);
    for (int i = 0; i < w; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (wprices[a] != wprices[b]) return wprices[a] < wprices[b];
      if (tie_break) {
        const int sa = slot_of_day_index(wf + a);
        const int sb = slot_of_day_index(wf + b);
        return (*tie_break)[sa] < (*tie_break)[sb];
      }
      return a < b;
    });
    chosen.assign(order.begin(), order.begin() + n);
  } else {
    const int initial_run = (wf == horizon.start_slot + std::max(0, offset0) && inst.run_length > 0)
                                ? inst.run_length + std::max(0, offset0)
                                : 0;
    detail::UptimeSolver solver(wprices, uptime, n, m, energy, initial_run);
    auto sel = solver.solve();
    if (sel.chosen.empty()) { // no feasible run placement: rated greedy fallback
      r.truncated = true;
      std::vector<int> order(w);
      for (int i = 0; i < w; ++i) order[i] = i;
      std::sort(order.begin(), order.end(),
                [&](int a, int b) { return wprices[a] < wprices[b]; });
      chosen.assign(order.begin(), order.begin() + std::min(n, w));
    } else {
      chosen = sel.chosen;
    }
  }

  auto wdraws = detail::fill_at_rated(chosen, wprices, m, energy, wprices.size());
  for (int i = 0; i < w; ++i) {
    if (wdraws[i] > 0.0) {
      r.draws[woffsets[i]] += wdraws[i];
      r.cost += wdraws[i] * wprices[i];
    }
  }
  r.scheduled = true;
  return r;
}

} // namespace scpa
