// Core domain types shared by every module: the rolling horizon, per-slot
// price and quantity vectors, and slot-of-day arithmetic.
#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace scpa {

inline constexpr int kSlotsPerDay = 48;

// Per-slot price in $/kWh over the live horizon.
using PriceVector = std::vector<double>;
// Per-slot quantity in kWh over the live horizon.
using DemandBid = std::vector<double>;

// Rolling window of `length` slots starting at an absolute 1-based slot
// index. Advancing moves the window forward by exactly one slot.
struct Horizon {
  long start_slot = 1;
  int length = kSlotsPerDay;
  int slot_duration_minutes = 30;

  long slot_at(int offset) const { return start_slot + offset; }
  long last_slot() const { return start_slot + length - 1; }
  bool contains(long abs_slot) const {
    return abs_slot >= start_slot && abs_slot <= last_slot();
  }
  int offset_of(long abs_slot) const {
    if (!contains(abs_slot)) throw std::out_of_range("slot not in live horizon");
    return static_cast<int>(abs_slot - start_slot);
  }
};

inline Horizon advance_horizon(Horizon h) {
  h.start_slot += 1;
  return h;
}

// 0-based index into daily profile arrays (uncontrolled load, ToU windows,
// device windows). Absolute slot 1 maps to index 0, slot 49 back to 0.
inline int slot_of_day_index(long abs_slot) {
  long m = (abs_slot - 1) % kSlotsPerDay;
  if (m < 0) m += kSlotsPerDay;
  return static_cast<int>(m);
}

// 1-based calendar day of an absolute slot.
inline int day_of_slot(long abs_slot) {
  return static_cast<int>((abs_slot - 1) / kSlotsPerDay) + 1;
}

inline bool all_finite_nonnegative(const std::vector<double>& v) {
  for (double x : v) {
    if (!std::isfinite(x) || x < 0.0) return false;
  }
  return true;
}

inline bool weakly_decreasing(const std::vector<double>& v, double tol = 0.0) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] > v[i - 1] + tol) return false;
  }
  return true;
}

} // namespace scpa
