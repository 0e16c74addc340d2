#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dlwr/field.hpp"

namespace dlwr {

// Ring buffer of the last t_delay_steps+1 fields. The initial datum acts as a
// constant-in-time history: queries at step <= 0 return it. A slot for step s
// lives at s mod (T+1); the slot holding step 0 is only reclaimed at step T+1,
// by which time the clamp window [n-T, 0] is empty, so the clamp never
// observes an overwritten slot.
class HistoryBuffer {
 public:
  HistoryBuffer(DensityField rho0, int t_delay_steps)
      : delay_(t_delay_steps),
        slots_(static_cast<std::size_t>(t_delay_steps) + 1, std::move(rho0)) {
    if (t_delay_steps < 0)
      throw std::logic_error("history: negative delay step count");
  }

  int delay_steps() const { return delay_; }
  long head() const { return head_; }
  std::size_t capacity() const { return slots_.size(); }

  // Field stored for `step`, where step must lie in [head - delay, head].
  const DensityField& at_step(long step) const {
    if (step > head_ || step < head_ - delay_)
      throw std::logic_error("history: step " + std::to_string(step) +
                             " outside retained window [" +
                             std::to_string(head_ - delay_) + ", " +
                             std::to_string(head_) + "]");
    const long s = step <= 0 ? 0 : step;  // constant initial history
    return slots_[static_cast<std::size_t>(s) % slots_.size()];
  }

  // The field delay_steps ago (the constant history before t = 0).
  const DensityField& delayed() const { return at_step(head_ - delay_); }

  const DensityField& latest() const { return at_step(head_); }

  void push(DensityField next) {
    ++head_;
    slots_[static_cast<std::size_t>(head_) % slots_.size()] = std::move(next);
  }

 private:
  int delay_;
  long head_ = 0;
  std::vector<DensityField> slots_;
};

inline HistoryBuffer history_init(DensityField rho0, int t_delay_steps) {
  return HistoryBuffer(std::move(rho0), t_delay_steps);
}

inline const DensityField& history_delayed(const HistoryBuffer& buf, long n,
                                           int t_delay_steps) {
  if (n != buf.head())
    throw std::logic_error("history: query head mismatch");
  if (t_delay_steps != buf.delay_steps())
    throw std::logic_error("history: delay mismatch");
  return buf.delayed();
}

}  // namespace dlwr
