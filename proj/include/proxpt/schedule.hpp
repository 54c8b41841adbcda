#pragma once

#include <cmath>
#include <stdexcept>

namespace proxpt {

enum class ScheduleKind { constant, inverse_sqrt };

// Step-size schedule eta_t for steps t = 1, 2, ...
// Emitted values are strictly positive and non-increasing in t.
class StepSchedule {
 public:
  StepSchedule(ScheduleKind kind, double scale) : kind_(kind), scale_(scale) {
    if (!(scale > 0)) {
      throw std::invalid_argument("StepSchedule: scale must be positive");
    }
  }

  static StepSchedule constant(double scale) {
    return {ScheduleKind::constant, scale};
  }
  static StepSchedule inverse_sqrt(double scale) {
    return {ScheduleKind::inverse_sqrt, scale};
  }

  double at(long t) const {
    if (t < 1) throw std::invalid_argument("StepSchedule: t starts at 1");
    return kind_ == ScheduleKind::constant
               ? scale_
               : scale_ / std::sqrt(static_cast<double>(t));
  }

  // both schedules emit their largest value at t = 1
  double max_value() const { return scale_; }

  ScheduleKind kind() const { return kind_; }
  double scale() const { return scale_; }

 private:
  ScheduleKind kind_;
  double scale_;
};

}  // namespace proxpt
