#pragma once

#include <optional>
#include <vector>

namespace qreset {

// Piecewise-constant drive amplitude on [0, duration], equal segments.
struct PulseSchedule {
  double duration = 0;
  std::vector<double> amplitudes;
  std::optional<double> eps_max;

  int n_segments() const { return static_cast<int>(amplitudes.size()); }
  double segment_length() const;
  int segment_at(double t) const;  // clamped to the last segment at t == duration
  double value_at(double t) const;

  static PulseSchedule constant(double eps, double duration, int n = 1);
  void validate() const;  // throws PulseTooShort, InvalidEpsilon
};

}
