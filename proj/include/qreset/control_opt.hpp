#pragma once

#include <optional>
#include <vector>

#include "qreset/model.hpp"
#include "qreset/operator_core.hpp"
#include "qreset/pulse.hpp"

namespace qreset {

struct OptimizeOptions {
  int max_iter = 500;
  double grad_tol = 1e-8;
  std::optional<double> eps_max;
  std::optional<OperatorSelector> second_control;
  std::optional<double> initial_amplitude;
};

struct OptimizationResult {
  PulseSchedule pulse;
  std::optional<PulseSchedule> pulse2;
  double final_purity = 0.0;
  int iterations = 0;
  bool converged = false;
  bool clamped_guess = false;
  std::vector<double> purity_history;
};

// Exact gradient of the end-time qubit purity with respect to each segment
// amplitude, via forward state and backward costate propagation with
// per-segment eigendecompositions. With a second channel the result holds the
// first channel's N entries followed by the second's.
std::vector<double> pulse_gradient(
    const SystemSpec& spec, const Mat& rho0, const PulseSchedule& pulse,
    const std::optional<PulseSchedule>& pulse2 = std::nullopt,
    const std::optional<OperatorSelector>& second_control = std::nullopt);

// End-time qubit purity under the piecewise-constant schedule(s).
double pulse_purity(
    const SystemSpec& spec, const Mat& rho0, const PulseSchedule& pulse,
    const std::optional<PulseSchedule>& pulse2 = std::nullopt,
    const std::optional<OperatorSelector>& second_control = std::nullopt);

// Projected gradient ascent with backtracking line search, starting from the
// constant resonant field (clamped to eps_max when needed; clamped_guess set).
// purity_history is nondecreasing.
OptimizationResult optimize_pulse(const SystemSpec& spec, const Mat& rho0,
                                  double tau, int n_segments,
                                  const OptimizeOptions& opts = {});

std::string pulse_csv(const PulseSchedule& pulse);

std::string optimization_json(const OptimizationResult& result);

}  // namespace qreset
