#pragma once

#include <vector>

#include "qreset/operator_core.hpp"

namespace qreset {

// Joint spectrum {s_i * b_j} sorted descending and regrouped into d_s blocks
// of d_b entries; s_prime holds the block sums. permutation maps sorted slots
// back to the original (i * d_b + j) product indices, stable on ties.
struct SpectrumPartition {
  std::vector<double> lambda;
  std::vector<double> s_prime;
  std::vector<int> permutation;
  int d_s = 0;
  int d_b = 0;
};

// True iff descending prefix sums of a dominate those of b. Equal lengths and
// equal totals required.
bool majorizes(const std::vector<double>& a, const std::vector<double>& b);

// Best unitary reshuffle of rho_s x rho_b: descending product spectrum chunked
// into d_s consecutive groups of d_b; the group sums majorize every other
// achievable marginal spectrum.
SpectrumPartition optimal_reshuffle(const Mat& rho_s, const Mat& rho_b);

// Sum of squared group sums from optimal_reshuffle.
double max_qubit_purity(const Mat& rho_s, const Mat& rho_b);

struct EpsilonResetReport {
  bool eligible = false;
  int required_count = 0;
  int small_count = 0;
  double threshold = 0.0;
  double achieved_infidelity = 0.0;
};

// Eligibility test for eps-close reset: enough ancilla eigenvalues must sit
// below eps / (2 d_b (d_s - 1)). achieved_infidelity is 1 - max purity for the
// maximally mixed system state, the worst case.
EpsilonResetReport epsilon_reset_check(const Mat& rho_b, int d_s, double eps);

// CSV rows (d_b, beta, max_purity) for equidistant-level thermal ancillas with
// the given gap, qubit thermal at omega_s.
std::string purity_dimension_csv(const std::vector<int>& dims, double gap,
                                 double beta, double omega_s);

}  // namespace qreset
