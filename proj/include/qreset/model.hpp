#pragma once

#include <string>
#include <vector>

#include "qreset/operator_core.hpp"

namespace qreset {

// Either a Pauli index 1..3 (pauli != 0) or a Bloch direction
// (cos phi sin theta, sin phi sin theta, cos theta).
struct OperatorSelector {
  int pauli = 3;
  double phi = 0.0;
  double theta = 0.0;

  static OperatorSelector from_pauli(int k);
  static OperatorSelector from_angles(double phi, double theta);
  bool is_pauli() const { return pauli != 0; }
};

Mat operator_of(const OperatorSelector& sel);

struct SystemSpec {
  double omega_s = 1.0;
  std::vector<double> ancilla_levels = {-1.5, 1.5};  // ascending energies
  double j = 0.1;
  double beta = 1.0;
  OperatorSelector o_s = OperatorSelector::from_pauli(1);
  OperatorSelector o_b = OperatorSelector::from_pauli(1);
  OperatorSelector o_c = OperatorSelector::from_pauli(3);

  int ancilla_dim() const { return static_cast<int>(ancilla_levels.size()); }
  double omega_b() const;  // two-level splitting; throws WrongAncillaDim
  double gap01() const;    // ground to first excited gap
  void validate() const;

  static SystemSpec from_json_text(const std::string& text);
  std::string to_json_text() const;
};

// exp(-beta h) / Z; throws NegativeBeta, NotHermitian.
Mat thermal_state(const Mat& h, double beta);

// (omega_s/2) sigma3 + eps O_c.
Mat qubit_hamiltonian(const SystemSpec& spec, double eps);

// Diagonal in the descending energy basis {|d-1>, ..., |0>}.
Mat ancilla_hamiltonian(const SystemSpec& spec);

// Lowering operator in the descending basis: a[c+1, c] = sqrt(d-1-c).
Mat ladder(int d);

// Two-level: H_S(eps) x 1 + 1 x (omega_b/2) sigma3 + J O_S x O_B.
// More levels: coupling through the ladder, J O_S x (a + a^dag).
Mat build_hamiltonian(const SystemSpec& spec, double eps);
Mat build_qudit_hamiltonian(const SystemSpec& spec, double eps);

// Dressed qubit splitting at drive amplitude eps.
double dressed_splitting(const SystemSpec& spec, double eps);

// Smallest eps >= 0 with dressed_splitting == gap01, to 1e-10.
// Throws NoResonance when no such amplitude exists.
double resonant_amplitude(const SystemSpec& spec);

}
