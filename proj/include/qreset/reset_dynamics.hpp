#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qreset/model.hpp"
#include "qreset/pulse.hpp"

namespace qreset {

// Closed-form data of the rotated-frame Hamiltonian at resonance for one
// Pauli interaction/control combination.
struct DressedCaseParams {
  int form = 1;  // template index 1..4
  Complex a{0.0, 0.0};
  Complex b{0.0, 0.0};
  double omega_b = 0;

  double omega() const;        // sqrt(omega_b^2 + 4|b|^2)
  double delta_plus() const;   // 1 + omega_b/omega
  double delta_minus() const;  // 1 - omega_b/omega
  double eta_plus() const;
  double eta_minus() const;
};

// Purifiable combinations only; nullopt otherwise.
std::optional<DressedCaseParams> case_parameters(int o_s, int o_b, int o_c,
                                                 const SystemSpec& spec);

// Template Hamiltonian for the given parameters.
Mat dressed_template(const DressedCaseParams& p);

struct DressedFrame {
  Mat t_s;  // qubit rotation whose conjugation yields the template
  Mat h_prime;
  DressedCaseParams params;
};

// Rotates the lab Hamiltonian at the resonant amplitude into the dressed
// frame; spec selectors must be Pauli. Throws NoDressedForm when the
// combination is not purifiable.
DressedFrame dressed_transform(const SystemSpec& spec);

// exp(-i H' t) assembled from closed-form entries.
Mat closed_form_propagator(double t, const DressedCaseParams& p);

struct EtaReport {
  double eta_exact;   // eta_minus
  double eta_approx;  // |a|
  double t_min;       // pi/(2 eta_minus)
};
// Throws NoPurification when a vanishes.
EtaReport eta_and_tmin(const DressedCaseParams& p);

// Lab-frame qubit state [[p_e, gamma], [conj(gamma), p_g]] in the {e, g}
// basis.
struct QubitInit {
  double p_g = 1.0;
  double p_e = 0.0;
  Complex gamma_s{0.0, 0.0};
};

// Reduced purity under the resonant constant drive at time t. The qubit
// state is first rotated into the dressed basis; the ancilla is thermal at
// spec.beta.
double approx_purity(double t, const SystemSpec& spec, const QubitInit& init);

// Same with an explicit ancilla state; throws AncillaNotThermal when it has
// coherence in the energy basis.
double approx_purity(double t, const SystemSpec& spec, const QubitInit& init,
                     const Mat& ancilla);

struct PurityCurve {
  std::vector<double> times;
  std::vector<double> values;
  double peak_time = 0;   // parabolic refinement around the first maximum
  double peak_value = 0;
};

// Exact piecewise-constant evolution of rho0 under the pulsed Hamiltonian;
// values are reduced qubit purities on the given ascending time grid.
PurityCurve simulate_purity(const SystemSpec& spec, const PulseSchedule& pulse,
                            const Mat& rho0, const std::vector<double>& grid);
std::string purity_curve_csv(const PurityCurve& curve);

enum class UnitConvention { TableI, AngularHbar1 };

struct LabeledTime {
  int label;    // which of the three closed-form reset times applies
  double time;  // nanoseconds under TableI, inverse angular units otherwise
};

// Closed-form minimum reset time of a purifiable combination. Under TableI
// the spec frequencies are read as plain GHz.
LabeledTime analytic_tmin_class(int o_s, int o_b, int o_c,
                                const SystemSpec& spec, UnitConvention conv);

struct TableOneRow {
  int o_s, o_b, o_c;
  double set1_ns, set2_ns, set3_ns;
};
// The 16 purifiable rows across the three published parameter sets.
std::vector<TableOneRow> reset_time_table();
std::string reset_time_table_csv(const std::vector<TableOneRow>& rows);

struct SixAngles {
  double phi_s = 0, theta_s = 0;
  double phi_b = 0, theta_b = 0;
  double phi_c = 0, theta_c = 0;
};

struct GeneralAngleParams {
  Complex a_bar, a_c, a_s;
  double b_c_plus, b_c_minus, b_s_plus, b_s_minus;
  double omega_plus, omega_minus, xi;
  double gamma_pp, gamma_pm, gamma_mp, gamma_mm;
};

// Effective coupling for arbitrary Bloch directions; no singular corners.
Complex abar_only(const SixAngles& ang, const SystemSpec& spec, double eps);

// Full parameter set plus an internal template consistency check; throws
// SingularAngleConfiguration when a denominator vanishes.
GeneralAngleParams abar_general(const SixAngles& ang, const SystemSpec& spec,
                                double eps);
Mat general_dressed_template(const GeneralAngleParams& gp, const SixAngles& ang,
                             double omega_b);

enum class ScanAxis { ThetaC, ThetaS, ThetaB, PhiC, PhiS, PhiB };

struct AngleScanRow {
  double angle;
  double abs_abar;
  double inv_tmin;  // from the simulated peak; 0 when no reset happens
  double c;         // commutator measure of the control against the coupling
};

std::vector<AngleScanRow> angle_scan(ScanAxis axis, const SixAngles& fixed,
                                     const SystemSpec& spec, int grid_n);
std::string angle_scan_csv(const std::vector<AngleScanRow>& rows);

// ||[O_S, O_c]||_F / (2 sqrt(2)).
double commutator_measure(const OperatorSelector& o_s,
                          const OperatorSelector& o_c);

struct HeatReport {
  double c_measure;
  double q_dot;  // tr(d rho_S/dt H_S) at the given joint state
  double bound;  // sqrt(2) J (eps ||[O_S,O_c]|| + omega_s/2 ||[s3,O_S]||)
};
HeatReport heat_bound(const SystemSpec& spec, double eps, const Mat& rho);

}
