#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qreset/control_opt.hpp"
#include "qreset/errors.hpp"
#include "qreset/format.hpp"
#include "qreset/lie_cartan.hpp"
#include "qreset/model.hpp"
#include "qreset/purity_majorization.hpp"
#include "qreset/reset_dynamics.hpp"
#include "qreset/weyl_qsl.hpp"

namespace {

using namespace qreset;

constexpr double PI = std::numbers::pi;

bool is_validation_tag(const std::string& tag) {
  static const char* tags[] = {
      "UnknownKey",      "InvalidSpec",     "NegativeBeta",
      "WrongAncillaDim", "InvalidEpsilon",  "InvalidCoupling",
      "SumMismatch",     "DimensionMismatch", "NotDensity",
      "PulseTooShort",   "NotHermitian",    "NotUnitary",
      "NotAntiHermitian"};
  for (const char* t : tags)
    if (tag == t) return true;
  return false;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("InvalidSpec", "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("InvalidSpec", "cannot open " + path + " for writing");
  out << text;
}

SystemSpec load_spec(const std::string& path) {
  if (path.empty()) return SystemSpec{};
  return SystemSpec::from_json_text(read_file(path));
}

struct CaseTriple {
  int o_s, o_b, o_c;
};

CaseTriple parse_case(const std::string& text) {
  auto bad = [&]() {
    fail("InvalidSpec", "case selector must look like s1s1:s3, got " + text);
  };
  if (text.size() != 7 || text[0] != 's' || text[2] != 's' || text[4] != ':' ||
      text[5] != 's')
    bad();
  auto digit = [&](char c) {
    if (c < '1' || c > '3') bad();
    return c - '0';
  };
  return {digit(text[1]), digit(text[3]), digit(text[6])};
}

void apply_case(SystemSpec& spec, const CaseTriple& c) {
  spec.o_s = OperatorSelector::from_pauli(c.o_s);
  spec.o_b = OperatorSelector::from_pauli(c.o_b);
  spec.o_c = OperatorSelector::from_pauli(c.o_c);
}

std::string scalar(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

Mat named_gate(const std::string& name) {
  Mat g = Mat::Zero(4, 4);
  if (name == "identity") {
    g = Mat::Identity(4, 4);
  } else if (name == "cnot") {
    g(0, 0) = 1; g(1, 1) = 1; g(2, 3) = 1; g(3, 2) = 1;
  } else if (name == "swap") {
    g(0, 0) = 1; g(1, 2) = 1; g(2, 1) = 1; g(3, 3) = 1;
  } else if (name == "iswap") {
    g(0, 0) = 1; g(3, 3) = 1;
    g(1, 2) = Complex(0, 1); g(2, 1) = Complex(0, 1);
  } else {
    fail("InvalidSpec", "unknown gate " + name);
  }
  return g;
}

Mat matrix_from_json(const std::string& path) {
  nlohmann::json j = nlohmann::json::parse(read_file(path));
  if (!j.is_object() || !j.contains("re") || !j.contains("im"))
    fail("InvalidSpec", "matrix file needs re and im arrays");
  auto& re = j["re"];
  auto& im = j["im"];
  if (!re.is_array() || !im.is_array() || re.size() != im.size())
    fail("InvalidSpec", "re and im must be arrays of equal shape");
  int n = static_cast<int>(re.size());
  Mat m(n, n);
  for (int r = 0; r < n; ++r) {
    if (!re[r].is_array() || static_cast<int>(re[r].size()) != n ||
        !im[r].is_array() || static_cast<int>(im[r].size()) != n)
      fail("InvalidSpec", "matrix rows must all have the full width");
    for (int c = 0; c < n; ++c)
      m(r, c) = Complex(re[r][c].get<double>(), im[r][c].get<double>());
  }
  return m;
}

Mat thermal_joint(const SystemSpec& spec) {
  return kron(thermal_state(0.5 * spec.omega_s * sigma(3), spec.beta),
              thermal_state(ancilla_hamiltonian(spec), spec.beta));
}

int run(int argc, char** argv) {
  CLI::App app{"Qubit reset bounds: controllability classification, minimum "
               "reset times, exact and approximate dynamics, torus speed "
               "limits, majorization purity ceilings, and pulse optimization"};
  app.require_subcommand(1);

  // classify
  auto* classify = app.add_subcommand(
      "classify", "Classify all 27 Pauli coupling/control combinations by "
                  "their dynamical algebra dimensions and purifiability");
  std::string classify_out;
  bool classify_all = false;
  classify->add_flag("--all", classify_all, "Emit every combination (default)");
  classify->add_option("--out", classify_out, "Write CSV here (stdout otherwise)");

  // tmin
  auto* tmin = app.add_subcommand(
      "tmin", "Minimum reset time pi/(2 eta) for one Pauli case");
  std::string tmin_spec, tmin_case;
  tmin->add_option("--spec", tmin_spec, "SystemSpec JSON path");
  tmin->add_option("--case", tmin_case, "Case selector, e.g. s1s1:s3")
      ->required();

  // table1
  auto* table1 = app.add_subcommand(
      "table1", "Reset-time table in nanoseconds for the three published "
                "frequency sets");
  std::string table1_out;
  table1->add_option("--out", table1_out, "Write CSV here (stdout otherwise)");

  // simulate
  auto* simulate = app.add_subcommand(
      "simulate", "Exact joint evolution under a constant control field; "
                  "emits the qubit purity curve");
  std::string sim_spec, sim_out;
  double sim_duration = 0.0, sim_eps = 0.0;
  int sim_points = 600;
  bool sim_resonant = false;
  simulate->add_option("--spec", sim_spec, "SystemSpec JSON path");
  simulate->add_option("--duration", sim_duration, "Total evolution time")
      ->required();
  simulate->add_option("--points", sim_points, "Number of grid points");
  simulate->add_option("--eps", sim_eps, "Constant control amplitude");
  simulate->add_flag("--resonant", sim_resonant,
                     "Use the resonant amplitude (overrides --eps)");
  simulate->add_option("--out", sim_out, "Write CSV here (stdout otherwise)");

  // weyl
  auto* weyl = app.add_subcommand(
      "weyl", "Canonical two-qubit interaction coordinates of a 4x4 unitary");
  std::string weyl_gate, weyl_json;
  weyl->add_option("--gate", weyl_gate,
                   "Named gate: identity, cnot, swap, iswap");
  weyl->add_option("--json", weyl_json,
                   "Path to a JSON file with re/im arrays");

  // qsl-verify
  auto* qsl = app.add_subcommand(
      "qsl-verify", "Brute-force scan of the interaction torus: purity "
                    "ceiling, minimum total angle, optimizer set");
  double qsl_omega_b = 3.0, qsl_beta = 1.0;
  double qsl_pg = -1.0, qsl_pe = -1.0, qsl_gre = 0.0, qsl_gim = 0.0;
  int qsl_grid = 101;
  qsl->add_option("--omega-b", qsl_omega_b, "Ancilla gap for the thermal state");
  qsl->add_option("--beta", qsl_beta, "Inverse temperature");
  qsl->add_option("--pg", qsl_pg, "Ancilla ground population (overrides thermal)");
  qsl->add_option("--pe", qsl_pe, "Ancilla excited population");
  qsl->add_option("--gamma-re", qsl_gre, "Ancilla coherence, real part");
  qsl->add_option("--gamma-im", qsl_gim, "Ancilla coherence, imaginary part");
  qsl->add_option("--grid", qsl_grid, "Scan resolution per axis (>= 64)");

  // max-purity
  auto* maxp = app.add_subcommand(
      "max-purity", "Best achievable qubit purity by joint unitaries with a "
                    "thermal equidistant-level ancilla");
  int mp_db = 2;
  double mp_beta = 1.0, mp_gap = 3.0, mp_omega_s = 1.0;
  maxp->add_option("--d-b", mp_db, "Ancilla dimension")->required();
  maxp->add_option("--beta", mp_beta, "Inverse temperature");
  maxp->add_option("--gap", mp_gap, "Ancilla level spacing");
  maxp->add_option("--omega-s", mp_omega_s, "Qubit splitting");

  // epsilon-check
  auto* epsc = app.add_subcommand(
      "epsilon-check", "Eligibility test for resetting within eps of a pure "
                       "state, given the ancilla spectrum");
  std::vector<double> ec_spectrum;
  int ec_ds = 2;
  double ec_eps = 0.0;
  epsc->add_option("--spectrum", ec_spectrum,
                   "Ancilla eigenvalues (comma separated)")
      ->required()
      ->delimiter(',');
  epsc->add_option("--d-s", ec_ds, "System dimension");
  epsc->add_option("--eps", ec_eps, "Target infidelity")->required();

  // angle-scan
  auto* ascan = app.add_subcommand(
      "angle-scan", "Sweep one Bloch angle of the operator triple; reports "
                    "effective coupling, inverse reset time, and the "
                    "commutator measure");
  std::string as_spec, as_out, as_axis = "theta_c";
  int as_grid = 33;
  std::vector<double> as_angles;
  ascan->add_option("--axis", as_axis,
                    "One of theta_c, theta_s, theta_b, phi_c, phi_s, phi_b");
  ascan->add_option("--spec", as_spec, "SystemSpec JSON path");
  ascan->add_option("--grid", as_grid, "Number of sweep points");
  ascan->add_option("--angles", as_angles,
                    "Fixed angles phi_s,theta_s,phi_b,theta_b,phi_c,theta_c")
      ->delimiter(',');
  ascan->add_option("--out", as_out, "Write CSV here (stdout otherwise)");

  // optimize
  auto* opt = app.add_subcommand(
      "optimize", "Gradient ascent on end-time qubit purity over a "
                  "piecewise-constant control field");
  std::string opt_spec, opt_out, opt_pulse_csv, opt_second;
  double opt_tau = 0.0, opt_eps_max = 0.0;
  int opt_segments = 200, opt_max_iter = 500;
  opt->add_option("--spec", opt_spec, "SystemSpec JSON path");
  opt->add_option("--tau", opt_tau, "Pulse duration")->required();
  opt->add_option("--segments", opt_segments, "Number of pulse segments");
  opt->add_option("--eps-max", opt_eps_max, "Amplitude bound (0 = none)");
  opt->add_option("--second-control", opt_second,
                  "Second drive axis on the qubit, e.g. s1");
  opt->add_option("--max-iter", opt_max_iter, "Iteration cap");
  opt->add_option("--out", opt_out, "Write result JSON here");
  opt->add_option("--pulse-csv", opt_pulse_csv, "Write the pulse as CSV here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  if (classify->parsed()) {
    write_output(classify_out, classify_csv(classify_all_27()));
    return 0;
  }

  if (tmin->parsed()) {
    SystemSpec spec = load_spec(tmin_spec);
    CaseTriple c = parse_case(tmin_case);
    auto cp = case_parameters(c.o_s, c.o_b, c.o_c, spec);
    if (!cp) fail("NoPurification", "combination cannot purify");
    std::cout << scalar(eta_and_tmin(*cp).t_min) << "\n";
    return 0;
  }

  if (table1->parsed()) {
    write_output(table1_out, reset_time_table_csv(reset_time_table()));
    return 0;
  }

  if (simulate->parsed()) {
    SystemSpec spec = load_spec(sim_spec);
    if (sim_points < 2) fail("InvalidSpec", "need at least two grid points");
    double eps = sim_resonant ? resonant_amplitude(spec) : sim_eps;
    PulseSchedule pulse = PulseSchedule::constant(eps, sim_duration);
    std::vector<double> grid(sim_points);
    for (int k = 0; k < sim_points; ++k)
      grid[k] = sim_duration * k / (sim_points - 1);
    PurityCurve curve = simulate_purity(spec, pulse, thermal_joint(spec), grid);
    write_output(sim_out, purity_curve_csv(curve));
    std::cout << "peak_time=" << scalar(curve.peak_time)
              << " peak_purity=" << scalar(curve.peak_value) << "\n";
    return 0;
  }

  if (weyl->parsed()) {
    if (weyl_gate.empty() == weyl_json.empty())
      fail("InvalidSpec", "give exactly one of --gate or --json");
    Mat u = weyl_gate.empty() ? matrix_from_json(weyl_json)
                              : named_gate(weyl_gate);
    WeylCoordinates w = weyl_coordinates(u);
    std::cout << scalar(w.c1) << " " << scalar(w.c2) << " " << scalar(w.c3)
              << "\n";
    return 0;
  }

  if (qsl->parsed()) {
    AncillaLocalState anc =
        qsl_pg >= 0.0 && qsl_pe >= 0.0
            ? AncillaLocalState(qsl_pg, qsl_pe, Complex(qsl_gre, qsl_gim))
            : AncillaLocalState::thermal(qsl_omega_b, qsl_beta);
    QslResult rep = qsl_verify(anc, qsl_grid);
    std::cout << "max_purity=" << scalar(rep.max_purity) << "\n"
              << "min_total_angle=" << scalar(rep.min_total_angle) << "\n"
              << "optimizers=" << rep.optimizers.size() << "\n";
    for (const auto& o : rep.optimizers)
      std::cout << "optimizer=" << scalar(o.raw1) << "," << scalar(o.raw2)
                << "," << scalar(o.raw3) << "\n";
    std::cout << "stationarity=" << scalar(rep.worst_stationarity) << "\n";
    return 0;
  }

  if (maxp->parsed()) {
    if (mp_db < 2) fail("WrongAncillaDim", "ancilla needs at least two levels");
    Mat hb = Mat::Zero(mp_db, mp_db);
    for (int k = 0; k < mp_db; ++k) hb(k, k) = mp_gap * k;
    Mat qubit = thermal_state(0.5 * mp_omega_s * sigma(3), mp_beta);
    double p = max_qubit_purity(qubit, thermal_state(hb, mp_beta));
    std::cout << scalar(p) << "\n";
    if (mp_db == 2)
      std::cout << "note: two-level computed value " << scalar(p)
                << " is often quoted rounded as 0.905\n";
    return 0;
  }

  if (epsc->parsed()) {
    if (ec_spectrum.empty()) fail("InvalidSpec", "spectrum must be nonempty");
    Mat rho = Mat::Zero(ec_spectrum.size(), ec_spectrum.size());
    for (size_t k = 0; k < ec_spectrum.size(); ++k) rho(k, k) = ec_spectrum[k];
    EpsilonResetReport rep = epsilon_reset_check(rho, ec_ds, ec_eps);
    std::cout << "eligible=" << (rep.eligible ? "true" : "false") << "\n"
              << "small_count=" << rep.small_count << "\n"
              << "required_count=" << rep.required_count << "\n"
              << "threshold=" << scalar(rep.threshold) << "\n"
              << "achieved_infidelity=" << scalar(rep.achieved_infidelity)
              << "\n";
    return 0;
  }

  if (ascan->parsed()) {
    SystemSpec spec = load_spec(as_spec);
    ScanAxis axis;
    if (as_axis == "theta_c") axis = ScanAxis::ThetaC;
    else if (as_axis == "theta_s") axis = ScanAxis::ThetaS;
    else if (as_axis == "theta_b") axis = ScanAxis::ThetaB;
    else if (as_axis == "phi_c") axis = ScanAxis::PhiC;
    else if (as_axis == "phi_s") axis = ScanAxis::PhiS;
    else if (as_axis == "phi_b") axis = ScanAxis::PhiB;
    else fail("InvalidSpec", "unknown scan axis " + as_axis);
    SixAngles fixed{0.0, PI / 2, 0.0, PI / 2, 0.0, 0.0};
    if (!as_angles.empty()) {
      if (as_angles.size() != 6)
        fail("InvalidSpec", "--angles needs six values");
      fixed = {as_angles[0], as_angles[1], as_angles[2],
               as_angles[3], as_angles[4], as_angles[5]};
    }
    write_output(as_out, angle_scan_csv(angle_scan(axis, fixed, spec, as_grid)));
    return 0;
  }

  if (opt->parsed()) {
    SystemSpec spec = load_spec(opt_spec);
    OptimizeOptions options;
    options.max_iter = opt_max_iter;
    if (opt_eps_max > 0.0) options.eps_max = opt_eps_max;
    if (!opt_second.empty()) {
      if (opt_second.size() != 2 || opt_second[0] != 's' ||
          opt_second[1] < '1' || opt_second[1] > '3')
        fail("InvalidSpec", "second control selector must be s1, s2, or s3");
      options.second_control =
          OperatorSelector::from_pauli(opt_second[1] - '0');
    }
    OptimizationResult res =
        optimize_pulse(spec, thermal_joint(spec), opt_tau, opt_segments, options);
    if (!opt_out.empty()) write_output(opt_out, optimization_json(res));
    if (!opt_pulse_csv.empty()) write_output(opt_pulse_csv, pulse_csv(res.pulse));
    std::cout << "final_purity=" << scalar(res.final_purity)
              << " iterations=" << res.iterations
              << " converged=" << (res.converged ? "true" : "false")
              << (res.clamped_guess ? " clamped_guess=true" : "") << "\n";
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const nlohmann::json::parse_error& e) {
    std::cerr << "invalid JSON: " << e.what() << "\n";
    return 2;
  } catch (const qreset::Error& e) {
    std::cerr << e.what() << "\n";
    return is_validation_tag(e.tag()) ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
}
