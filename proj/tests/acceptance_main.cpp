// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on failure.
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qreset/control_opt.hpp"
#include "qreset/lie_cartan.hpp"
#include "qreset/model.hpp"
#include "qreset/purity_majorization.hpp"
#include "qreset/reset_dynamics.hpp"
#include "qreset/weyl_qsl.hpp"

using namespace qreset;

namespace {

constexpr double kPi = 3.14159265358979323846;

const std::array<std::array<int, 3>, 16> kPurifiable = {{
    {1, 1, 1}, {1, 1, 2}, {1, 1, 3}, {1, 2, 1}, {1, 2, 2}, {1, 2, 3},
    {2, 1, 1}, {2, 1, 2}, {2, 1, 3}, {2, 2, 1}, {2, 2, 2}, {2, 2, 3},
    {3, 1, 1}, {3, 1, 2}, {3, 2, 1}, {3, 2, 2},
}};

SystemSpec pauli_spec(int o_s, int o_b, int o_c) {
  SystemSpec spec;
  spec.o_s = OperatorSelector::from_pauli(o_s);
  spec.o_b = OperatorSelector::from_pauli(o_b);
  spec.o_c = OperatorSelector::from_pauli(o_c);
  return spec;
}

Mat thermal_ancilla(const SystemSpec& spec) {
  return thermal_state(ancilla_hamiltonian(spec), spec.beta);
}

Mat thermal_joint(const SystemSpec& spec) {
  return kron(thermal_state(qubit_hamiltonian(spec, 0.0), spec.beta),
              thermal_ancilla(spec));
}

Mat random_density(int d, std::mt19937& rng) {
  std::normal_distribution<double> n;
  Mat m(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) m(r, c) = Complex(n(rng), n(rng));
  Mat rho = m * m.adjoint();
  return rho / rho.trace().real();
}

Mat random_su2(std::mt19937& rng) {
  std::normal_distribution<double> n;
  Mat h = Mat::Zero(2, 2);
  for (int k = 1; k <= 3; ++k) h += n(rng) * sigma(k);
  return propagator(h, 1.0);
}

std::string fmt(const char* pattern, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), pattern, a, b, c);
  return buf;
}

// ---------------------------------------------------------------------------

bool crit1(std::string& msg) {
  static const std::array<std::array<int, 7>, 27> expect = {{
      {1, 1, 1, 10, 4, 6, 2}, {1, 1, 2, 10, 4, 6, 2}, {1, 1, 3, 6, 2, 4, 2},
      {1, 2, 1, 10, 4, 6, 2}, {1, 2, 2, 10, 4, 6, 2}, {1, 2, 3, 6, 2, 4, 2},
      {1, 3, 1, 7, 4, 3, 1},  {1, 3, 2, 7, 4, 3, 1},  {1, 3, 3, 4, 2, 2, 1},
      {2, 1, 1, 10, 4, 6, 2}, {2, 1, 2, 10, 4, 6, 2}, {2, 1, 3, 6, 2, 4, 2},
      {2, 2, 1, 10, 4, 6, 2}, {2, 2, 2, 10, 4, 6, 2}, {2, 2, 3, 6, 2, 4, 2},
      {2, 3, 1, 7, 4, 3, 1},  {2, 3, 2, 7, 4, 3, 1},  {2, 3, 3, 4, 2, 2, 1},
      {3, 1, 1, 10, 4, 6, 2}, {3, 1, 2, 10, 4, 6, 2}, {3, 1, 3, 4, 2, 2, 1},
      {3, 2, 1, 10, 4, 6, 2}, {3, 2, 2, 10, 4, 6, 2}, {3, 2, 3, 4, 2, 2, 1},
      {3, 3, 1, 7, 4, 3, 1},  {3, 3, 2, 7, 4, 3, 1},  {3, 3, 3, 3, 2, 1, 1},
  }};
  std::vector<ClassifyRow> rows = classify_all_27();
  if (rows.size() != 27) {
    msg = "wrong row count";
    return false;
  }
  int purifiable = 0;
  for (size_t k = 0; k < rows.size(); ++k) {
    const auto& e = expect[k];
    const auto& r = rows[k];
    if (r.o_s != e[0] || r.o_b != e[1] || r.o_c != e[2] || r.dim_l != e[3] ||
        r.dim_k != e[4] || r.dim_p != e[5] || r.dim_a != e[6] ||
        r.purifiable != (e[6] == 2)) {
      msg = fmt("dimension mismatch at row %g", double(k));
      return false;
    }
    if (r.purifiable) ++purifiable;
  }
  msg = "27/27 dimension rows exact, 16 purifiable";
  return purifiable == 16;
}

bool crit2(std::string& msg) {
  SystemSpec spec;
  static const std::array<double, 3> targets = {46.9, 15.7, 16.7};
  struct Rep {
    int o_s, o_b, o_c;
    double target;
  };
  for (const Rep& r : {Rep{1, 1, 1, 46.9}, Rep{1, 1, 3, 15.7}, Rep{3, 1, 1, 16.7}}) {
    double t = eta_and_tmin(*case_parameters(r.o_s, r.o_b, r.o_c, spec)).t_min;
    if (std::abs(t - r.target) > 0.05) {
      msg = fmt("representative time %.4f misses %.1f", t, r.target);
      return false;
    }
  }
  for (const auto& c : kPurifiable) {
    double t = eta_and_tmin(*case_parameters(c[0], c[1], c[2], spec)).t_min;
    double best = 1e300;
    for (double tgt : targets) best = std::min(best, std::abs(t - tgt));
    if (best > 0.05) {
      msg = fmt("time %.4f for a purifiable row misses all three values", t);
      return false;
    }
  }
  msg = "times 46.939 / 15.708 / 16.661 within 0.05 of the three quoted values";
  return true;
}

bool crit3(std::string& msg) {
  static const std::array<int, 16> labels = {2, 1, 1, 2, 1, 1, 1, 2,
                                             1, 1, 2, 1, 3, 3, 3, 3};
  static const std::array<std::array<double, 3>, 3> published = {{
      {151.8, 49.3, 394.8},
      {191.0, 81.1, 402.3},
      {250.3, 62.2, 2054.6},
  }};
  std::vector<TableOneRow> rows = reset_time_table();
  if (rows.size() != 16) {
    msg = "wrong row count";
    return false;
  }
  double worst = 0.0;
  for (size_t k = 0; k < rows.size(); ++k) {
    const auto& p = published[labels[k] - 1];
    worst = std::max({worst, std::abs(rows[k].set1_ns - p[0]),
                      std::abs(rows[k].set2_ns - p[1]),
                      std::abs(rows[k].set3_ns - p[2])});
  }
  msg = fmt("48 nanosecond entries, worst deviation %.3e ns (allowed 0.1)", worst);
  return worst <= 0.1;
}

bool crit4(std::string& msg) {
  SystemSpec spec;
  double worst = 0.0;
  for (const auto& c : kPurifiable) {
    auto p = case_parameters(c[0], c[1], c[2], spec);
    Mat h = dressed_template(*p);
    double tmin = eta_and_tmin(*p).t_min;
    for (int k = 0; k < 20; ++k) {
      double t = 2.0 * tmin * k / 19.0;
      worst = std::max(worst,
                       max_abs(closed_form_propagator(t, *p) - propagator(h, t)));
    }
  }
  msg = fmt("16 cases x 20 times, worst entry deviation %.3e (allowed 1e-8)", worst);
  return worst <= 1e-8;
}

bool crit5(std::string& msg) {
  QubitInit init;
  double worst_dev = 0.0, worst_peak = 0.0;
  for (const auto& c : {std::array<int, 3>{1, 1, 1}, std::array<int, 3>{1, 1, 3}}) {
    SystemSpec spec = pauli_spec(c[0], c[1], c[2]);
    double z = std::exp(-spec.beta * spec.omega_s);
    init.p_e = z / (1.0 + z);
    init.p_g = 1.0 / (1.0 + z);
    double eps = resonant_amplitude(spec);
    double tmin = eta_and_tmin(*case_parameters(c[0], c[1], c[2], spec)).t_min;
    PulseSchedule pulse = PulseSchedule::constant(eps, 2.0 * tmin, 1);
    std::vector<double> grid;
    for (int k = 0; k <= 400; ++k) grid.push_back(2.0 * tmin * k / 400.0);
    PurityCurve exact = simulate_purity(spec, pulse, thermal_joint(spec), grid);
    for (size_t k = 0; k < grid.size(); ++k)
      worst_dev = std::max(worst_dev, std::abs(approx_purity(grid[k], spec, init) -
                                               exact.values[k]));
    worst_peak = std::max(worst_peak, std::abs(exact.peak_time - tmin) / tmin);
  }
  msg = fmt("approximation deviation %.3e (allowed 1e-2), peak offset %.2f%% (allowed 2%%)",
            worst_dev, 100.0 * worst_peak);
  return worst_dev <= 1e-2 && worst_peak <= 0.02;
}

bool crit6(std::string& msg) {
  SystemSpec base;
  const double pb0 = purity(thermal_ancilla(base));
  const double r_max = std::sqrt(2.0 * pb0 - 1.0);
  std::mt19937 rng(20250822);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> nd;
  double worst_over = -1e300;
  for (int trial = 0; trial < 200; ++trial) {
    const auto& c = kPurifiable[trial % 16];
    SystemSpec spec = pauli_spec(c[0], c[1], c[2]);
    double n1 = nd(rng), n2 = nd(rng), n3 = nd(rng);
    double nn = std::sqrt(n1 * n1 + n2 * n2 + n3 * n3) + 1e-300;
    double r = r_max * u(rng);
    Mat rho_s = 0.5 * (Mat::Identity(2, 2) +
                       (r / nn) * (n1 * sigma(1) + n2 * sigma(2) + n3 * sigma(3)));
    PulseSchedule pulse;
    if (trial % 2 == 0) {
      double tmin =
          eta_and_tmin(*case_parameters(c[0], c[1], c[2], spec)).t_min;
      pulse = PulseSchedule::constant(resonant_amplitude(spec), 2.0 * tmin, 1);
    } else {
      pulse.duration = 30.0;
      for (int s = 0; s < 6; ++s) pulse.amplitudes.push_back(1.8 * u(rng));
    }
    std::vector<double> grid;
    for (int k = 0; k <= 400; ++k) grid.push_back(pulse.duration * k / 400.0);
    PurityCurve curve =
        simulate_purity(spec, pulse, kron(rho_s, thermal_ancilla(spec)), grid);
    // The parabolic peak refinement can overshoot a rapidly oscillating curve;
    // the ceiling claim concerns the exact values, so those are checked.
    double top = *std::max_element(curve.values.begin(), curve.values.end());
    worst_over = std::max(worst_over, top - pb0);
    if (top > pb0 + 1e-9) {
      msg = fmt("bound violated by %.3e on trial %g", top - pb0, double(trial));
      return false;
    }
  }
  double worst_gap = 0.0;
  for (const auto& c : kPurifiable) {
    SystemSpec spec = pauli_spec(c[0], c[1], c[2]);
    double tmin = eta_and_tmin(*case_parameters(c[0], c[1], c[2], spec)).t_min;
    PulseSchedule pulse =
        PulseSchedule::constant(resonant_amplitude(spec), 2.2 * tmin, 1);
    std::vector<double> grid;
    for (int k = 0; k <= 1200; ++k) grid.push_back(2.2 * tmin * k / 1200.0);
    PurityCurve curve = simulate_purity(spec, pulse, thermal_joint(spec), grid);
    worst_gap = std::max(worst_gap, pb0 - curve.peak_value);
    if (curve.peak_value > pb0 + 1e-9) {
      msg = "thermal run broke the ceiling";
      return false;
    }
  }
  msg = fmt("200 random peaks at most %.2e above the ceiling; thermal reach gap %.2e (allowed 5e-3)",
            worst_over, worst_gap);
  return worst_gap <= 5e-3;
}

bool crit7(std::string& msg) {
  struct Family {
    AncillaLocalState anc;
    std::array<double, 3> opt;
    bool check_total;
  };
  const std::vector<Family> families = {
      {AncillaLocalState::thermal(3.0, 1.0), {kPi / 2, kPi / 2, 0.0}, true},
      {AncillaLocalState(0.5, 0.5, Complex(0.3, 0.0)), {0.0, kPi / 2, kPi / 2}, false},
      {AncillaLocalState(0.5, 0.5, Complex(0.0, 0.3)), {kPi / 2, 0.0, kPi / 2}, false},
  };
  double worst_stat = 0.0, worst_opt = 0.0;
  for (const Family& f : families) {
    QslResult rep = qsl_verify(f.anc, 101);
    if (f.check_total && std::abs(rep.min_total_angle - kPi) > 1e-3) {
      msg = fmt("minimum total angle %.6f misses pi by more than 1e-3",
                rep.min_total_angle);
      return false;
    }
    if (rep.optimizers.empty()) {
      msg = "no optimizer returned";
      return false;
    }
    const WeylCoordinates& o = rep.optimizers.front();
    double dev = std::abs(o.raw1 - f.opt[0]) + std::abs(o.raw2 - f.opt[1]) +
                 std::abs(o.raw3 - f.opt[2]);
    worst_opt = std::max(worst_opt, dev);
    worst_stat = std::max(worst_stat, rep.worst_stationarity);
    if (dev > 1e-4) {
      msg = fmt("optimizer (%.4f, %.4f, %.4f) misses its family", o.raw1, o.raw2,
                o.raw3);
      return false;
    }
  }
  msg = fmt("three optimizer families recovered (offset %.1e); stationarity %.1e (allowed 1e-6)",
            worst_opt, worst_stat);
  return worst_stat <= 1e-6;
}

bool crit8(std::string& msg) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto random_anc = [&]() {
    double pe = 0.5 * u(rng);
    double cap = std::sqrt((1.0 - pe) * pe);
    Complex g = std::polar(0.95 * cap * u(rng), 2.0 * kPi * u(rng));
    return AncillaLocalState(1.0 - pe, pe, g);
  };
  auto kernel_image = [](const WeylCoordinates& c, const AncillaLocalState& anc) {
    Mat rb(2, 2);
    rb << anc.p_e_prime, anc.gamma_prime, std::conj(anc.gamma_prime),
        anc.p_g_prime;
    Mat a = canonical_gate(c);
    return partial_trace(a * kron(Mat::Identity(2, 2), rb) * a.adjoint(), 2, 2,
                         Keep::First);
  };
  double worst_single = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    double r[3] = {0, 0, 0};
    r[trial % 3] = kPi * u(rng);
    WeylCoordinates c = WeylCoordinates::from_raw(r[0], r[1], r[2]);
    AncillaLocalState anc = random_anc();
    worst_single = std::max(
        {worst_single, max_abs(unital_image(c, anc) - Mat::Identity(2, 2)),
         max_abs(kernel_image(c, anc) - Mat::Identity(2, 2))});
  }
  if (worst_single > 1e-12) {
    msg = fmt("single-axis image off identity by %.3e", worst_single);
    return false;
  }
  double worst_full = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    WeylCoordinates c =
        WeylCoordinates::from_raw(kPi * u(rng), kPi * u(rng), kPi * u(rng));
    AncillaLocalState anc = random_anc();
    worst_full =
        std::max(worst_full, max_abs(unital_image(c, anc) - kernel_image(c, anc)));
  }
  msg = fmt("single-axis identity to %.1e; closed form vs kernel to %.1e (allowed 1e-10)",
            worst_single, worst_full);
  return worst_full <= 1e-10;
}

bool crit9(std::string& msg) {
  Mat cnot = Mat::Zero(4, 4);
  cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1;
  WeylCoordinates wc = weyl_coordinates(cnot);
  if (std::abs(wc.c1 - kPi / 2) > 1e-9 || std::abs(wc.c2) > 1e-9 ||
      std::abs(wc.c3) > 1e-9) {
    msg = "cnot missed (pi/2, 0, 0)";
    return false;
  }
  std::mt19937 rng(20240817);
  std::uniform_real_distribution<double> u(0.0, kPi / 2);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    double a = u(rng), b = u(rng), c = u(rng);
    if (a < b) std::swap(a, b);
    if (b < c) std::swap(b, c);
    if (a < b) std::swap(a, b);
    WeylCoordinates in = WeylCoordinates::from_raw(a, b, c);
    Mat k1 = kron(random_su2(rng), random_su2(rng));
    Mat k2 = kron(random_su2(rng), random_su2(rng));
    WeylCoordinates out = weyl_coordinates(k1 * canonical_gate(in) * k2);
    worst = std::max(worst, std::abs(out.c1 - in.c1) + std::abs(out.c2 - in.c2) +
                                std::abs(out.c3 - in.c3));
  }
  msg = fmt("200 roundtrips, worst coordinate error %.3e (allowed 1e-7)", worst);
  return worst <= 1e-7;
}

bool crit10(std::string& msg) {
  Mat qubit = thermal_state(0.5 * sigma(3), 1.0);
  auto value = [&](int d) {
    Mat hb = Mat::Zero(d, d);
    for (int k = 0; k < d; ++k) hb(k, k) = 3.0 * k;
    return max_qubit_purity(qubit, thermal_state(hb, 1.0));
  };
  double p2 = value(2), p3 = value(3), p4 = value(4);
  bool ok = std::abs(p3 - 0.97034) <= 1e-3 && std::abs(p3 - 0.970) <= 1e-2 &&
            std::abs(p4 - 0.99506) <= 1e-3 && std::abs(p4 - 0.995) <= 1e-2 &&
            std::abs(p2 - 0.9097) <= 5e-4;
  std::ostringstream out;
  out << fmt("d_B=3 -> %.5f, d_B=4 -> %.5f; ", p3, p4)
      << fmt("d_B=2 computed %.4f, not the often-quoted 0.905 (flagged in the CLI)", p2);
  msg = out.str();
  return ok && std::abs(p2 - 0.905) > 3e-3;
}

bool crit11(std::string& msg) {
  std::mt19937 rng(5150);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  struct Pair {
    int d_s, d_b;
    double eps;
  };
  double worst_inf_margin = 0.0;
  int exhaustive_checked = 0;
  for (const Pair& pr : {Pair{2, 2, 0.4}, Pair{2, 3, 0.4}, Pair{2, 4, 0.4},
                         Pair{3, 3, 0.6}}) {
    int required = (pr.d_b * (pr.d_s - 1) + pr.d_s - 1) / pr.d_s;
    double threshold = pr.eps / (2.0 * pr.d_b * (pr.d_s - 1));
    int eligible_count = 0, attempts = 0;
    while (eligible_count < 100 && attempts < 100000) {
      ++attempts;
      std::vector<double> b(pr.d_b);
      for (int k = 0; k < pr.d_b; ++k)
        b[k] = k < required ? (1e-6 + 0.9 * threshold * u(rng))
                            : (1.0 + u(rng));
      double total = std::accumulate(b.begin(), b.end(), 0.0);
      for (double& v : b) v /= total;
      Mat rho_b = Mat::Zero(pr.d_b, pr.d_b);
      for (int k = 0; k < pr.d_b; ++k) rho_b(k, k) = b[k];
      EpsilonResetReport rep = epsilon_reset_check(rho_b, pr.d_s, pr.eps);
      if (!rep.eligible) continue;
      ++eligible_count;
      worst_inf_margin =
          std::max(worst_inf_margin, rep.achieved_infidelity - pr.eps);
      if (rep.achieved_infidelity > pr.eps + 1e-12) {
        msg = fmt("infidelity %.3e exceeds eps %.2f", rep.achieved_infidelity,
                  pr.eps);
        return false;
      }
      if (pr.d_s * pr.d_b <= 8) {
        Mat mixed = Mat::Identity(pr.d_s, pr.d_s) / double(pr.d_s);
        SpectrumPartition part = optimal_reshuffle(mixed, rho_b);
        double greedy = 0.0;
        for (double v : part.s_prime) greedy += v * v;
        std::vector<int> assign;
        for (int g = 0; g < pr.d_s; ++g)
          for (int k = 0; k < pr.d_b; ++k) assign.push_back(g);
        std::sort(assign.begin(), assign.end());
        double best = 0.0;
        do {
          std::vector<double> s(pr.d_s, 0.0);
          for (size_t k = 0; k < assign.size(); ++k)
            s[assign[k]] += part.lambda[k];
          double p = 0.0;
          for (double v : s) p += v * v;
          best = std::max(best, p);
        } while (std::next_permutation(assign.begin(), assign.end()));
        ++exhaustive_checked;
        if (std::abs(best - greedy) > 1e-12) {
          msg = fmt("greedy %.12f vs exhaustive %.12f", greedy, best);
          return false;
        }
      }
    }
    if (eligible_count < 100) {
      msg = "could not draw 100 eligible spectra";
      return false;
    }
  }
  msg = fmt("400 eligible spectra within eps (margin %.1e); greedy matched exhaustive on %g instances",
            worst_inf_margin, double(exhaustive_checked));
  return true;
}

bool crit12(std::string& msg) {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst_rel = 0.0;
  for (int cfg = 0; cfg < 20; ++cfg) {
    const auto& c = kPurifiable[cfg % 16];
    SystemSpec spec = pauli_spec(c[0], c[1], c[2]);
    PulseSchedule pulse;
    pulse.duration = 5.0 + 10.0 * u(rng);
    for (int s = 0; s < 5; ++s) pulse.amplitudes.push_back(1.5 * u(rng));
    Mat rho0 = thermal_joint(spec);
    std::vector<double> g = pulse_gradient(spec, rho0, pulse);
    double scale = 0.0, dev = 0.0;
    for (size_t k = 0; k < g.size(); ++k) {
      const double h = 1e-6;
      PulseSchedule up = pulse, dn = pulse;
      up.amplitudes[k] += h;
      dn.amplitudes[k] -= h;
      double fd =
          (pulse_purity(spec, rho0, up) - pulse_purity(spec, rho0, dn)) / (2 * h);
      dev = std::max(dev, std::abs(g[k] - fd));
      scale = std::max(scale, std::abs(fd));
    }
    worst_rel = std::max(worst_rel, dev / std::max(scale, 1e-12));
  }
  if (worst_rel > 1e-5) {
    msg = fmt("gradient relative error %.3e (allowed 1e-5)", worst_rel);
    return false;
  }

  SystemSpec spec = pauli_spec(1, 1, 3);
  const double pb0 = purity(thermal_ancilla(spec));
  double eps = resonant_amplitude(spec);
  double tmin = eta_and_tmin(*case_parameters(1, 1, 3, spec)).t_min;
  Mat rho0 = thermal_joint(spec);
  double base_full =
      pulse_purity(spec, rho0, PulseSchedule::constant(eps, tmin, 1));
  OptimizeOptions opts;
  opts.max_iter = 200;
  OptimizationResult at_tmin = optimize_pulse(spec, rho0, tmin, 60, opts);
  double improvement = at_tmin.final_purity - base_full;
  if (improvement > 1e-4) {
    msg = fmt("unexpected improvement %.3e at the full reset time", improvement);
    return false;
  }

  Mat rho_s = Mat::Zero(2, 2);
  rho_s(0, 0) = 0.3;
  rho_s(1, 1) = 0.7;
  rho_s(0, 1) = Complex(0.18, 0.1);
  rho_s(1, 0) = std::conj(rho_s(0, 1));
  Mat rho_c = kron(rho_s, thermal_ancilla(spec));
  double tau = 0.5 * tmin;
  double base_half =
      pulse_purity(spec, rho_c, PulseSchedule::constant(eps, tau, 1));
  OptimizationResult at_half = optimize_pulse(spec, rho_c, tau, 60, opts);
  double gain = at_half.final_purity - base_half;
  bool ceiling = at_tmin.final_purity <= pb0 + 1e-9 &&
                 at_half.final_purity <= pb0 + 1e-9;
  msg = fmt("gradient to %.1e; full-time improvement %.1e; half-time gain %.1e; ceiling kept",
            worst_rel, improvement, gain);
  return gain > 1e-5 && ceiling;
}

bool crit13(std::string& msg) {
  std::mt19937 rng(424242);
  std::uniform_real_distribution<double> u(0.0, 1.5);
  double worst_margin = -1e300;
  for (int trial = 0; trial < 100; ++trial) {
    const auto& c = kPurifiable[trial % 16];
    SystemSpec spec = pauli_spec(c[0], c[1], c[2]);
    HeatReport hr = heat_bound(spec, u(rng), random_density(4, rng));
    worst_margin = std::max(worst_margin, std::abs(hr.q_dot) - hr.bound);
    if (std::abs(hr.q_dot) > hr.bound + 1e-9) {
      msg = fmt("heating rate exceeded the bound by %.3e",
                std::abs(hr.q_dot) - hr.bound);
      return false;
    }
  }
  msg = fmt("100 instants under the bound, worst margin %.2e", worst_margin);
  return true;
}

bool crit14(std::string& msg) {
  SystemSpec spec;
  SixAngles sweep1;  // sigma3-type system axis, sigma1-type bath axis
  sweep1.theta_s = 0.0;
  sweep1.theta_b = kPi / 2;
  std::vector<AngleScanRow> rows = angle_scan(ScanAxis::ThetaC, sweep1, spec, 33);
  size_t ia = 0, it = 0;
  for (size_t k = 1; k < rows.size(); ++k) {
    if (rows[k].abs_abar > rows[ia].abs_abar) ia = k;
    if (rows[k].inv_tmin > rows[it].inv_tmin) it = k;
  }
  size_t gap = ia > it ? ia - it : it - ia;
  if (gap > 1) {
    msg = fmt("coupling peak at index %g but rate peak at index %g", double(ia),
              double(it));
    return false;
  }

  SixAngles sweep2;  // sigma1-type system axis
  sweep2.theta_s = kPi / 2;
  sweep2.theta_b = kPi / 2;
  std::vector<AngleScanRow> rows2 = angle_scan(ScanAxis::ThetaC, sweep2, spec, 33);
  int locus = 0;
  for (const AngleScanRow& r : rows2) {
    bool a_max = r.abs_abar >= spec.j * (1.0 - 1e-9);
    bool c_max = r.c >= 1.0 - 1e-9;
    if (a_max != c_max) {
      msg = fmt("loci differ at angle %.4f", r.angle);
      return false;
    }
    if (a_max) ++locus;
  }
  if (locus == 0) {
    msg = "empty coincidence locus";
    return false;
  }
  msg = fmt("peak indices %g/%g coincide; %g coincidence points on the second sweep",
            double(ia), double(it), double(locus));
  return true;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;  // 0 when untimed
    std::function<bool(std::string&)> fn;
  };
  const std::vector<Criterion> criteria = {
      {1, "operator-algebra dimension table", 10.0, crit1},
      {2, "minimum reset times at default parameters", 5.0, crit2},
      {3, "nanosecond reset-time table", 1.0, crit3},
      {4, "closed-form propagators vs exact diagonalization", 0.0, crit4},
      {5, "rotating-frame purity approximation", 0.0, crit5},
      {6, "purity-swap ceiling and thermal reach", 0.0, crit6},
      {7, "minimum-angle brute force and optimizer families", 60.0, crit7},
      {8, "unital images and closed-form channel", 0.0, crit8},
      {9, "canonical-coordinate roundtrip", 0.0, crit9},
      {10, "qudit ancilla purities", 0.0, crit10},
      {11, "eps-reset eligibility and greedy optimality", 0.0, crit11},
      {12, "gradient optimizer properties", 0.0, crit12},
      {13, "heating-rate bound", 0.0, crit13},
      {14, "angle-scan concurrence", 0.0, crit14},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    std::string msg;
    bool ok = false;
    try {
      ok = c.fn(msg);
    } catch (const std::exception& e) {
      msg = std::string("exception: ") + e.what();
    }
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (c.limit_s > 0.0 && elapsed > c.limit_s) {
      ok = false;
      msg += fmt(" [exceeded %g s limit]", c.limit_s);
    }
    std::printf("%s criterion %d: %s: %s (%.2f s)\n", ok ? "PASS" : "FAIL",
                c.id, c.name, msg.c_str(), elapsed);
    if (!ok) ++failures;
  }
  if (failures > 0) {
    std::printf("%d of 14 criteria failed\n", failures);
    return 1;
  }
  std::printf("all 14 criteria passed\n");
  return 0;
}
