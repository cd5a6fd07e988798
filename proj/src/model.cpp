#include "qreset/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <json.hpp>

#include "qreset/errors.hpp"
#include "qreset/format.hpp"

namespace qreset {

OperatorSelector OperatorSelector::from_pauli(int k) {
  if (k < 1 || k > 3) fail("InvalidSpec", "pauli index must be 1..3");
  OperatorSelector s;
  s.pauli = k;
  return s;
}

OperatorSelector OperatorSelector::from_angles(double phi, double theta) {
  OperatorSelector s;
  s.pauli = 0;
  s.phi = phi;
  s.theta = theta;
  return s;
}

Mat operator_of(const OperatorSelector& sel) {
  if (sel.is_pauli()) return sigma(sel.pauli);
  return std::cos(sel.phi) * std::sin(sel.theta) * sigma(1) +
         std::sin(sel.phi) * std::sin(sel.theta) * sigma(2) +
         std::cos(sel.theta) * sigma(3);
}

double SystemSpec::omega_b() const {
  if (ancilla_dim() != 2)
    fail("WrongAncillaDim", "two-level splitting needs exactly 2 levels");
  return ancilla_levels[1] - ancilla_levels[0];
}

double SystemSpec::gap01() const {
  if (ancilla_dim() < 2) fail("WrongAncillaDim", "need at least 2 levels");
  return ancilla_levels[1] - ancilla_levels[0];
}

void SystemSpec::validate() const {
  if (!(omega_s > 0.0)) fail("InvalidSpec", "omega_s must be positive");
  if (!(j > 0.0)) fail("InvalidCoupling", "j must be positive");
  if (beta < 0.0) fail("NegativeBeta", "beta must be nonnegative");
  if (ancilla_dim() < 2) fail("WrongAncillaDim", "need at least 2 levels");
  for (size_t k = 1; k < ancilla_levels.size(); ++k)
    if (!(ancilla_levels[k] > ancilla_levels[k - 1]))
      fail("WrongAncillaDim", "levels must be strictly ascending");
}

namespace {

OperatorSelector selector_from_json(const nlohmann::json& js, const std::string& where) {
  if (!js.is_object()) fail("InvalidSpec", where + " must be an object");
  std::set<std::string> keys;
  for (auto& item : js.items()) keys.insert(item.key());
  if (keys == std::set<std::string>{"pauli"}) {
    if (!js["pauli"].is_number_integer())
      fail("InvalidSpec", where + ".pauli must be an integer");
    return OperatorSelector::from_pauli(js["pauli"].get<int>());
  }
  if (keys == std::set<std::string>{"phi", "theta"}) {
    if (!js["phi"].is_number() || !js["theta"].is_number())
      fail("InvalidSpec", where + " angles must be numbers");
    return OperatorSelector::from_angles(js["phi"].get<double>(),
                                         js["theta"].get<double>());
  }
  for (const auto& k : keys)
    if (k != "pauli" && k != "phi" && k != "theta")
      fail("UnknownKey", where + "." + k);
  fail("InvalidSpec", where + " needs either {pauli} or {phi, theta}");
}

}  // namespace

SystemSpec SystemSpec::from_json_text(const std::string& text) {
  nlohmann::json js = nlohmann::json::parse(text);
  if (!js.is_object()) fail("InvalidSpec", "top level must be an object");
  static const std::set<std::string> allowed = {
      "omega_s", "ancilla_levels", "j", "beta", "o_s", "o_b", "o_c"};
  for (auto& item : js.items())
    if (!allowed.count(item.key())) fail("UnknownKey", item.key());

  SystemSpec spec;
  if (js.contains("omega_s")) {
    if (!js["omega_s"].is_number()) fail("InvalidSpec", "omega_s must be a number");
    spec.omega_s = js["omega_s"].get<double>();
  }
  if (js.contains("ancilla_levels")) {
    if (!js["ancilla_levels"].is_array())
      fail("InvalidSpec", "ancilla_levels must be an array");
    spec.ancilla_levels.clear();
    for (const auto& v : js["ancilla_levels"]) {
      if (!v.is_number()) fail("InvalidSpec", "ancilla_levels entries must be numbers");
      spec.ancilla_levels.push_back(v.get<double>());
    }
  }
  if (js.contains("j")) {
    if (!js["j"].is_number()) fail("InvalidSpec", "j must be a number");
    spec.j = js["j"].get<double>();
  }
  if (js.contains("beta")) {
    if (!js["beta"].is_number()) fail("InvalidSpec", "beta must be a number");
    spec.beta = js["beta"].get<double>();
  }
  if (js.contains("o_s")) spec.o_s = selector_from_json(js["o_s"], "o_s");
  if (js.contains("o_b")) spec.o_b = selector_from_json(js["o_b"], "o_b");
  if (js.contains("o_c")) spec.o_c = selector_from_json(js["o_c"], "o_c");
  spec.validate();
  return spec;
}

std::string SystemSpec::to_json_text() const {
  nlohmann::json js;
  js["omega_s"] = omega_s;
  js["ancilla_levels"] = ancilla_levels;
  js["j"] = j;
  js["beta"] = beta;
  auto sel = [](const OperatorSelector& s) {
    nlohmann::json o;
    if (s.is_pauli())
      o["pauli"] = s.pauli;
    else {
      o["phi"] = s.phi;
      o["theta"] = s.theta;
    }
    return o;
  };
  js["o_s"] = sel(o_s);
  js["o_b"] = sel(o_b);
  js["o_c"] = sel(o_c);
  return js.dump(2);
}

Mat thermal_state(const Mat& h, double beta) {
  if (beta < 0.0) fail("NegativeBeta", "thermal state needs beta >= 0");
  Eig e = hermitian_eig(h);
  Eigen::VectorXd w(e.values.size());
  double lo = e.values.minCoeff();
  for (Eigen::Index k = 0; k < e.values.size(); ++k)
    w(k) = std::exp(-beta * (e.values(k) - lo));
  w /= w.sum();
  return e.vectors * w.cast<Complex>().asDiagonal() * e.vectors.adjoint();
}

Mat qubit_hamiltonian(const SystemSpec& spec, double eps) {
  return 0.5 * spec.omega_s * sigma(3) + eps * operator_of(spec.o_c);
}

Mat ancilla_hamiltonian(const SystemSpec& spec) {
  int d = spec.ancilla_dim();
  Mat h = Mat::Zero(d, d);
  for (int k = 0; k < d; ++k) h(k, k) = spec.ancilla_levels[d - 1 - k];
  return h;
}

Mat ladder(int d) {
  if (d < 2) fail("WrongAncillaDim", "ladder needs dimension >= 2");
  Mat a = Mat::Zero(d, d);
  for (int c = 0; c + 1 < d; ++c) a(c + 1, c) = std::sqrt(double(d - 1 - c));
  return a;
}

Mat build_hamiltonian(const SystemSpec& spec, double eps) {
  spec.validate();
  if (spec.ancilla_dim() != 2) return build_qudit_hamiltonian(spec, eps);
  Mat hs = qubit_hamiltonian(spec, eps);
  Mat hb = 0.5 * spec.omega_b() * sigma(3);
  Mat id2 = Mat::Identity(2, 2);
  return kron(hs, id2) + kron(id2, hb) +
         spec.j * kron(operator_of(spec.o_s), operator_of(spec.o_b));
}

Mat build_qudit_hamiltonian(const SystemSpec& spec, double eps) {
  spec.validate();
  int d = spec.ancilla_dim();
  Mat hs = qubit_hamiltonian(spec, eps);
  Mat hb = ancilla_hamiltonian(spec);
  Mat a = ladder(d);
  Mat coupling = a + a.adjoint();
  return kron(hs, Mat::Identity(d, d)) + kron(Mat::Identity(2, 2), hb) +
         spec.j * kron(operator_of(spec.o_s), coupling);
}

double dressed_splitting(const SystemSpec& spec, double eps) {
  Eig e = hermitian_eig(qubit_hamiltonian(spec, eps));
  return e.values(1) - e.values(0);
}

double resonant_amplitude(const SystemSpec& spec) {
  spec.validate();
  double target = spec.gap01();
  // Splitting is 2|omega_s/2 z + eps n_c|: decreasing until the stationary
  // amplitude, then strictly increasing and unbounded.
  double cos_tc = spec.o_c.is_pauli() ? (spec.o_c.pauli == 3 ? 1.0 : 0.0)
                                      : std::cos(spec.o_c.theta);
  double lo = std::max(0.0, -0.5 * spec.omega_s * cos_tc);
  double f_lo = dressed_splitting(spec, lo);
  if (target < f_lo - 1e-12)
    fail("NoResonance", "splitting never reaches the ancilla gap");
  if (target <= f_lo) return lo;
  double hi = std::max(1.0, target);
  while (dressed_splitting(spec, hi) < target) {
    hi *= 2.0;
    if (hi > 1e12) fail("NoResonance", "no amplitude reaches the ancilla gap");
  }
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (dressed_splitting(spec, mid) < target)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-14 * std::max(1.0, hi)) break;
  }
  double eps = 0.5 * (lo + hi);
  if (std::abs(dressed_splitting(spec, eps) - target) > 1e-10)
    fail("NoResonance", "bisection failed to meet the gap within 1e-10");
  return eps;
}

}
