#include "qreset/control_opt.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "qreset/errors.hpp"
#include "qreset/format.hpp"

namespace qreset {

namespace {

struct Channels {
  const SystemSpec& spec;
  Mat o_c2;  // second-channel drive on the qubit, empty when single-channel
  int n = 0;
  double dt = 0.0;

  Mat hamiltonian(double e1, double e2) const {
    Mat h = build_hamiltonian(spec, e1);
    if (o_c2.size() > 0)
      h += e2 * kron(o_c2, Mat::Identity(spec.ancilla_dim(), spec.ancilla_dim()));
    return h;
  }
};

Channels make_channels(const SystemSpec& spec, const PulseSchedule& pulse,
                       const std::optional<PulseSchedule>& pulse2,
                       const std::optional<OperatorSelector>& second_control,
                       const Mat& rho0) {
  spec.validate();
  pulse.validate();
  if (pulse2.has_value() != second_control.has_value())
    fail("InvalidSpec", "second schedule and second selector go together");
  if (pulse2) {
    pulse2->validate();
    if (pulse2->n_segments() != pulse.n_segments() ||
        std::abs(pulse2->duration - pulse.duration) > 1e-12)
      fail("DimensionMismatch", "channels must share the segment grid");
  }
  int d = 2 * spec.ancilla_dim();
  if (rho0.rows() != d || rho0.cols() != d)
    fail("DimensionMismatch", "initial state size must match the model");
  if (!is_density(rho0)) fail("NotDensity", "initial state");
  Channels ch{spec, Mat(), pulse.n_segments(), pulse.segment_length()};
  if (second_control) ch.o_c2 = operator_of(*second_control);
  return ch;
}

Mat propagator_step(const Eig& e, double dt) {
  Vec phase(e.values.size());
  for (Eigen::Index k = 0; k < e.values.size(); ++k)
    phase(k) = std::exp(Complex(0.0, -e.values(k) * dt));
  return e.vectors * phase.asDiagonal() * e.vectors.adjoint();
}

// Derivative of exp(-i H dt) along X, in the eigenbasis of H.
Mat propagator_derivative(const Eig& e, double dt, const Mat& x) {
  Eigen::Index d = e.values.size();
  Mat xt = e.vectors.adjoint() * x * e.vectors;
  Mat g(d, d);
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index b = 0; b < d; ++b) {
      Complex da(0.0, -e.values(a) * dt), db(0.0, -e.values(b) * dt);
      Complex coef;
      if (std::abs(da - db) < 1e-12)
        coef = std::exp(da);
      else
        coef = (std::exp(da) - std::exp(db)) / (da - db);
      g(a, b) = coef * Complex(0.0, -dt) * xt(a, b);
    }
  return e.vectors * g * e.vectors.adjoint();
}

double purity_of_state(const Mat& rho, int d_b) {
  Mat rho_s = partial_trace(rho, 2, d_b, Keep::First);
  return (rho_s * rho_s).trace().real();
}

}  // namespace

double pulse_purity(const SystemSpec& spec, const Mat& rho0,
                    const PulseSchedule& pulse,
                    const std::optional<PulseSchedule>& pulse2,
                    const std::optional<OperatorSelector>& second_control) {
  Channels ch = make_channels(spec, pulse, pulse2, second_control, rho0);
  Mat rho = rho0;
  for (int k = 0; k < ch.n; ++k) {
    Eig e = hermitian_eig(ch.hamiltonian(
        pulse.amplitudes[k], pulse2 ? pulse2->amplitudes[k] : 0.0));
    Mat u = propagator_step(e, ch.dt);
    rho = u * rho * u.adjoint();
  }
  return purity_of_state(rho, spec.ancilla_dim());
}

std::vector<double> pulse_gradient(
    const SystemSpec& spec, const Mat& rho0, const PulseSchedule& pulse,
    const std::optional<PulseSchedule>& pulse2,
    const std::optional<OperatorSelector>& second_control) {
  Channels ch = make_channels(spec, pulse, pulse2, second_control, rho0);
  int d_b = spec.ancilla_dim();
  Mat id_b = Mat::Identity(d_b, d_b);
  Mat x1 = kron(operator_of(spec.o_c), id_b);
  Mat x2 = pulse2 ? kron(ch.o_c2, id_b) : Mat();

  std::vector<Eig> eigs(ch.n);
  std::vector<Mat> states(ch.n);  // state entering segment k
  Mat rho = rho0;
  for (int k = 0; k < ch.n; ++k) {
    states[k] = rho;
    eigs[k] = hermitian_eig(ch.hamiltonian(
        pulse.amplitudes[k], pulse2 ? pulse2->amplitudes[k] : 0.0));
    Mat u = propagator_step(eigs[k], ch.dt);
    rho = u * rho * u.adjoint();
  }

  Mat lambda = 2.0 * kron(partial_trace(rho, 2, d_b, Keep::First), id_b);
  std::vector<double> grad(pulse2 ? 2 * ch.n : ch.n, 0.0);
  for (int k = ch.n - 1; k >= 0; --k) {
    Mat u = propagator_step(eigs[k], ch.dt);
    Mat right = states[k] * u.adjoint();
    Mat du1 = propagator_derivative(eigs[k], ch.dt, x1);
    grad[k] = 2.0 * (lambda * du1 * right).trace().real();
    if (pulse2) {
      Mat du2 = propagator_derivative(eigs[k], ch.dt, x2);
      grad[ch.n + k] = 2.0 * (lambda * du2 * right).trace().real();
    }
    lambda = u.adjoint() * lambda * u;
  }
  return grad;
}

OptimizationResult optimize_pulse(const SystemSpec& spec, const Mat& rho0,
                                  double tau, int n_segments,
                                  const OptimizeOptions& opts) {
  spec.validate();
  if (!(tau > 0.0)) fail("PulseTooShort", "duration must be positive");
  if (n_segments < 1) fail("InvalidSpec", "need at least one segment");
  if (opts.eps_max && !(*opts.eps_max > 0.0))
    fail("InvalidEpsilon", "amplitude bound must be positive");

  OptimizationResult res;
  double guess = opts.initial_amplitude ? *opts.initial_amplitude
                                        : resonant_amplitude(spec);
  if (opts.eps_max && std::abs(guess) > *opts.eps_max) {
    guess = std::clamp(guess, -*opts.eps_max, *opts.eps_max);
    res.clamped_guess = true;
  }
  res.pulse.duration = tau;
  res.pulse.amplitudes.assign(n_segments, guess);
  res.pulse.eps_max = opts.eps_max;
  if (opts.second_control) {
    PulseSchedule p2;
    p2.duration = tau;
    p2.amplitudes.assign(n_segments, 0.0);
    p2.eps_max = opts.eps_max;
    res.pulse2 = p2;
  }

  auto clamp_amp = [&](double v) {
    return opts.eps_max ? std::clamp(v, -*opts.eps_max, *opts.eps_max) : v;
  };
  auto evaluate = [&](const PulseSchedule& p1,
                      const std::optional<PulseSchedule>& p2) {
    return pulse_purity(spec, rho0, p1, p2, opts.second_control);
  };

  double value = evaluate(res.pulse, res.pulse2);
  res.purity_history.push_back(value);
  double step = 1.0;
  for (int it = 0; it < opts.max_iter; ++it) {
    std::vector<double> g =
        pulse_gradient(spec, rho0, res.pulse, res.pulse2, opts.second_control);
    // Drop components that push against an active bound.
    if (opts.eps_max) {
      for (size_t k = 0; k < g.size(); ++k) {
        double a = k < size_t(n_segments)
                       ? res.pulse.amplitudes[k]
                       : res.pulse2->amplitudes[k - n_segments];
        if ((a >= *opts.eps_max - 1e-14 && g[k] > 0.0) ||
            (a <= -*opts.eps_max + 1e-14 && g[k] < 0.0))
          g[k] = 0.0;
      }
    }
    double gmax = 0.0, gsq = 0.0;
    for (double v : g) {
      gmax = std::max(gmax, std::abs(v));
      gsq += v * v;
    }
    if (gmax < opts.grad_tol) {
      res.converged = true;
      break;
    }
    bool accepted = false;
    for (int half = 0; half < 40; ++half) {
      PulseSchedule t1 = res.pulse;
      std::optional<PulseSchedule> t2 = res.pulse2;
      for (int k = 0; k < n_segments; ++k)
        t1.amplitudes[k] = clamp_amp(t1.amplitudes[k] + step * g[k]);
      if (t2)
        for (int k = 0; k < n_segments; ++k)
          t2->amplitudes[k] =
              clamp_amp(t2->amplitudes[k] + step * g[n_segments + k]);
      double trial = evaluate(t1, t2);
      if (trial >= value + 1e-4 * step * gsq) {
        res.pulse = t1;
        res.pulse2 = t2;
        value = trial;
        accepted = true;
        if (half == 0) step *= 2.0;
        break;
      }
      step *= 0.5;
    }
    ++res.iterations;
    if (!accepted) {
      res.converged = true;
      break;
    }
    res.purity_history.push_back(value);
  }
  res.final_purity = value;
  return res;
}

std::string pulse_csv(const PulseSchedule& pulse) {
  std::ostringstream out;
  out << "t,eps\n";
  double l = pulse.segment_length();
  for (int k = 0; k < pulse.n_segments(); ++k)
    out << num(k * l) << ',' << num(pulse.amplitudes[k]) << '\n';
  return out.str();
}

std::string optimization_json(const OptimizationResult& result) {
  nlohmann::json j;
  j["duration"] = result.pulse.duration;
  j["amplitudes"] = result.pulse.amplitudes;
  if (result.pulse2) j["amplitudes2"] = result.pulse2->amplitudes;
  j["final_purity"] = result.final_purity;
  j["iterations"] = result.iterations;
  j["converged"] = result.converged;
  j["clamped_guess"] = result.clamped_guess;
  j["purity_history"] = result.purity_history;
  return j.dump(2) + "\n";
}

}  // namespace qreset
