#include "qreset/weyl_qsl.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "qreset/errors.hpp"
#include "qreset/parallel.hpp"

namespace qreset {

namespace {

constexpr double PI = std::numbers::pi;

double fold_axis(double v) {
  v = std::fmod(v, PI);
  if (v < 0) v += PI;
  if (v > 0.5 * PI) v = PI - v;
  return v;
}

double mod_pi(double v) {
  v = std::fmod(v, PI);
  if (v < 0) v += PI;
  return v;
}

// Elementary symmetric polynomials of four values, via the monic polynomial
// with those roots.
std::array<Complex, 4> esym(const std::array<Complex, 4>& z) {
  std::array<Complex, 5> coef{1.0, 0.0, 0.0, 0.0, 0.0};
  for (const Complex& r : z) {
    for (int k = 4; k >= 1; --k) coef[k] = coef[k] - r * coef[k - 1];
    // leading coefficient stays 1
  }
  return {-coef[1], coef[2], -coef[3], coef[4]};
}

std::array<Complex, 4> phases_of_triple(double c1, double c2, double c3) {
  std::array<double, 4> th = {0.5 * (c1 - c2 + c3), 0.5 * (-c1 + c2 + c3),
                              -0.5 * (c1 + c2 + c3), 0.5 * (c1 + c2 - c3)};
  std::array<Complex, 4> z;
  for (int k = 0; k < 4; ++k) z[k] = std::exp(Complex(0.0, 2.0 * th[k]));
  return z;
}

}  // namespace

WeylCoordinates WeylCoordinates::from_raw(double r1, double r2, double r3) {
  WeylCoordinates w;
  w.raw1 = r1;
  w.raw2 = r2;
  w.raw3 = r3;
  std::array<double, 3> f = {fold_axis(r1), fold_axis(r2), fold_axis(r3)};
  std::sort(f.begin(), f.end(), std::greater<double>());
  w.c1 = f[0];
  w.c2 = f[1];
  w.c3 = f[2];
  return w;
}

AncillaLocalState::AncillaLocalState(double p_g, double p_e, Complex gamma)
    : p_g_prime(p_g), p_e_prime(p_e), gamma_prime(gamma) {
  if (std::abs(p_g + p_e - 1.0) > 1e-8)
    fail("NotDensity", "populations must sum to one");
  if (p_g < -1e-8 || p_e < -1e-8)
    fail("NotDensity", "populations must be nonnegative");
  if (p_g * p_e - std::norm(gamma) < -1e-8)
    fail("NotDensity", "coherence exceeds the positivity bound");
}

AncillaLocalState AncillaLocalState::from_density(const Mat& rho) {
  if (rho.rows() != 2 || rho.cols() != 2)
    fail("DimensionMismatch", "ancilla state must be 2x2");
  if (!is_density(rho)) fail("NotDensity", "ancilla state");
  return AncillaLocalState(rho(1, 1).real(), rho(0, 0).real(), rho(0, 1));
}

AncillaLocalState AncillaLocalState::thermal(double omega_b, double beta) {
  if (beta < 0.0) fail("NegativeBeta", "thermal ancilla needs beta >= 0");
  double we = std::exp(-0.5 * beta * omega_b);
  double wg = std::exp(0.5 * beta * omega_b);
  return AncillaLocalState(wg / (we + wg), we / (we + wg), 0.0);
}

double AncillaLocalState::purity() const {
  return p_g_prime * p_g_prime + p_e_prime * p_e_prime +
         2.0 * std::norm(gamma_prime);
}

Mat magic_basis() {
  Mat q(4, 4);
  const Complex i(0.0, 1.0);
  q << 1, -i, 0, 0,
       0, 0, 1, -i,
       0, 0, -1, -i,
       1, i, 0, 0;
  return q / std::sqrt(2.0);
}

Mat canonical_gate(const WeylCoordinates& c) {
  Mat h = 0.5 * (c.raw1 * kron(sigma(1), sigma(1)) +
                 c.raw2 * kron(sigma(2), sigma(2)) +
                 c.raw3 * kron(sigma(3), sigma(3)));
  return propagator(h, -1.0);
}

WeylCoordinates weyl_coordinates(const Mat& u) {
  if (u.rows() != 4 || u.cols() != 4)
    fail("DimensionMismatch", "coordinates are defined for 4x4 unitaries");
  if (!is_unitary(u, 1e-8)) fail("NotUnitary", "coordinate extraction input");
  Complex det = u.determinant();
  Complex root = std::pow(std::abs(det), 0.25) *
                 std::exp(Complex(0.0, std::arg(det) / 4.0));
  Mat un = u / root;
  Mat q = magic_basis();
  Mat m = (q.adjoint() * un * q);
  Mat mm = m.transpose() * m;
  Eigen::ComplexEigenSolver<Mat> es(mm);
  if (es.info() != Eigen::Success)
    fail("DecompositionFailure", "spectrum of the symmetric product");
  std::array<Complex, 4> z;
  std::array<double, 4> th;
  for (int k = 0; k < 4; ++k) {
    z[k] = es.eigenvalues()(k);
    th[k] = 0.5 * std::arg(z[k]);
  }
  std::array<Complex, 4> target = esym(z);

  // The half-phases determine the triple up to ordering and pi shifts; the
  // fourth-root normalization adds a global sign ambiguity. Enumerate and
  // keep the candidate whose phase multiset reproduces the spectrum.
  std::array<int, 4> perm = {0, 1, 2, 3};
  std::sort(perm.begin(), perm.end());
  double best_err = 1e300;
  std::array<double, 3> best = {0, 0, 0};
  do {
    std::array<double, 4> t = {th[perm[0]], th[perm[1]], th[perm[2]],
                               th[perm[3]]};
    std::array<double, 3> base = {mod_pi(t[0] + t[3]), mod_pi(t[1] + t[3]),
                                  mod_pi(t[0] + t[1])};
    for (int s = 0; s < 8; ++s) {
      double c1 = base[0] + PI * (s & 1);
      double c2 = base[1] + PI * ((s >> 1) & 1);
      double c3 = base[2] + PI * ((s >> 2) & 1);
      std::array<Complex, 4> cand = esym(phases_of_triple(c1, c2, c3));
      double err = 0;
      for (int k = 0; k < 4; ++k)
        err = std::max(err, std::abs(cand[k] - target[k]));
      if (err < best_err) {
        best_err = err;
        best = {c1, c2, c3};
      }
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  WeylCoordinates w = WeylCoordinates::from_raw(best[0], best[1], best[2]);
  w.raw1 = w.c1;
  w.raw2 = w.c2;
  w.raw3 = w.c3;
  return w;
}

Mat unital_image(const WeylCoordinates& c, const AncillaLocalState& anc) {
  double s1 = std::sin(c.raw1), s2 = std::sin(c.raw2), s3 = std::sin(c.raw3);
  return Mat::Identity(2, 2) +
         2.0 * anc.gamma_prime.real() * s2 * s3 * sigma(1) -
         2.0 * anc.gamma_prime.imag() * s1 * s3 * sigma(2) -
         (anc.p_g_prime - anc.p_e_prime) * s1 * s2 * sigma(3);
}

bool is_unital(const WeylCoordinates& c, const AncillaLocalState& anc,
               double tol) {
  double s1 = std::sin(c.raw1), s2 = std::sin(c.raw2), s3 = std::sin(c.raw3);
  return std::abs(2.0 * anc.gamma_prime.real() * s2 * s3) <= tol &&
         std::abs(2.0 * anc.gamma_prime.imag() * s1 * s3) <= tol &&
         std::abs((anc.p_g_prime - anc.p_e_prime) * s1 * s2) <= tol;
}

double purity_at_coords(const WeylCoordinates& c, const AncillaLocalState& anc) {
  double s1 = std::sin(c.raw1) * std::sin(c.raw1);
  double s2 = std::sin(c.raw2) * std::sin(c.raw2);
  double s3 = std::sin(c.raw3) * std::sin(c.raw3);
  double alpha = anc.p_g_prime * anc.p_g_prime +
                 anc.p_e_prime * anc.p_e_prime - 0.5;
  double beta = 2.0 * anc.gamma_prime.real() * anc.gamma_prime.real();
  double delta = 2.0 * anc.gamma_prime.imag() * anc.gamma_prime.imag();
  return 0.5 + alpha * s1 * s2 + beta * s2 * s3 + delta * s1 * s3;
}

double tori_min_time(const WeylCoordinates& c, double j) {
  if (!(j > 0.0)) fail("InvalidCoupling", "coupling must be positive");
  return c.total_raw() / (2.0 * j);
}

QslResult qsl_verify(const AncillaLocalState& anc, int grid_n) {
  if (grid_n < 64) fail("InvalidSpec", "grid_n must be at least 64");
  const double pb = anc.purity();
  const double alpha = anc.p_g_prime * anc.p_g_prime +
                       anc.p_e_prime * anc.p_e_prime - 0.5;
  const double bcoef = 2.0 * anc.gamma_prime.real() * anc.gamma_prime.real();
  const double dcoef = 2.0 * anc.gamma_prime.imag() * anc.gamma_prime.imag();
  auto pur = [&](double a, double b, double c) {
    double s1 = std::sin(a) * std::sin(a);
    double s2 = std::sin(b) * std::sin(b);
    double s3 = std::sin(c) * std::sin(c);
    return 0.5 + alpha * s1 * s2 + bcoef * s2 * s3 + dcoef * s1 * s3;
  };
  const double slack = 1e-9;
  auto feasible = [&](double a, double b, double c) {
    return pur(a, b, c) >= pb - slack;
  };
  using Triple = std::array<double, 3>;
  auto lex_total_less = [](const Triple& x, const Triple& y) {
    double tx = x[0] + x[1] + x[2], ty = y[0] + y[1] + y[2];
    if (tx != ty) return tx < ty;
    return x < y;
  };

  // Grid pass: members of the maximizing set, kept small-total first. Each
  // plane writes its own slot, so the scan is thread-count independent.
  const double h = PI / (grid_n - 1);
  const size_t cap = 256;
  std::vector<std::vector<Triple>> planes(grid_n);
  parallel_for_blocks(grid_n, [&](size_t lo, size_t hi) {
    for (size_t i = lo; i < hi; ++i) {
      auto& plane = planes[i];
      double a = i * h;
      for (int jj = 0; jj < grid_n; ++jj) {
        double b = jj * h;
        for (int k = 0; k < grid_n; ++k) {
          double c = k * h;
          if (!feasible(a, b, c)) continue;
          plane.push_back({a, b, c});
          if (plane.size() >= 4096) {
            std::sort(plane.begin(), plane.end(), lex_total_less);
            plane.resize(cap);
          }
        }
      }
      std::sort(plane.begin(), plane.end(), lex_total_less);
      if (plane.size() > cap) plane.resize(cap);
    }
  });
  std::vector<Triple> seeds;
  for (const auto& plane : planes)
    seeds.insert(seeds.end(), plane.begin(), plane.end());
  std::sort(seeds.begin(), seeds.end(), lex_total_less);
  if (seeds.size() > cap) seeds.resize(cap);
  seeds.push_back({0.5 * PI, 0.5 * PI, 0.5 * PI});

  // Inside [0, pi/2]^3 the purity is nondecreasing in every coordinate, so
  // the smallest feasible value per axis is found by bisection.
  auto descend = [&](Triple t) {
    for (double& v : t) v = fold_axis(v);
    for (int round = 0; round < 8; ++round) {
      bool changed = false;
      for (int k = 0; k < 3; ++k) {
        Triple probe = t;
        probe[k] = 0.0;
        double v;
        if (feasible(probe[0], probe[1], probe[2])) {
          v = 0.0;
        } else {
          double lo = 0.0, hi = t[k];
          for (int it = 0; it < 60; ++it) {
            double mid = 0.5 * (lo + hi);
            probe[k] = mid;
            if (feasible(probe[0], probe[1], probe[2]))
              hi = mid;
            else
              lo = mid;
          }
          v = hi;
        }
        if (std::abs(v - t[k]) > 1e-12) changed = true;
        t[k] = v;
      }
      if (!changed) break;
    }
    // Snap near-exact coordinates when the snapped point stays feasible.
    for (int k = 0; k < 3; ++k)
      for (double tgt : {0.0, 0.5 * PI})
        if (std::abs(t[k] - tgt) <= 1.5e-4) {
          Triple probe = t;
          probe[k] = tgt;
          if (feasible(probe[0], probe[1], probe[2])) t[k] = tgt;
        }
    return t;
  };

  std::vector<Triple> finals;
  for (const Triple& s : seeds) {
    Triple t = descend(s);
    bool dup = false;
    for (const Triple& f : finals) {
      if (std::abs(f[0] - t[0]) < 1e-6 && std::abs(f[1] - t[1]) < 1e-6 &&
          std::abs(f[2] - t[2]) < 1e-6) {
        dup = true;
        break;
      }
    }
    if (!dup) finals.push_back(t);
  }

  double min_total = 1e300;
  for (const Triple& t : finals)
    min_total = std::min(min_total, t[0] + t[1] + t[2]);
  std::vector<Triple> opt;
  for (const Triple& t : finals)
    if (t[0] + t[1] + t[2] <= min_total + 1e-6) opt.push_back(t);
  std::sort(opt.begin(), opt.end());

  QslResult res;
  res.min_total_angle = min_total;
  res.max_purity = pur(0.5 * PI, 0.5 * PI, 0.5 * PI);
  double bigc = 0.5 * pb - 0.25 - std::norm(anc.gamma_prime);
  double re2 = anc.gamma_prime.real() * anc.gamma_prime.real();
  double im2 = anc.gamma_prime.imag() * anc.gamma_prime.imag();
  for (const Triple& t : opt) {
    res.optimizers.push_back(WeylCoordinates::from_raw(t[0], t[1], t[2]));
    double s1 = std::sin(t[0]) * std::sin(t[0]);
    double s2 = std::sin(t[1]) * std::sin(t[1]);
    double s3 = std::sin(t[2]) * std::sin(t[2]);
    double r1 = std::abs(std::sin(2 * t[0]) * (bigc * s2 + im2 * s3));
    double r2 = std::abs(std::sin(2 * t[1]) * (bigc * s1 + re2 * s3));
    double r3 = std::abs(std::sin(2 * t[2]) * (re2 * s2 + im2 * s1));
    res.worst_stationarity =
        std::max({res.worst_stationarity, r1, r2, r3});
  }
  return res;
}

}
