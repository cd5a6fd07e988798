#pragma once

#include <vector>

#include "qreset/operator_core.hpp"

namespace qreset {

// Nonlocal content of a two-qubit gate. raw* is the triple as constructed or
// as supplied; c1 >= c2 >= c3 is its image in the canonical cell
// pi/2 >= c1 >= c2 >= c3 >= 0 (each coordinate mod pi, reflected at pi/2,
// then sorted). Purity and image formulas evaluate on the raw triple since
// the axis attachment matters.
struct WeylCoordinates {
  double c1 = 0, c2 = 0, c3 = 0;
  double raw1 = 0, raw2 = 0, raw3 = 0;

  static WeylCoordinates from_raw(double r1, double r2, double r3);
  double total_raw() const { return raw1 + raw2 + raw3; }
};

// Qubit-basis ancilla state after the local pre-rotation: populations on the
// diagonal, one coherence. Constructor validates trace one and positivity to
// 1e-8; throws NotDensity.
struct AncillaLocalState {
  double p_g_prime;
  double p_e_prime;
  Complex gamma_prime;

  AncillaLocalState(double p_g, double p_e, Complex gamma);
  static AncillaLocalState from_density(const Mat& rho);
  static AncillaLocalState thermal(double omega_b, double beta);
  double purity() const;
};

Mat magic_basis();

// exp((i/2) (r1 s1xs1 + r2 s2xs2 + r3 s3xs3)) on the raw triple.
Mat canonical_gate(const WeylCoordinates& c);

// Canonical coordinates of a 4x4 unitary; throws NotUnitary.
WeylCoordinates weyl_coordinates(const Mat& u);

// Image of the identity under the induced qubit channel, trace 2.
Mat unital_image(const WeylCoordinates& c, const AncillaLocalState& anc);
bool is_unital(const WeylCoordinates& c, const AncillaLocalState& anc,
               double tol = 1e-12);

// Qubit purity after the gate at these coordinates.
double purity_at_coords(const WeylCoordinates& c, const AncillaLocalState& anc);

// Sum of raw coordinates over twice the coupling; throws InvalidCoupling.
double tori_min_time(const WeylCoordinates& c, double j);

struct QslResult {
  double min_total_angle = 0;
  std::vector<WeylCoordinates> optimizers;  // lexicographic by raw triple
  double max_purity = 0;
  double worst_stationarity = 0;  // largest first-order residual over optimizers
};

// Scans the coordinate cube, collects the purity-maximizing set, minimizes
// the total angle inside it, and certifies stationarity. grid_n >= 64.
QslResult qsl_verify(const AncillaLocalState& anc, int grid_n);

}
