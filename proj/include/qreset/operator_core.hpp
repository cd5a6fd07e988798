#pragma once

#include <Eigen/Dense>
#include <complex>

#include "qreset/tolerances.hpp"

namespace qreset {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// sigma(0) is the identity; sigma(1..3) the Pauli matrices in the {e, g}
// basis, sigma(3) = diag(1, -1).
Mat sigma(int k);

Mat kron(const Mat& a, const Mat& b);

bool is_hermitian(const Mat& m, double tol = HERMITICITY_TOL);
bool is_unitary(const Mat& m, double tol = HERMITICITY_TOL);
bool is_density(const Mat& m, double tol = DENSITY_TOL);

double max_abs(const Mat& m);
double hs_norm(const Mat& m);                 // Frobenius norm
double hs_inner(const Mat& a, const Mat& b);  // Re tr(a^dag b)
Mat commutator(const Mat& a, const Mat& b);

struct Eig {
  Eigen::VectorXd values;  // ascending
  Mat vectors;             // columns match values
};

// Throws NotHermitian.
Eig hermitian_eig(const Mat& h);

// exp(-i h t); throws NotHermitian.
Mat propagator(const Mat& h, double t);

enum class Keep { First, Second };

// Partial trace of an (d1*d2) x (d1*d2) matrix over the discarded factor.
// Throws DimensionMismatch.
Mat partial_trace(const Mat& m, int d1, int d2, Keep keep);

// tr(rho^2); throws NotDensity.
double purity(const Mat& rho);

}
