#include "qreset/operator_core.hpp"

#include <cmath>

#include "qreset/errors.hpp"

namespace qreset {

Mat sigma(int k) {
  Mat m(2, 2);
  const Complex i(0.0, 1.0);
  switch (k) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -i, i, 0; break;
    case 3: m << 1, 0, 0, -1; break;
    default: fail("DimensionMismatch", "pauli index must be 0..3");
  }
  return m;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

bool is_hermitian(const Mat& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m - m.adjoint()) <= tol;
}

bool is_unitary(const Mat& m, double tol) {
  if (m.rows() != m.cols()) return false;
  Mat g = m.adjoint() * m;
  g -= Mat::Identity(m.rows(), m.cols());
  return max_abs(g) <= tol;
}

bool is_density(const Mat& m, double tol) {
  if (!is_hermitian(m, tol)) return false;
  if (std::abs(m.trace().real() - 1.0) > tol || std::abs(m.trace().imag()) > tol)
    return false;
  Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -tol;
}

double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

double hs_norm(const Mat& m) { return m.norm(); }

double hs_inner(const Mat& a, const Mat& b) {
  return (a.adjoint() * b).trace().real();
}

Mat commutator(const Mat& a, const Mat& b) { return a * b - b * a; }

Eig hermitian_eig(const Mat& h) {
  if (!is_hermitian(h)) fail("NotHermitian", "eigendecomposition input");
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  return {es.eigenvalues(), es.eigenvectors()};
}

Mat propagator(const Mat& h, double t) {
  Eig e = hermitian_eig(h);
  Vec phase(e.values.size());
  for (Eigen::Index k = 0; k < e.values.size(); ++k)
    phase(k) = std::exp(Complex(0.0, -e.values(k) * t));
  return e.vectors * phase.asDiagonal() * e.vectors.adjoint();
}

Mat partial_trace(const Mat& m, int d1, int d2, Keep keep) {
  if (d1 < 1 || d2 < 1 || m.rows() != m.cols() ||
      m.rows() != Eigen::Index(d1) * d2)
    fail("DimensionMismatch", "partial trace needs a (d1*d2) square matrix");
  if (keep == Keep::First) {
    Mat out = Mat::Zero(d1, d1);
    for (int i = 0; i < d1; ++i)
      for (int j = 0; j < d1; ++j)
        for (int k = 0; k < d2; ++k)
          out(i, j) += m(i * d2 + k, j * d2 + k);
    return out;
  }
  Mat out = Mat::Zero(d2, d2);
  for (int i = 0; i < d2; ++i)
    for (int j = 0; j < d2; ++j)
      for (int k = 0; k < d1; ++k)
        out(i, j) += m(k * d2 + i, k * d2 + j);
  return out;
}

double purity(const Mat& rho) {
  if (!is_density(rho)) fail("NotDensity", "purity input");
  return (rho * rho).trace().real();
}

}
