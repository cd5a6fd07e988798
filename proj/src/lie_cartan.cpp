#include "qreset/lie_cartan.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "qreset/errors.hpp"
#include "qreset/format.hpp"

namespace qreset {

namespace {

// Appends m to the orthonormal basis when its component orthogonal to the
// span exceeds tol. Returns true when appended.
bool absorb(std::vector<Mat>& basis, Mat m, double tol) {
  for (int pass = 0; pass < 2; ++pass)
    for (const Mat& b : basis) m -= hs_inner(b, m) * b;
  double n = hs_norm(m);
  if (n <= tol) return false;
  basis.push_back(m / n);
  return true;
}

Eigen::VectorXd vec_real(const Mat& m) {
  Eigen::VectorXd v(2 * m.size());
  Eigen::Index k = 0;
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      v(k++) = m(r, c).real();
      v(k++) = m(r, c).imag();
    }
  return v;
}

}  // namespace

AlgebraBasis lie_closure(const std::vector<Mat>& generators, double tol) {
  AlgebraBasis out;
  Eigen::Index d = 0;
  for (const Mat& g : generators) {
    if (g.rows() != g.cols() || (d != 0 && g.rows() != d))
      fail("DimensionMismatch", "generators must be square, same size");
    d = g.rows();
    if (max_abs(g + g.adjoint()) > HERMITICITY_TOL)
      fail("NotAntiHermitian", "generators must be anti-Hermitian");
    absorb(out.elements, g, tol);
  }
  const int max_dim = static_cast<int>(d * d);
  size_t frontier = 0;
  while (frontier < out.elements.size() && out.dim() < max_dim) {
    size_t upto = out.elements.size();
    for (size_t i = frontier; i < upto; ++i)
      for (size_t j = 0; j < upto; ++j) {
        if (i == j) continue;
        absorb(out.elements, commutator(out.elements[i], out.elements[j]), tol);
        if (out.dim() >= max_dim) break;
      }
    frontier = upto;
  }
  return out;
}

CartanSplit cartan_split(const AlgebraBasis& l) {
  std::vector<Mat> k_dirs, p_dirs;
  for (int a = 1; a <= 3; ++a) {
    k_dirs.push_back(Complex(0, 0.5) * kron(sigma(a), sigma(0)));
    k_dirs.push_back(Complex(0, 0.5) * kron(sigma(0), sigma(a)));
    for (int b = 1; b <= 3; ++b)
      p_dirs.push_back(Complex(0, 0.5) * kron(sigma(a), sigma(b)));
  }
  CartanSplit out;
  for (const Mat& x : l.elements) {
    if (x.rows() != 4)
      fail("DimensionMismatch", "split is defined for two-qubit algebras");
    Mat xk = Mat::Zero(4, 4), xp = Mat::Zero(4, 4);
    for (const Mat& dir : k_dirs) xk += hs_inner(dir, x) * dir;
    for (const Mat& dir : p_dirs) xp += hs_inner(dir, x) * dir;
    if (hs_norm(x - xk - xp) > 1e-9)
      fail("DecompositionFailure", "element outside the traceless product basis");
    absorb(out.k_part.elements, xk, 1e-9);
    absorb(out.p_part.elements, xp, 1e-9);
  }
  if (out.k_part.dim() + out.p_part.dim() != l.dim())
    fail("DecompositionFailure", "algebra is not invariant under the involution");
  return out;
}

AlgebraBasis cartan_subalgebra(const AlgebraBasis& p_part) {
  AlgebraBasis out;
  int n = p_part.dim();
  if (n == 0) return out;
  std::mt19937 rng(0xC0FFEE);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  const double null_tol = 1e-7;
  for (int attempt = 0; attempt < 64; ++attempt) {
    Mat x = Mat::Zero(p_part.elements[0].rows(), p_part.elements[0].cols());
    for (const Mat& p : p_part.elements) x += uni(rng) * p;
    double nx = hs_norm(x);
    if (nx < 1e-12) continue;
    x /= nx;
    // Columns are ad_x applied to the p basis; the nullspace is the
    // centralizer of x inside p.
    Eigen::MatrixXd ad(2 * x.size(), n);
    for (int jc = 0; jc < n; ++jc)
      ad.col(jc) = vec_real(commutator(x, p_part.elements[jc]));
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(ad, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    double thresh = null_tol * std::max(1.0, s.size() ? s(0) : 1.0);
    std::vector<Mat> cand;
    for (int m = 0; m < n; ++m) {
      if (m < s.size() && s(m) > thresh) continue;
      Mat a = Mat::Zero(x.rows(), x.cols());
      for (int jc = 0; jc < n; ++jc) a += svd.matrixV()(jc, m) * p_part.elements[jc];
      cand.push_back(a);
    }
    bool ok = !cand.empty();
    for (size_t i = 0; ok && i < cand.size(); ++i)
      for (size_t jj = i + 1; ok && jj < cand.size(); ++jj)
        if (hs_norm(commutator(cand[i], cand[jj])) > 1e-8) ok = false;
    // Maximality: any p direction commuting with all of cand must lie in
    // its span, otherwise x was not regular.
    for (int jc = 0; ok && jc < n; ++jc) {
      const Mat& p = p_part.elements[jc];
      bool commutes = true;
      for (const Mat& a : cand)
        if (hs_norm(commutator(p, a)) > 1e-8) { commutes = false; break; }
      if (!commutes) continue;
      Mat res = p;
      for (const Mat& a : cand) res -= hs_inner(a, p) * a;
      if (hs_norm(res) > 1e-6) ok = false;
    }
    if (!ok) continue;
    for (const Mat& a : cand) absorb(out.elements, a, 1e-9);
    return out;
  }
  fail("DecompositionFailure", "no regular element found");
}

CartanReport cartan_report(const std::vector<Mat>& generators) {
  CartanReport rep;
  rep.l_basis = lie_closure(generators);
  CartanSplit split = cartan_split(rep.l_basis);
  rep.k_basis = split.k_part;
  rep.p_basis = split.p_part;
  rep.a_basis = cartan_subalgebra(rep.p_basis);
  rep.dim_l = rep.l_basis.dim();
  rep.dim_k = rep.k_basis.dim();
  rep.dim_p = rep.p_basis.dim();
  rep.dim_a = rep.a_basis.dim();
  return rep;
}

std::vector<ClassifyRow> classify_all_27() {
  // Generic nonzero parameters; the dimensions are scale independent.
  const double omega_s = 1.0, omega_b = 3.0, j = 0.1, eps = 0.7;
  const Complex I(0.0, 1.0);
  std::vector<ClassifyRow> rows;
  for (int os = 1; os <= 3; ++os)
    for (int ob = 1; ob <= 3; ++ob)
      for (int oc = 1; oc <= 3; ++oc) {
        // One generator per independent Hamiltonian term: the drive
        // amplitude and the couplings vary independently in time.
        std::vector<Mat> gens = {
            I * (0.5 * omega_s) * kron(sigma(3), sigma(0)),
            I * (0.5 * omega_b) * kron(sigma(0), sigma(3)),
            I * j * kron(sigma(os), sigma(ob)),
            I * eps * kron(sigma(oc), sigma(0))};
        CartanReport rep = cartan_report(gens);
        rows.push_back({os, ob, oc, rep.dim_l, rep.dim_k, rep.dim_p,
                        rep.dim_a, rep.dim_a == 2});
      }
  return rows;
}

std::string classify_csv(const std::vector<ClassifyRow>& rows) {
  std::ostringstream out;
  out << "o_s,o_b,o_c,dim_l,dim_k,dim_p,dim_a,purifiable\n";
  for (const auto& r : rows)
    out << r.o_s << ',' << r.o_b << ',' << r.o_c << ',' << r.dim_l << ','
        << r.dim_k << ',' << r.dim_p << ',' << r.dim_a << ','
        << (r.purifiable ? "true" : "false") << '\n';
  return out.str();
}

}
