#include "qreset/purity_majorization.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qreset/errors.hpp"
#include "qreset/format.hpp"
#include "qreset/model.hpp"

namespace qreset {

namespace {

std::vector<double> descending_spectrum(const Mat& rho) {
  if (!is_density(rho)) fail("NotDensity", "spectrum input");
  Eig e = hermitian_eig(rho);
  std::vector<double> s(e.values.size());
  for (Eigen::Index k = 0; k < e.values.size(); ++k)
    s[k] = std::max(0.0, e.values(e.values.size() - 1 - k));
  return s;
}

}  // namespace

bool majorizes(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size())
    fail("DimensionMismatch", "vectors must have equal length");
  double sa = std::accumulate(a.begin(), a.end(), 0.0);
  double sb = std::accumulate(b.begin(), b.end(), 0.0);
  if (std::abs(sa - sb) > 1e-12) fail("SumMismatch", "totals differ");
  std::vector<double> ad = a, bd = b;
  std::sort(ad.begin(), ad.end(), std::greater<>());
  std::sort(bd.begin(), bd.end(), std::greater<>());
  double pa = 0.0, pb = 0.0;
  for (size_t k = 0; k < ad.size(); ++k) {
    pa += ad[k];
    pb += bd[k];
    if (pa < pb - 1e-12) return false;
  }
  return true;
}

SpectrumPartition optimal_reshuffle(const Mat& rho_s, const Mat& rho_b) {
  std::vector<double> s = descending_spectrum(rho_s);
  std::vector<double> b = descending_spectrum(rho_b);
  SpectrumPartition part;
  part.d_s = static_cast<int>(s.size());
  part.d_b = static_cast<int>(b.size());
  int n = part.d_s * part.d_b;
  std::vector<double> prod(n);
  for (int i = 0; i < part.d_s; ++i)
    for (int j = 0; j < part.d_b; ++j) prod[i * part.d_b + j] = s[i] * b[j];
  part.permutation.resize(n);
  std::iota(part.permutation.begin(), part.permutation.end(), 0);
  std::stable_sort(part.permutation.begin(), part.permutation.end(),
                   [&](int x, int y) { return prod[x] > prod[y]; });
  part.lambda.resize(n);
  for (int k = 0; k < n; ++k) part.lambda[k] = prod[part.permutation[k]];
  part.s_prime.assign(part.d_s, 0.0);
  for (int k = 0; k < n; ++k) part.s_prime[k / part.d_b] += part.lambda[k];
  return part;
}

double max_qubit_purity(const Mat& rho_s, const Mat& rho_b) {
  SpectrumPartition part = optimal_reshuffle(rho_s, rho_b);
  double p = 0.0;
  for (double v : part.s_prime) p += v * v;
  return p;
}

EpsilonResetReport epsilon_reset_check(const Mat& rho_b, int d_s, double eps) {
  if (!(eps > 0.0)) fail("InvalidEpsilon", "eps must be positive");
  if (d_s < 2) fail("InvalidSpec", "system dimension must be at least 2");
  std::vector<double> b = descending_spectrum(rho_b);
  int d_b = static_cast<int>(b.size());
  EpsilonResetReport rep;
  rep.threshold = eps / (2.0 * d_b * (d_s - 1));
  rep.required_count = (d_b * (d_s - 1) + d_s - 1) / d_s;
  for (double v : b)
    if (v < rep.threshold) ++rep.small_count;
  rep.eligible = rep.small_count >= rep.required_count;
  Mat mixed = Mat::Identity(d_s, d_s) / double(d_s);
  rep.achieved_infidelity = 1.0 - max_qubit_purity(mixed, rho_b);
  return rep;
}

std::string purity_dimension_csv(const std::vector<int>& dims, double gap,
                                 double beta, double omega_s) {
  Mat qubit = thermal_state(0.5 * omega_s * sigma(3), beta);
  std::ostringstream out;
  out << "d_b,beta,max_purity\n";
  for (int d : dims) {
    if (d < 2) fail("WrongAncillaDim", "ancilla needs at least two levels");
    Mat hb = Mat::Zero(d, d);
    for (int k = 0; k < d; ++k) hb(k, k) = gap * k;
    out << d << ',' << num(beta) << ','
        << num(max_qubit_purity(qubit, thermal_state(hb, beta))) << '\n';
  }
  return out.str();
}

}  // namespace qreset
