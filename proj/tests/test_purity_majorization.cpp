#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>

#include "qreset/errors.hpp"
#include "qreset/model.hpp"
#include "qreset/purity_majorization.hpp"

using namespace qreset;

namespace {

bool throws_tag(const char* tag, const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.tag() == tag;
  }
  return false;
}

Mat diag_density(const std::vector<double>& p) {
  Mat rho = Mat::Zero(p.size(), p.size());
  for (size_t k = 0; k < p.size(); ++k) rho(k, k) = p[k];
  return rho;
}

Mat thermal_ancilla(int d, double gap, double beta) {
  Mat h = Mat::Zero(d, d);
  for (int k = 0; k < d; ++k) h(k, k) = gap * k;
  return thermal_state(h, beta);
}

// Marginal spectrum from an arbitrary grouping of the product spectrum.
std::vector<double> group_sums(const std::vector<double>& lambda,
                               const std::vector<int>& assign, int d_s) {
  std::vector<double> s(d_s, 0.0);
  for (size_t k = 0; k < lambda.size(); ++k) s[assign[k]] += lambda[k];
  return s;
}

}  // namespace

TEST_CASE("majorization on simple pairs") {
  CHECK(majorizes({1.0, 0.0}, {0.5, 0.5}));
  CHECK_FALSE(majorizes({0.5, 0.5}, {0.6, 0.4}));
  CHECK(majorizes({0.6, 0.4}, {0.5, 0.5}));
  CHECK(majorizes({0.3, 0.7}, {0.3, 0.7}));
  CHECK(throws_tag("DimensionMismatch", [] {
    majorizes({1.0}, {0.5, 0.5});
  }));
  CHECK(throws_tag("SumMismatch", [] {
    majorizes({0.6, 0.5}, {0.5, 0.5});
  }));
}

TEST_CASE("reshuffle of pure and maximally mixed ancillas") {
  Mat rho_s = diag_density({0.5, 0.5});
  SpectrumPartition pure = optimal_reshuffle(rho_s, diag_density({1.0, 0.0}));
  CHECK(pure.s_prime[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pure.s_prime[1] == doctest::Approx(0.0).scale(1).epsilon(1e-12));

  SpectrumPartition mixed =
      optimal_reshuffle(rho_s, diag_density({0.25, 0.25, 0.25, 0.25}));
  for (double s : mixed.s_prime) CHECK(s == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("thermal reshuffle matches the frozen block sums") {
  // Cross-checked against exhaustive search
  // (tests/oracles/reshuffle_purity.py).
  Mat rho_s = diag_density({0.7310585786, 0.2689414214});
  struct Row {
    int d_b;
    double s0, purity;
  };
  for (const Row& r : {Row{2, 0.95257413, 0.9096466805},
                       Row{3, 0.98491963, 0.9702940966},
                       Row{4, 0.99752738, 0.9950669814}}) {
    Mat rho_b = thermal_ancilla(r.d_b, 3.0, 1.0);
    SpectrumPartition part = optimal_reshuffle(rho_s, rho_b);
    REQUIRE(part.s_prime.size() == 2);
    CHECK(part.s_prime[0] == doctest::Approx(r.s0).epsilon(1e-6));
    CHECK(part.s_prime[0] + part.s_prime[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(max_qubit_purity(rho_s, rho_b) == doctest::Approx(r.purity).epsilon(1e-8));

    // The permutation is a bijection that reproduces the sorted spectrum.
    std::vector<int> seen(part.permutation.size(), 0);
    for (int idx : part.permutation) {
      REQUIRE(idx >= 0);
      REQUIRE(idx < static_cast<int>(seen.size()));
      ++seen[idx];
    }
    CHECK(*std::min_element(seen.begin(), seen.end()) == 1);
    CHECK(std::is_sorted(part.lambda.begin(), part.lambda.end(),
                         std::greater<double>()));
  }
}

TEST_CASE("greedy grouping majorizes random groupings") {
  std::mt19937 rng(2718);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> ps = {u(rng), u(rng)};
    std::vector<double> pb = {u(rng), u(rng), u(rng)};
    double zs = ps[0] + ps[1];
    double zb = pb[0] + pb[1] + pb[2];
    for (double& v : ps) v /= zs;
    for (double& v : pb) v /= zb;
    SpectrumPartition part = optimal_reshuffle(diag_density(ps), diag_density(pb));

    std::vector<int> assign = {0, 0, 0, 1, 1, 1};
    for (int shuffle = 0; shuffle < 20; ++shuffle) {
      std::shuffle(assign.begin(), assign.end(), rng);
      std::vector<double> other = group_sums(part.lambda, assign, 2);
      std::sort(other.begin(), other.end(), std::greater<double>());
      std::vector<double> best = part.s_prime;
      std::sort(best.begin(), best.end(), std::greater<double>());
      CHECK(majorizes(best, other));
    }
  }
}

TEST_CASE("eligibility for eps-close reset") {
  // Two tiny levels are required for a qubit against a three-level ancilla.
  Mat rho_b3 = diag_density({0.989, 0.0055, 0.0055});
  EpsilonResetReport rep = epsilon_reset_check(rho_b3, 2, 0.1);
  CHECK(rep.required_count == 2);
  CHECK(rep.threshold == doctest::Approx(0.1 / 6.0).epsilon(1e-12));
  CHECK(rep.small_count == 2);
  CHECK(rep.eligible);
  CHECK(rep.achieved_infidelity ==
        doctest::Approx(1.0 - max_qubit_purity(diag_density({0.5, 0.5}), rho_b3))
            .epsilon(1e-12));
  CHECK(rep.achieved_infidelity <= 0.1);

  EpsilonResetReport tight = epsilon_reset_check(rho_b3, 2, 1e-4);
  CHECK_FALSE(tight.eligible);
  CHECK(tight.small_count == 0);

  CHECK(epsilon_reset_check(diag_density({0.9, 0.1}), 2, 0.5).required_count == 1);
  CHECK(epsilon_reset_check(thermal_ancilla(4, 3.0, 1.0), 2, 0.5).required_count == 2);
  CHECK(epsilon_reset_check(thermal_ancilla(3, 3.0, 1.0), 3, 0.9).required_count == 2);

  CHECK(throws_tag("InvalidEpsilon", [&] { epsilon_reset_check(rho_b3, 2, 0.0); }));
  CHECK(throws_tag("InvalidSpec", [&] { epsilon_reset_check(rho_b3, 1, 0.1); }));
}

TEST_CASE("exact zero levels give a perfectly pure qubit") {
  Mat rho_b = diag_density({0.6, 0.4, 0.0, 0.0});
  Mat rho_s = diag_density({0.5, 0.5});
  CHECK(max_qubit_purity(rho_s, rho_b) == doctest::Approx(1.0).epsilon(1e-14));

  // Adding empty ancilla levels never hurts.
  double base = max_qubit_purity(rho_s, diag_density({0.7, 0.3}));
  double padded = max_qubit_purity(rho_s, diag_density({0.7, 0.3, 0.0}));
  CHECK(padded >= base - 1e-14);
}

TEST_CASE("purity-by-dimension csv") {
  std::string csv = purity_dimension_csv({2, 3, 4}, 3.0, 1.0, 1.0);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "d_b,beta,max_purity");
  std::vector<double> purities;
  while (std::getline(in, line)) {
    auto last = line.rfind(',');
    purities.push_back(std::stod(line.substr(last + 1)));
  }
  REQUIRE(purities.size() == 3);
  CHECK(purities[0] == doctest::Approx(0.9096466805).epsilon(1e-8));
  CHECK(purities[1] == doctest::Approx(0.9702940966).epsilon(1e-8));
  CHECK(purities[2] == doctest::Approx(0.9950669814).epsilon(1e-8));

  CHECK(throws_tag("WrongAncillaDim", [] {
    purity_dimension_csv({1}, 3.0, 1.0, 1.0);
  }));
}
