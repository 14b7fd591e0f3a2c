#include <cmath>
#include <limits>
#include <vector>

#include <doctest.h>

#include "test_util.hpp"
#include "wiretap/exponents.hpp"
#include "wiretap/prob.hpp"

using namespace wiretap;

namespace {

JointXZ bsc_joint() {
  return JointXZ(Distribution::uniform(2), Channel::bsc(0.1));
}

JointXZ independent_joint() {
  return JointXZ(Distribution({0.6, 0.4}),
                 Channel::replicate_rows(Distribution({0.7, 0.3}), 2));
}

}  // namespace

TEST_CASE("f0 examples") {
  JointXZ bsc = bsc_joint();
  CHECK(f0(bsc, 0.0) == 0.0);

  JointXZ indep = independent_joint();
  for (double lambda : {0.0, 0.25, 0.5, 1.0}) {
    CHECK(f0(indep, lambda) == doctest::Approx(0.0).epsilon(1e-12));
  }

  // Closed form at lambda = 1: ln(2 (0.81 + 0.01)).
  CHECK(f0(bsc, 1.0) == doctest::Approx(std::log(1.64)).epsilon(1e-12));
  CHECK(std::abs(f0(bsc, 1.0) - 0.494696) < 1e-6);
}

TEST_CASE("f0 slope at origin is the mutual information") {
  std::uint64_t rng = 0xf051ULL;
  for (int trial = 0; trial < 30; ++trial) {
    int nx = 2 + static_cast<int>(test::next_uniform(rng) * 3);
    int nz = 2 + static_cast<int>(test::next_uniform(rng) * 3);
    Distribution p_x = test::random_distribution(nx, rng);
    Channel w = test::random_channel(nx, nz, rng);
    JointXZ joint(p_x, w);
    CHECK(f0(joint, 0.0) == 0.0);
    const double h = 1e-5;
    double slope = (f0(joint, h) - f0(joint, -h)) / (2 * h);
    CHECK(std::abs(slope - mutual_information(p_x, w)) < 1e-6);
  }
}

TEST_CASE("g0 examples") {
  JointXZ bsc = bsc_joint();
  Distribution u2 = Distribution::uniform(2);
  CHECK(g0(bsc, u2, 0.0) == 0.0);
  CHECK(g0(bsc, Distribution({0.3, 0.7}), 0.0) == 0.0);

  JointXZ indep = independent_joint();
  for (double lambda : {0.2, 0.7, 1.0}) {
    CHECK(g0(indep, u2, lambda) == doctest::Approx(0.0).epsilon(1e-12));
  }

  // Deterministic posterior (identity channel), uniform input on k symbols:
  // every inner sum is k^lambda.
  for (int k : {2, 3}) {
    JointXZ det(Distribution::uniform(k), Channel::identity(k));
    for (double lambda : {0.3, 1.0, 1.7}) {
      CHECK(g0(det, Distribution::uniform(k), lambda) ==
            doctest::Approx(lambda * std::log(static_cast<double>(k)))
                .epsilon(1e-12));
    }
  }

  // g0 at P = P_Z relates to f0 by Jensen: sum P ln(...) <= ln sum P (...).
  for (double lambda : {0.3, 0.8}) {
    CHECK(g0(bsc, bsc.marginal_z(), lambda) <= f0(bsc, lambda) + 1e-12);
  }
}

TEST_CASE("secrecy exponent examples") {
  Distribution u2 = Distribution::uniform(2);
  Channel bsc = Channel::bsc(0.1);
  double mi = mutual_information(u2, bsc);

  SUBCASE("zero at and below the mutual information") {
    CHECK(secrecy_exponent(u2, bsc, mi).value == 0.0);
    CHECK(secrecy_exponent(u2, bsc, mi - 0.05).value == 0.0);
    CHECK(secrecy_exponent(u2, bsc, 0.0).value == 0.0);
  }

  SUBCASE("independent channel gives R' at lambda = 1") {
    Distribution p_x({0.6, 0.4});
    Channel indep = Channel::replicate_rows(Distribution({0.7, 0.3}), 2);
    ExponentResult r = secrecy_exponent(p_x, indep, 0.37);
    CHECK(r.value == doctest::Approx(0.37).epsilon(1e-9));
    CHECK(r.arg_lambda == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r.boundary_hit);
  }

  SUBCASE("BSC at R' = ln 2 against a dense grid") {
    double rp = std::log(2.0);
    ExponentResult r = secrecy_exponent(u2, bsc, rp);
    JointXZ joint(u2, bsc);
    double grid = test::grid_max(
        [&](double l) { return l * rp - f0(joint, l); }, 0.0, 1.0, 1e-4);
    CHECK(r.value == doctest::Approx(grid).epsilon(1e-9));
    CHECK(std::abs(r.value - 0.198450) < 1e-5);
    CHECK(r.arg_lambda == doctest::Approx(1.0).epsilon(1e-6));
  }

  SUBCASE("monotone and convex in R', positive above threshold") {
    double prev = -1.0;
    std::vector<double> vals;
    for (int i = 0; i <= 20; ++i) {
      double rp = 0.05 * i;
      double v = secrecy_exponent(u2, bsc, rp).value;
      CHECK(v >= prev - 1e-12);
      prev = v;
      vals.push_back(v);
    }
    for (std::size_t i = 1; i + 1 < vals.size(); ++i) {
      CHECK(2 * vals[i] <= vals[i - 1] + vals[i + 1] + 1e-9);
    }
    CHECK(secrecy_exponent(u2, bsc, mi + 0.05).value > 1e-4);
  }
}

TEST_CASE("a_value examples and linearity") {
  JointXZ bsc = bsc_joint();
  Distribution p({0.4, 0.6});
  Channel post = bsc.posterior();
  Channel rep = Channel::replicate_rows(bsc.marginal_x(), 2);

  CHECK(a_value(bsc, p, post) ==
        doctest::Approx(a_star(bsc, p)).epsilon(1e-12));
  CHECK(a_value(bsc, p, rep) <= 0.0);

  JointXZ indep = independent_joint();
  std::uint64_t rng = 0xa7a1ULL;
  Channel q = test::random_channel(2, 2, rng);
  // For the independent joint both divergences coincide for any Q.
  CHECK(a_value(indep, Distribution::uniform(2), q) ==
        doctest::Approx(0.0).epsilon(1e-12));

  // Linearity on the finite domain.
  Channel q1 = test::random_channel(2, 2, rng);
  Channel q2 = test::random_channel(2, 2, rng);
  for (double t : {0.25, 0.5, 0.9}) {
    std::vector<double> mix;
    for (int z = 0; z < 2; ++z)
      for (int x = 0; x < 2; ++x)
        mix.push_back(t * q1(x, z) + (1 - t) * q2(x, z));
    // Channel stores (in, out) = rows indexed by z here; rebuild directly.
    Channel qm(2, 2, {t * q1(0, 0) + (1 - t) * q2(0, 0),
                      t * q1(1, 0) + (1 - t) * q2(1, 0),
                      t * q1(0, 1) + (1 - t) * q2(0, 1),
                      t * q1(1, 1) + (1 - t) * q2(1, 1)});
    (void)mix;
    CHECK(a_value(bsc, p, qm) ==
          doctest::Approx(t * a_value(bsc, p, q1) +
                          (1 - t) * a_value(bsc, p, q2))
              .epsilon(1e-10));
  }
}

TEST_CASE("eb closed form examples") {
  JointXZ bsc = bsc_joint();
  Distribution u2 = Distribution::uniform(2);

  SUBCASE("fixed point at a*") {
    double as = a_star(bsc, u2);
    ExponentResult r = eb_closed_form(bsc, u2, as);
    CHECK(r.value == doctest::Approx(as).epsilon(1e-9));
    CHECK(std::abs(r.arg_lambda) < 1e-4);
  }

  SUBCASE("independent channel at a = 0") {
    JointXZ indep = independent_joint();
    ExponentResult r = eb_closed_form(indep, Distribution::uniform(2), 0.0);
    CHECK(r.value == doctest::Approx(0.0).epsilon(1e-9));
  }

  SUBCASE("outside the achievable range returns +inf") {
    auto [lo, hi] = g0_slope_range(bsc, u2);
    CHECK(lo < hi);
    ExponentResult below = eb_closed_form(bsc, u2, lo - 0.1);
    CHECK(std::isinf(below.value));
    CHECK(below.boundary_hit);
    ExponentResult above = eb_closed_form(bsc, u2, hi + 0.1);
    CHECK(std::isinf(above.value));
  }

  SUBCASE("E_b(a) >= a on a sweep of finite levels") {
    auto [lo, hi] = g0_slope_range(bsc, u2);
    for (int i = 1; i < 20; ++i) {
      double a = lo + (hi - lo) * i / 20.0;
      ExponentResult r = eb_closed_form(bsc, u2, a);
      CHECK(std::isfinite(r.value));
      CHECK(r.value >= a - 1e-9);
    }
  }
}

TEST_CASE("e1 e2 examples") {
  JointXZ bsc = bsc_joint();
  Distribution p_z = bsc.marginal_z();

  SUBCASE("independent channel degenerate geometry") {
    JointXZ indep = independent_joint();
    E1E2Result r = e1_e2(indep, Distribution::uniform(2), 0.37);
    CHECK(r.e1.value == doctest::Approx(0.37).epsilon(1e-9));
    CHECK(r.e1.arg_lambda == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(std::isinf(r.e2.value));
    CHECK(r.e2.boundary_hit);
  }

  SUBCASE("R' = 0 pins E2 at the origin") {
    E1E2Result r = e1_e2(bsc, p_z, 0.0);
    CHECK(r.e2.value == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(std::abs(r.e2.arg_lambda) < 1e-4);
  }

  SUBCASE("grid oracle at R' = ln 2") {
    double rp = std::log(2.0);
    E1E2Result r = e1_e2(bsc, p_z, rp);
    double g1 = test::grid_max(
        [&](double l) { return l * rp - g0(bsc, p_z, l); }, -50.0, 1.0, 1e-4);
    double g2 = test::grid_max(
        [&](double l) { return l * rp - g0(bsc, p_z, l); }, 0.0, 50.0, 1e-4);
    if (std::isfinite(r.e1.value))
      CHECK(r.e1.value == doctest::Approx(g1).epsilon(1e-4));
    if (std::isfinite(r.e2.value))
      CHECK(r.e2.value == doctest::Approx(g2).epsilon(1e-4));
  }

  SUBCASE("dichotomy between E2 and E2bar") {
    std::uint64_t rng = 0xd1c407ULL;
    for (int trial = 0; trial < 20; ++trial) {
      Distribution p_x = test::random_distribution(2, rng);
      Channel w = test::random_channel(2, 2, rng);
      JointXZ joint(p_x, w);
      Distribution p = test::random_distribution(2, rng);
      double rp = 0.8 * test::next_uniform(rng);
      E1E2Result r = e1_e2(joint, p, rp);
      int nonzero = 0;
      if (std::isfinite(r.e2.value) && r.e2.value > 1e-9) ++nonzero;
      if (std::isinf(r.e2.value)) ++nonzero;
      if (r.e2_bar.value > 1e-9) ++nonzero;
      CHECK(nonzero <= 1);
    }
  }
}

TEST_CASE("et examples") {
  JointXZ bsc = bsc_joint();
  Distribution p_z = bsc.marginal_z();

  JointXZ indep = independent_joint();
  CHECK(et(indep, Distribution::uniform(2), 0.42).value ==
        doctest::Approx(0.42).epsilon(1e-9));

  ExponentResult zero = et(bsc, p_z, 0.0);
  CHECK(zero.value == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(std::abs(zero.arg_lambda) < 1e-4);

  double rp = std::log(2.0);
  double grid = test::grid_max(
      [&](double l) { return l * rp - g0(bsc, p_z, l); }, 0.0, 1.0, 1e-4);
  CHECK(et(bsc, p_z, rp).value == doctest::Approx(grid).epsilon(1e-4));

  // min(E1,E2) reconciliation on random instances.
  std::uint64_t rng = 0xe701ULL;
  for (int trial = 0; trial < 20; ++trial) {
    Distribution p_x = test::random_distribution(2, rng);
    Channel w = test::random_channel(2, 3, rng);
    JointXZ joint(p_x, w);
    Distribution p = test::random_distribution(3, rng);
    double r_prime = test::next_uniform(rng);
    E1E2Result both = e1_e2(joint, p, r_prime);
    double et_val = et(joint, p, r_prime).value;
    double m = std::min(both.e1.value, both.e2.value);
    if (std::isfinite(m)) {
      CHECK(std::abs(et_val - m) < 1e-9);
    }
  }
}

TEST_CASE("min-form secrecy exponent") {
  Distribution u2 = Distribution::uniform(2);
  Channel bsc = Channel::bsc(0.1);

  SUBCASE("independent channel gives R'") {
    Distribution p_x({0.6, 0.4});
    Channel indep = Channel::replicate_rows(Distribution({0.7, 0.3}), 2);
    CHECK(secrecy_exponent_min_form(p_x, indep, 0.33, 200).value ==
          doctest::Approx(0.33).epsilon(1e-6));
  }

  SUBCASE("zero at rates below the mutual information") {
    double mi = mutual_information(u2, bsc);
    CHECK(secrecy_exponent_min_form(u2, bsc, mi - 0.05, 200).value <= 1e-6);
  }

  SUBCASE("matches the max form at R' = ln 2") {
    double rp = std::log(2.0);
    double max_form = secrecy_exponent(u2, bsc, rp).value;
    double min_form = secrecy_exponent_min_form(u2, bsc, rp, 400).value;
    CHECK(std::abs(max_form - min_form) <= 1e-3);
    // Gap shrinks (weakly) as the grid refines.
    double coarse = std::abs(
        secrecy_exponent_min_form(u2, bsc, rp, 50).value - max_form);
    double fine = std::abs(min_form - max_form);
    CHECK(fine <= coarse + 1e-12);
  }

  SUBCASE("resolution below 2 rejected") {
    CHECK_THROWS_AS(secrecy_exponent_min_form(u2, bsc, 0.5, 1),
                    std::invalid_argument);
  }
}

TEST_CASE("gallager exponents") {
  Distribution u2 = Distribution::uniform(2);
  Channel bsc = Channel::bsc(0.1);

  CHECK(gallager_e0(u2, bsc, 0.0) == 0.0);
  CHECK(gallager_e0(u2, bsc, 1.0) ==
        doctest::Approx(-std::log(0.8)).epsilon(1e-12));
  CHECK(std::abs(gallager_e0(u2, bsc, 1.0) - 0.223144) < 1e-6);

  double mi = mutual_information(u2, bsc);
  ExponentResult at_capacity = gallager_er(u2, bsc, mi + 1e-3);
  CHECK(at_capacity.value == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(std::abs(at_capacity.arg_lambda) < 1e-4);

  double rate = 0.1;
  double grid = test::grid_max(
      [&](double rho) { return gallager_e0(u2, bsc, rho) - rho * rate; }, 0.0,
      1.0, 1e-4);
  CHECK(gallager_er(u2, bsc, rate).value ==
        doctest::Approx(grid).epsilon(1e-6));
}

TEST_CASE("corollary exponent pair") {
  Distribution u2 = Distribution::uniform(2);
  WiretapInstance inst(u2, Channel::bsc(0.05), Channel::bsc(0.2), 0.1, 0.45);
  auto [rel, sec] = corollary_exponent_pair(inst);

  double grid_rel = test::grid_max(
      [&](double rho) {
        return gallager_e0(u2, Channel::bsc(0.05), rho) - rho * 0.55;
      },
      0.0, 1.0, 1e-4);
  CHECK(rel.value == doctest::Approx(grid_rel).epsilon(1e-4));

  JointXZ joint(u2, Channel::bsc(0.2));
  double grid_sec = test::grid_max(
      [&](double l) { return l * 0.45 - f0(joint, l); }, 0.0, 1.0, 1e-4);
  CHECK(sec.value == doctest::Approx(grid_sec).epsilon(1e-4));

  // R + R' above I(X;Y) kills the reliability exponent.
  WiretapInstance lossy(u2, Channel::bsc(0.05), Channel::bsc(0.2), 0.5, 0.45);
  CHECK(corollary_exponent_pair(lossy).first.value ==
        doctest::Approx(0.0).epsilon(1e-9));
  // R' below I(X;Z) kills the secrecy exponent.
  WiretapInstance leaky(u2, Channel::bsc(0.05), Channel::bsc(0.2), 0.1, 0.05);
  CHECK(corollary_exponent_pair(leaky).second.value == 0.0);
}

TEST_CASE("sweep curve shape") {
  Distribution u2 = Distribution::uniform(2);
  Channel bsc = Channel::bsc(0.1);
  ExponentCurve curve = sweep_secrecy_exponent(u2, bsc, 0.0, 1.0, 21);
  REQUIRE(curve.points.size() == 21);
  double mi = mutual_information(u2, bsc);
  double prev_rate = -1.0;
  double prev_val = -1.0;
  for (const auto& [rate, res] : curve.points) {
    CHECK(rate > prev_rate);
    CHECK(res.value >= prev_val - 1e-12);
    if (rate <= mi - 1e-6) CHECK(res.value == 0.0);
    if (rate >= mi + 1e-3) CHECK(res.value > 0.0);
    prev_rate = rate;
    prev_val = res.value;
  }
}

TEST_CASE("convexity probes of f0 and g0") {
  std::uint64_t rng = 0xc0471ULL;
  for (int trial = 0; trial < 200; ++trial) {
    Distribution p_x = test::random_distribution(2, rng);
    Channel w = test::random_channel(2, 2, rng);
    JointXZ joint(p_x, w);
    Distribution p = test::random_distribution(2, rng);
    double l1 = -0.5 + 2.0 * test::next_uniform(rng);
    double l2 = -0.5 + 2.0 * test::next_uniform(rng);
    if (l1 > l2) std::swap(l1, l2);
    double t = test::next_uniform(rng);
    double mid = t * l1 + (1 - t) * l2;
    CHECK(f0(joint, mid) <= t * f0(joint, l1) + (1 - t) * f0(joint, l2) +
                                1e-10);
    CHECK(g0(joint, p, mid) <=
          t * g0(joint, p, l1) + (1 - t) * g0(joint, p, l2) + 1e-10);
  }
}
