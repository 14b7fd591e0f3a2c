// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure.  Tolerances are pinned here, not configurable.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "test_util.hpp"
#include "wiretap/ensemble_sim.hpp"
#include "wiretap/exponents.hpp"
#include "wiretap/prob.hpp"
#include "wiretap/type_oracle.hpp"

using namespace wiretap;

namespace {

struct RandomInstance {
  Distribution p_x;
  Channel w;
};

std::vector<RandomInstance> make_instances(int count, int max_x, int max_z,
                                           std::uint64_t& rng) {
  std::vector<RandomInstance> out;
  for (int i = 0; i < count; ++i) {
    int nx = 2 + static_cast<int>(test::next_uniform(rng) * (max_x - 1));
    int nz = 2 + static_cast<int>(test::next_uniform(rng) * (max_z - 1));
    out.push_back({test::random_distribution(nx, rng),
                   test::random_channel(nx, nz, rng)});
  }
  return out;
}

int g_failures = 0;

void report(int index, const char* name, bool passed,
            const std::string& detail) {
  std::printf("criterion %02d %-18s %s%s%s\n", index, name,
              passed ? "PASS" : "FAIL", detail.empty() ? "" : "  ",
              detail.c_str());
  if (!passed) ++g_failures;
}

// 1. F0(0) = 0 exactly; central finite-difference slope at 0 equals I(X;Z)
// within 1e-6, over 50 random instances.
void criterion_origin_slope(const std::vector<RandomInstance>& instances) {
  bool ok = true;
  double worst = 0.0;
  for (const auto& inst : instances) {
    JointXZ joint(inst.p_x, inst.w);
    if (f0(joint, 0.0) != 0.0) ok = false;
    const double h = 1e-5;
    double slope = (f0(joint, h) - f0(joint, -h)) / (2 * h);
    double gap = std::abs(slope - mutual_information(inst.p_x, inst.w));
    worst = std::max(worst, gap);
    if (gap > 1e-6) ok = false;
  }
  report(1, "origin-slope", ok, "max slope gap " + std::to_string(worst));
}

// 2. E_s = 0 just below I(X;Z), strictly positive 0.05 above it.
void criterion_zero_threshold(const std::vector<RandomInstance>& instances) {
  bool ok = true;
  for (const auto& inst : instances) {
    double mi = mutual_information(inst.p_x, inst.w);
    double below = std::max(mi - 0.01, 0.0);
    if (secrecy_exponent(inst.p_x, inst.w, below).value > 1e-9) ok = false;
    if (secrecy_exponent(inst.p_x, inst.w, mi + 0.05).value <= 1e-4)
      ok = false;
  }
  report(2, "zero-threshold", ok, "");
}

// 3. Max form vs min form within 1e-3 at simplex resolution 400, binary Z.
void criterion_form_equivalence(std::uint64_t& rng) {
  bool ok = true;
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    Distribution p_x = test::random_distribution(2, rng);
    Channel w = test::random_channel(2, 2, rng);
    double mi = mutual_information(p_x, w);
    for (int k = 0; k < 5; ++k) {
      double rp = mi + 0.1 + 0.15 * k;
      double max_form = secrecy_exponent(p_x, w, rp).value;
      double min_form = secrecy_exponent_min_form(p_x, w, rp, 400).value;
      double gap = std::abs(max_form - min_form);
      worst = std::max(worst, gap);
      if (gap > 1e-3) ok = false;
    }
  }
  report(3, "form-equivalence", ok, "max gap " + std::to_string(worst));
}

// 4. E_b closed form vs brute force at 7 levels per instance; fixed point
// E_b(a*) = a* within 1e-9.
void criterion_eb_duality(std::uint64_t& rng) {
  bool ok = true;
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    Distribution p_x = test::random_distribution(2, rng);
    Channel w = test::random_channel(2, 2, rng);
    JointXZ joint(p_x, w);
    Distribution p = test::random_distribution(2, rng);

    double as = a_star(joint, p);
    double fixed_gap = std::abs(eb_closed_form(joint, p, as).value - as);
    if (fixed_gap > 1e-9) ok = false;

    auto [lo, hi] = g0_slope_range(joint, p);
    for (int k = 1; k <= 7; ++k) {
      double a = lo + (hi - lo) * k / 8.0;
      ExponentResult closed = eb_closed_form(joint, p, a);
      BruteForceEb brute = eb_bruteforce(joint, p, a, 200);
      if (!std::isfinite(closed.value)) {
        ok = false;
        continue;
      }
      double tol = std::max(1e-3, brute.slack);
      if (closed.boundary_hit) {
        // Clamped dual: the closed form is a lower bound only.
        if (brute.value < closed.value - tol) ok = false;
        continue;
      }
      double gap = std::abs(closed.value - brute.value);
      worst = std::max(worst, gap);
      if (gap > tol) ok = false;
    }
  }
  report(4, "eb-duality", ok, "max closed/brute gap " + std::to_string(worst));
}

// 5. min(E1,E2) = E_t within 1e-9; at most one of {E2, E2bar} nonzero.
void criterion_et_reconciliation(std::uint64_t& rng) {
  bool ok = true;
  for (int i = 0; i < 10; ++i) {
    Distribution p_x = test::random_distribution(2, rng);
    Channel w = test::random_channel(2, 2, rng);
    JointXZ joint(p_x, w);
    for (int k = 0; k < 5; ++k) {
      double rp = 0.25 * k;
      for (int m = 0; m < 5; ++m) {
        Distribution p = test::random_distribution(2, rng);
        E1E2Result both = e1_e2(joint, p, rp);
        double et_val = et(joint, p, rp).value;
        double mn = std::min(both.e1.value, both.e2.value);
        if (std::isfinite(mn) && std::abs(et_val - mn) > 1e-9) ok = false;
        int nonzero = 0;
        if (!std::isfinite(both.e2.value) || both.e2.value > 1e-9) ++nonzero;
        if (both.e2_bar.value > 1e-9) ++nonzero;
        if (nonzero > 1) ok = false;
      }
    }
  }
  report(5, "et-reconciliation", ok, "");
}

// 6. Exhaustive ensemble mean: E[P_{Z|W}(z|w)] = P_Z^n(z) within 1e-12 at
// n=4, M'=2, binary alphabets.
void criterion_ensemble_mean(std::uint64_t& rng) {
  bool ok = true;
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    Distribution p_x = test::random_distribution(2, rng);
    Channel w = test::random_channel(2, 2, rng);
    ExhaustiveMean r = exhaustive_ensemble_mean(p_x, w, 4, 2);
    worst = std::max(worst, r.max_mean_gap);
    if (r.max_mean_gap > 1e-12) ok = false;
  }
  report(6, "ensemble-mean", ok, "max entry gap " + std::to_string(worst));
}

// 7. Sum over z-types of P_Z^n(type class) * exact moment equals the
// exhaustive E[D] within 1e-10 at n=4, M'=2.
void criterion_type_decomposition(std::uint64_t& rng) {
  bool ok = true;
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    Distribution p_x = test::random_distribution(2, rng);
    Channel w = test::random_channel(2, 2, rng);
    JointXZ joint(p_x, w);
    Distribution p_z = joint.marginal_z();
    double total = 0.0;
    for (const NType& zt : enumerate_n_types(4, 2)) {
      total += std::exp(type_class_log_prob(p_z, zt)) *
               exact_un_log_moment(joint, 4, 2, zt);
    }
    double exact = exhaustive_ensemble_mean(p_x, w, 4, 2).result.estimate;
    double gap = std::abs(total - exact);
    worst = std::max(worst, gap);
    if (gap > 1e-10) ok = false;
  }
  report(7, "type-decomposition", ok, "max gap " + std::to_string(worst));
}

// 8. 10^3 random three-point convexity probes of F0 and G0 in lambda.
void criterion_convexity(std::uint64_t& rng) {
  bool ok = true;
  for (int probe = 0; probe < 1000; ++probe) {
    Distribution p_x = test::random_distribution(2, rng);
    Channel w = test::random_channel(2, 2, rng);
    JointXZ joint(p_x, w);
    Distribution p = test::random_distribution(2, rng);
    double l1 = -0.5 + 2.0 * test::next_uniform(rng);
    double l2 = -0.5 + 2.0 * test::next_uniform(rng);
    if (l1 > l2) std::swap(l1, l2);
    double t = test::next_uniform(rng);
    double mid = t * l1 + (1 - t) * l2;
    if (f0(joint, mid) >
        t * f0(joint, l1) + (1 - t) * f0(joint, l2) + 1e-10) {
      ok = false;
    }
    if (g0(joint, p, mid) >
        t * g0(joint, p, l1) + (1 - t) * g0(joint, p, l2) + 1e-10) {
      ok = false;
    }
  }
  report(8, "convexity", ok, "");
}

// 9. Gallager side: E0(0) = 0 exactly; E_r vanishes above capacity; the
// BSC(0.1) value of E0(1).
void criterion_gallager(std::uint64_t& rng) {
  bool ok = true;
  Distribution u2 = Distribution::uniform(2);
  Channel bsc = Channel::bsc(0.1);
  if (gallager_e0(u2, bsc, 0.0) != 0.0) ok = false;
  if (std::abs(gallager_e0(u2, bsc, 1.0) + std::log(0.8)) > 1e-9) ok = false;
  for (int i = 0; i < 10; ++i) {
    Distribution p_x = test::random_distribution(2, rng);
    Channel v = test::random_channel(2, 2, rng);
    if (gallager_e0(p_x, v, 0.0) != 0.0) ok = false;
    double mi = mutual_information(p_x, v);
    if (gallager_er(p_x, v, mi + 1e-3).value > 1e-9) ok = false;
  }
  report(9, "gallager", ok, "");
}

// 10. Decay trend: uniform(2), W=BSC(0.1), R'=0.8, M'=ceil(e^{nR'}) capped
// at 64, n in {4,...,12}, 1e4 replicates, seed 0xC0FFEE.  Exponents are
// positive, the least-squares slope over n is >= 0, and the final value
// lies in [0.3 E_s, 1.5 E_s].  The asymptote itself is not desk-scale
// reproducible; this is a trend band only.
void criterion_decay_trend() {
  Distribution u2 = Distribution::uniform(2);
  Channel bsc = Channel::bsc(0.1);
  const double r_prime = 0.8;
  double e_s = secrecy_exponent(u2, bsc, r_prime).value;

  auto pts = empirical_exponent(u2, bsc, r_prime, {4, 6, 8, 10, 12}, 10000,
                                0xC0FFEEULL, 64);
  bool ok = pts.size() == 5;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::string seq = "e_n =";
  for (const auto& p : pts) {
    if (!p.defined || p.exponent <= 0.0) ok = false;
    seq += " " + std::to_string(p.defined ? p.exponent : -1.0);
    sx += p.n;
    sy += p.defined ? p.exponent : 0.0;
    sxx += static_cast<double>(p.n) * p.n;
    sxy += p.n * (p.defined ? p.exponent : 0.0);
  }
  double count = static_cast<double>(pts.size());
  double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  double last = pts.empty() ? 0.0 : pts.back().exponent;
  if (slope < 0.0) ok = false;
  if (last < 0.3 * e_s || last > 1.5 * e_s) ok = false;
  report(10, "decay-trend", ok,
         seq + ", slope " + std::to_string(slope) + ", band [" +
             std::to_string(0.3 * e_s) + ", " + std::to_string(1.5 * e_s) +
             "]");
}

}  // namespace

int main() {
  auto start = std::chrono::steady_clock::now();

  std::uint64_t rng = 0xacce97ULL;
  auto instances = make_instances(50, 4, 4, rng);

  criterion_origin_slope(instances);
  criterion_zero_threshold(instances);
  criterion_form_equivalence(rng);
  criterion_eb_duality(rng);
  criterion_et_reconciliation(rng);
  criterion_ensemble_mean(rng);
  criterion_type_decomposition(rng);
  criterion_convexity(rng);
  criterion_gallager(rng);
  criterion_decay_trend();

  auto elapsed = std::chrono::duration_cast<std::chrono::seconds>(
                     std::chrono::steady_clock::now() - start)
                     .count();
  std::printf("%d/10 criteria passed in %llds\n", 10 - g_failures,
              static_cast<long long>(elapsed));
  return g_failures == 0 ? 0 : 1;
}
