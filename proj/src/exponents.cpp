#include "wiretap/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "wiretap/golden.hpp"

namespace wiretap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kZeroTol = 1e-9;  // equality-with-zero tolerance for exponents
constexpr double kClampTol = 1e-6;

double log_sum_exp(const std::vector<double>& terms) {
  double m = -kInf;
  for (double t : terms) m = std::max(m, t);
  if (m == -kInf) return -kInf;
  double s = 0.0;
  for (double t : terms) s += std::exp(t - m);
  return m + std::log(s);
}

/// ln sum_x P_{X|Z}(x|z)^{1+lambda} P_X(x)^{-lambda}, terms with
/// P_{X|Z}(x|z) = 0 dropped (0^{1+lambda} = 0 for lambda > -1).
double inner_log_sum(const JointXZ& joint, int z, double lambda) {
  const Channel& post = joint.posterior();
  const Distribution& p_x = joint.marginal_x();
  std::vector<double> terms;
  terms.reserve(joint.x_size());
  for (int x = 0; x < joint.x_size(); ++x) {
    double q = post(x, z);
    if (q == 0.0) continue;
    terms.push_back((1.0 + lambda) * std::log(q) - lambda * p_x.log_prob(x));
  }
  return log_sum_exp(terms);
}

}  // namespace

double f0(const JointXZ& joint, double lambda) {
  if (lambda == 0.0) return 0.0;  // the argument of ln is exactly 1
  const Distribution& p_z = joint.marginal_z();
  std::vector<double> terms;
  terms.reserve(joint.z_size());
  for (int z = 0; z < joint.z_size(); ++z) {
    if (p_z[z] == 0.0) continue;
    terms.push_back(std::log(p_z[z]) + inner_log_sum(joint, z, lambda));
  }
  return log_sum_exp(terms);
}

double f0(const Distribution& p_x, const Channel& w, double lambda) {
  return f0(JointXZ(p_x, w), lambda);
}

double g0(const JointXZ& joint, const Distribution& p, double lambda) {
  if (p.size() != joint.z_size()) {
    throw std::invalid_argument("g0: P not on the Z alphabet");
  }
  if (lambda == 0.0) return 0.0;  // every inner sum is exactly 1
  double g = 0.0;
  for (int z = 0; z < joint.z_size(); ++z) {
    if (p[z] == 0.0) continue;
    g += p[z] * inner_log_sum(joint, z, lambda);
  }
  return g;
}

ExponentResult secrecy_exponent(const Distribution& p_x, const Channel& w,
                                double r_prime) {
  JointXZ joint(p_x, w);
  auto objective = [&](double lambda) {
    return lambda * r_prime - f0(joint, lambda);
  };
  ScalarMaximum m = maximize_concave(objective, 0.0, 1.0);
  double value = std::max(m.value, 0.0);
  if (value < 1e-12) value = 0.0;
  return {value, m.arg, m.at_boundary};
}

double a_value(const JointXZ& joint, const Distribution& p, const Channel& q) {
  if (q.input_size() != joint.z_size() || q.output_size() != joint.x_size() ||
      p.size() != joint.z_size()) {
    throw std::invalid_argument("a_value: dimension mismatch");
  }
  const Channel& post = joint.posterior();
  const Distribution& p_x = joint.marginal_x();
  // A(P;Q) = sum_z P(z) sum_x Q(x|z) ln( P_{X|Z}(x|z) / P_X(x) ).
  double a = 0.0;
  for (int z = 0; z < p.size(); ++z) {
    if (p[z] == 0.0) continue;
    for (int x = 0; x < joint.x_size(); ++x) {
      double qx = q(x, z);
      if (qx == 0.0) continue;
      double pxz = post(x, z);
      if (pxz == 0.0) return -kInf;
      a += p[z] * qx * std::log(pxz / p_x[x]);
    }
  }
  return a;
}

double a_star(const JointXZ& joint, const Distribution& p) {
  return conditional_kl(joint.posterior(),
                        Channel::replicate_rows(joint.marginal_x(),
                                                joint.z_size()),
                        p);
}

std::pair<double, double> g0_slope_range(const JointXZ& joint,
                                         const Distribution& p) {
  const Channel& post = joint.posterior();
  const Distribution& p_x = joint.marginal_x();
  double lo = 0.0, hi = 0.0;
  for (int z = 0; z < joint.z_size(); ++z) {
    if (p[z] == 0.0) continue;
    double zmin = kInf, zmax = -kInf;
    for (int x = 0; x < joint.x_size(); ++x) {
      double q = post(x, z);
      if (q == 0.0) continue;
      double c = std::log(q / p_x[x]);
      zmin = std::min(zmin, c);
      zmax = std::max(zmax, c);
    }
    lo += p[z] * zmin;
    hi += p[z] * zmax;
  }
  return {lo, hi};
}

ExponentResult eb_closed_form(const JointXZ& joint, const Distribution& p,
                              double a, double rho_max) {
  auto [a_lo, a_hi] = g0_slope_range(joint, p);
  if (a < a_lo - 1e-12 || a > a_hi + 1e-12) {
    return {kInf, a > a_hi ? rho_max : -rho_max, true};
  }
  auto objective = [&](double rho) { return rho * a - g0(joint, p, rho); };
  ScalarMaximum m = maximize_concave(objective, -rho_max, rho_max);
  double sup = std::max(m.value, 0.0);  // rho = 0 always attains 0
  bool clamped = std::abs(m.arg) >= rho_max - kClampTol;
  return {a + sup, m.arg, clamped};
}

E1E2Result e1_e2(const JointXZ& joint, const Distribution& p, double r_prime,
                 double rho_max) {
  auto [a_lo, a_hi] = g0_slope_range(joint, p);
  auto objective = [&](double lambda) {
    return lambda * r_prime - g0(joint, p, lambda);
  };

  E1E2Result out;

  // E1: objective is unbounded toward lambda -> -inf iff R' < min slope.
  if (r_prime < a_lo - 1e-12) {
    out.e1 = {kInf, -rho_max, true};
  } else {
    ScalarMaximum m = maximize_concave(objective, -rho_max, 1.0);
    out.e1 = {m.value, m.arg, m.at_boundary};
    if (m.arg <= -rho_max + kClampTol) out.e1.boundary_hit = true;
  }

  // E2: unbounded toward lambda -> +inf iff R' > max slope.
  if (r_prime > a_hi + 1e-12) {
    out.e2 = {kInf, rho_max, true};
  } else {
    ScalarMaximum m = maximize_concave(objective, 0.0, rho_max);
    out.e2 = {std::max(m.value, 0.0), m.arg, m.at_boundary};
    if (m.arg >= rho_max - kClampTol) out.e2.boundary_hit = true;
  }

  // E2bar = min_{a <= R'} conjugate(a); the conjugate is convex with
  // minimum 0 at a* = D(P_{X|Z}||P_X|P), so the min is 0 when a* <= R'
  // and sits at the boundary a = R' otherwise.
  double astar = a_star(joint, p);
  if (astar <= r_prime + 1e-15) {
    out.e2_bar = {0.0, 0.0, false};
  } else {
    ScalarMaximum m = maximize_concave(
        [&](double rho) { return rho * r_prime - g0(joint, p, rho); },
        -rho_max, rho_max);
    out.e2_bar = {std::max(m.value, 0.0), m.arg,
                  std::abs(m.arg) >= rho_max - kClampTol};
  }
  return out;
}

ExponentResult et(const JointXZ& joint, const Distribution& p,
                  double r_prime) {
  auto objective = [&](double lambda) {
    return lambda * r_prime - g0(joint, p, lambda);
  };
  ScalarMaximum m = maximize_concave(objective, 0.0, 1.0);
  ExponentResult result{std::max(m.value, 0.0), m.arg, m.at_boundary};

  E1E2Result parts = e1_e2(joint, p, r_prime);
  double reconciled = std::min(parts.e1.value, parts.e2.value);
  if (std::isfinite(reconciled) &&
      std::abs(reconciled - result.value) > kZeroTol) {
    throw std::logic_error("et: min(E1,E2) disagrees with direct maximum");
  }
  return result;
}

namespace {

void enumerate_simplex_grid(int resolution, int dims,
                            const std::function<void(
                                const std::vector<double>&)>& visit) {
  std::vector<int> counts(dims, 0);
  std::vector<double> point(dims);
  // Recursion over compositions of `resolution` into `dims` parts.
  auto rec = [&](auto&& self, int pos, int remaining) -> void {
    if (pos == dims - 1) {
      counts[pos] = remaining;
      for (int i = 0; i < dims; ++i) {
        point[i] = static_cast<double>(counts[i]) / resolution;
      }
      visit(point);
      return;
    }
    for (int c = remaining; c >= 0; --c) {
      counts[pos] = c;
      self(self, pos + 1, remaining - c);
    }
  };
  rec(rec, 0, resolution);
}

}  // namespace

ExponentResult secrecy_exponent_min_form(const Distribution& p_x,
                                         const Channel& w, double r_prime,
                                         int grid_resolution) {
  if (grid_resolution < 2) {
    throw std::invalid_argument("secrecy_exponent_min_form: resolution < 2");
  }
  JointXZ joint(p_x, w);
  const int nz = joint.z_size();
  double grid_points = 1.0;
  for (int i = 1; i < nz; ++i) {
    grid_points *= static_cast<double>(grid_resolution + i) / i;
  }
  if (grid_points > 2e7) {
    throw CapExceeded("secrecy_exponent_min_form: simplex grid too large");
  }

  double best = kInf;
  double best_lambda = 0.0;
  bool best_boundary = false;
  auto consider = [&](const std::vector<double>& probs) {
    Distribution p(probs, 1e-9);
    double d = kl_divergence(p, joint.marginal_z());
    if (!std::isfinite(d)) return;
    ExponentResult t = et(joint, p, r_prime);
    if (d + t.value < best) {
      best = d + t.value;
      best_lambda = t.arg_lambda;
      best_boundary = t.boundary_hit;
    }
  };
  enumerate_simplex_grid(grid_resolution, nz, consider);

  // The analytic minimizer P(z) ~ P_Z(z) sum_x P_{X|Z}^{1+l} P_X^{-l} at
  // the outer arg-lambda enters as an extra grid point.
  ExponentResult outer = secrecy_exponent(p_x, w, r_prime);
  {
    std::vector<double> probs(nz);
    double total = 0.0;
    for (int z = 0; z < nz; ++z) {
      probs[z] = joint.marginal_z()[z] *
                 std::exp(inner_log_sum(joint, z, outer.arg_lambda));
      total += probs[z];
    }
    for (double& v : probs) v /= total;
    consider(probs);
  }

  if (best < 1e-12) best = 0.0;
  return {best, best_lambda, best_boundary};
}

double gallager_e0(const Distribution& p_x, const Channel& v, double rho) {
  if (p_x.size() != v.input_size()) {
    throw std::invalid_argument("gallager_e0: dimension mismatch");
  }
  if (rho == 0.0) return 0.0;
  std::vector<double> outer;
  outer.reserve(v.output_size());
  for (int y = 0; y < v.output_size(); ++y) {
    std::vector<double> inner;
    inner.reserve(p_x.size());
    for (int x = 0; x < p_x.size(); ++x) {
      double vy = v(y, x);
      if (vy == 0.0 || p_x[x] == 0.0) continue;
      inner.push_back(p_x.log_prob(x) + std::log(vy) / (1.0 + rho));
    }
    double li = log_sum_exp(inner);
    if (li == -kInf) continue;
    outer.push_back((1.0 + rho) * li);
  }
  return -log_sum_exp(outer);
}

ExponentResult gallager_er(const Distribution& p_x, const Channel& v,
                           double rate) {
  auto objective = [&](double rho) {
    return gallager_e0(p_x, v, rho) - rho * rate;
  };
  ScalarMaximum m = maximize_concave(objective, 0.0, 1.0);
  double value = std::max(m.value, 0.0);
  if (value < 1e-12) value = 0.0;
  return {value, m.arg, m.at_boundary};
}

std::pair<ExponentResult, ExponentResult> corollary_exponent_pair(
    const WiretapInstance& instance) {
  return {gallager_er(instance.p_x, instance.main_channel,
                      instance.rate + instance.rate_prime),
          secrecy_exponent(instance.p_x, instance.wiretap_channel,
                           instance.rate_prime)};
}

ExponentCurve sweep_secrecy_exponent(const Distribution& p_x, const Channel& w,
                                     double r_lo, double r_hi, int steps) {
  if (steps < 2) {
    throw std::invalid_argument("sweep_secrecy_exponent: steps < 2");
  }
  if (r_hi <= r_lo) {
    throw std::invalid_argument("sweep_secrecy_exponent: empty rate range");
  }
  ExponentCurve curve;
  curve.points.reserve(steps);
  for (int i = 0; i < steps; ++i) {
    double r = r_lo + (r_hi - r_lo) * i / (steps - 1);
    curve.points.emplace_back(r, secrecy_exponent(p_x, w, r));
  }
  return curve;
}

}  // namespace wiretap
