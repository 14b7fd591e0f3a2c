#pragma once

#include <string>
#include <utility>
#include <vector>

#include "wiretap/prob.hpp"

namespace wiretap {

/// Default clamp for dual variables whose paper-level search runs over the
/// extended reals.  A maximizer within 1e-6 of the clamp sets boundary_hit
/// and the reported value is then only a lower bound on a +inf candidate.
inline constexpr double kDefaultRhoMax = 50.0;

struct ExponentResult {
  double value = 0.0;      // nats; +inf allowed
  double arg_lambda = 0.0; // optimizing lambda (or rho) when applicable
  bool boundary_hit = false;
};

struct ExponentCurve {
  std::vector<std::pair<double, ExponentResult>> points;  // rate -> result
  std::string metadata;
};

/// F0(P_X, W, lambda) = ln sum_z P_Z(z) sum_x P_{X|Z}(x|z)^{1+l} P_X(x)^{-l}.
double f0(const JointXZ& joint, double lambda);
double f0(const Distribution& p_x, const Channel& w, double lambda);

/// G0(P_{X,Z}, P, lambda) = sum_z P(z) ln sum_x P_{X|Z}^{1+l} P_X^{-l}.
double g0(const JointXZ& joint, const Distribution& p, double lambda);

/// E_s(P_X, W, R') = max_{0<=lambda<=1} { lambda R' - F0(lambda) }.
ExponentResult secrecy_exponent(const Distribution& p_x, const Channel& w,
                                double r_prime);

/// A_{X,Z}(P; Q) = D(Q||P_X|P) - D(Q||P_{X|Z}|P); -inf when Q charges a
/// pair with P_{X|Z}(x|z) = 0.
double a_value(const JointXZ& joint, const Distribution& p, const Channel& q);

/// D(P_{X|Z} || P_X | P), the level at which E_b(a) = a.
double a_star(const JointXZ& joint, const Distribution& p);

/// Closure of the derivative range of lambda -> G0; the achievable
/// levels a lie in [lo, hi].
std::pair<double, double> g0_slope_range(const JointXZ& joint,
                                         const Distribution& p);

/// E_b(P_{X,Z}, P, a) = a + sup_rho { rho a - G0(rho) }, rho clamped to
/// [-rho_max, rho_max]; +inf with boundary_hit when a is outside the
/// closure of G0's derivative range.
ExponentResult eb_closed_form(const JointXZ& joint, const Distribution& p,
                              double a, double rho_max = kDefaultRhoMax);

struct E1E2Result {
  ExponentResult e1;      // max_{lambda<=1} { lambda R' - G0 }
  ExponentResult e2;      // max_{lambda>=0} { lambda R' - G0 }
  ExponentResult e2_bar;  // min_{a<=R'} { E_b(a) - a }, via the same dual
};

E1E2Result e1_e2(const JointXZ& joint, const Distribution& p, double r_prime,
                 double rho_max = kDefaultRhoMax);

/// E_t(P_{X,Z}, R', P) = max_{0<=lambda<=1} { lambda R' - G0 }; checked
/// against min(E1, E2) within 1e-9 in the finite cases.
ExponentResult et(const JointXZ& joint, const Distribution& p, double r_prime);

/// min_P { D(P||P_Z) + E_t(P_{X,Z}, R', P) } over a simplex grid of the
/// given resolution, with the analytic optimizer included as a grid point.
ExponentResult secrecy_exponent_min_form(const Distribution& p_x,
                                         const Channel& w, double r_prime,
                                         int grid_resolution);

/// Gallager's E0(rho) = -ln sum_y [ sum_x P_X(x) V(y|x)^{1/(1+rho)} ]^{1+rho}.
double gallager_e0(const Distribution& p_x, const Channel& v, double rho);

/// E_r(rate) = max_{0<=rho<=1} { E0(rho) - rho rate }.
ExponentResult gallager_er(const Distribution& p_x, const Channel& v,
                           double rate);

/// (E_r(P_X, V, R + R'), E_s(P_X, W, R')).
std::pair<ExponentResult, ExponentResult> corollary_exponent_pair(
    const WiretapInstance& instance);

/// Sweeps E_s over [r_lo, r_hi] with the given number of sample points.
ExponentCurve sweep_secrecy_exponent(const Distribution& p_x, const Channel& w,
                                     double r_lo, double r_hi, int steps);

}  // namespace wiretap
