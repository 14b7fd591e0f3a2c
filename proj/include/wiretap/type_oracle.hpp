#pragma once

#include <cstdint>
#include <vector>

#include "wiretap/prob.hpp"

namespace wiretap {

/// An n-type: empirical distribution with all masses multiples of 1/n.
struct NType {
  int n = 0;
  std::vector<int> counts;  // sum == n

  Distribution to_distribution() const;
};

/// A conditional n-type given a base z-type: counts[z][x] with row z
/// summing to z_counts[z].
struct ConditionalType {
  std::vector<std::vector<int>> counts;

  Channel to_channel(const NType& z_type) const;
};

struct ALevel {
  double a = 0.0;                        // finite level value
  std::vector<ConditionalType> members;  // conditional types at this level
  double log_prob = 0.0;                 // ln p_a (shells summed)
};

/// The finite A-levels of a base z-type, with the aggregate probability of
/// the -inf shells tracked separately.
struct ALevelSet {
  NType z_type;
  std::vector<ALevel> levels;  // sorted by a, distinct within merge tol
  double neg_inf_log_prob = 0.0;
  bool has_neg_inf = false;

  double total_prob() const;  // finite levels + -inf mass
};

/// All compositions of n into alphabet_size parts, lexicographic order.
std::vector<NType> enumerate_n_types(int n, int alphabet_size,
                                     std::uint64_t cap = 1'000'000);

/// All conditional n-types consistent with the base z-type.
std::vector<ConditionalType> enumerate_conditional_types(
    const NType& z_type, int x_size, std::uint64_t cap = 1'000'000);

/// ln P_X^n(T_Q(z)) for any z of the given type, via multinomial counting.
double shell_log_prob(const Distribution& p_x, const NType& z_type,
                      const ConditionalType& q);

/// Groups conditional types by their A-level and sums shell probabilities.
ALevelSet a_level_set(const JointXZ& joint, const NType& z_type,
                      std::uint64_t cap = 1'000'000,
                      double merge_tol = 1e-12);

struct BruteForceEb {
  double value = 0.0;  // min D(Q||P_X|P) over the feasible grid
  double slack = 0.0;  // value-units bound on the grid discretization error
};

/// Brute-force E_b: min D(Q||P_X|P) over a per-row simplex grid of
/// stochastic matrices subject to a_value(Q) within `slack` of a; the
/// analytic minimizer at the closed-form arg-rho joins as a candidate.
/// Throws std::domain_error if no grid point is feasible.
BruteForceEb eb_bruteforce(const JointXZ& joint, const Distribution& p,
                           double a, int grid_resolution = 200);

/// Exact E[U_n ln U_n] for any z of the given type, by enumerating all
/// multinomial outcomes of the per-level codeword counts (M' trials).
double exact_un_log_moment(const JointXZ& joint, int n, int m_prime,
                           const NType& z_type,
                           std::uint64_t cap = 2'000'000);

/// ln P_Z^n(T_{z_type}): probability of the whole type class under P_Z^n.
double type_class_log_prob(const Distribution& p_z, const NType& z_type);

}  // namespace wiretap
