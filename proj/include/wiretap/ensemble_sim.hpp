#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wiretap/prob.hpp"

namespace wiretap {

inline constexpr const char* kGeneratorId = "splitmix64-ctr-v1";

/// M x M' array of length-n input sequences plus the seed that produced it.
struct Codebook {
  int n = 0;
  int num_messages = 0;       // M
  int words_per_message = 0;  // M'
  std::vector<int> symbols;   // [(w * M' + w') * n + i]
  std::uint64_t seed = 0;
  std::string generator_id = kGeneratorId;

  int symbol(int w, int w_prime, int i) const {
    return symbols[(static_cast<std::size_t>(w) * words_per_message + w_prime) *
                       n +
                   i];
  }
};

struct SimResult {
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t replicates = 0;
  std::uint64_t seed = 0;
  bool exact = false;
};

/// Counter-based stream: a pure function of (seed, a, b, c, d), splittable
/// and evaluation-order independent.
std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t a,
                           std::uint64_t b, std::uint64_t c, std::uint64_t d);

/// Uniform double in [0, 1) from a hashed counter.
double counter_uniform(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                       std::uint64_t c, std::uint64_t d);

/// Each symbol drawn i.i.d. from P_X via inverse CDF on the stream keyed
/// by (seed, w, w', i).
Codebook sample_codebook(const Distribution& p_x, int n, int num_messages,
                         int words_per_message, std::uint64_t seed);

/// Log-probabilities of P_{Z|W}(.|w) over Z^n in lexicographic order
/// (z_0 is the most significant digit).
std::vector<double> conditional_output_distribution(const Codebook& codebook,
                                                    const Channel& w_channel,
                                                    int message,
                                                    std::uint64_t cap = 1u
                                                        << 20);

/// D(P_{Z|W=w} || P_Z^n) by exact summation over Z^n.
double leakage_divergence(const Codebook& codebook, const Channel& w_channel,
                          const Distribution& p_z, int message,
                          std::uint64_t cap = 1u << 20);

/// Per-replicate leakage divergences; replicate r depends only on
/// (seed, r), so extending the run keeps earlier values unchanged.
std::vector<double> replicate_divergences(const Distribution& p_x,
                                          const Channel& w_channel, int n,
                                          int words_per_message,
                                          std::uint64_t replicates,
                                          std::uint64_t seed);

/// Monte Carlo mean of the leakage divergence over independently seeded
/// single-message codebooks.
SimResult ensemble_mean_divergence(const Distribution& p_x,
                                   const Channel& w_channel, int n,
                                   int words_per_message,
                                   std::uint64_t replicates,
                                   std::uint64_t seed);

struct ExhaustiveMean {
  SimResult result;          // exact E[D]
  double max_mean_gap = 0.0; // max_z | E[P_{Z|W}(z|w)] - P_Z^n(z) |
};

/// Exact ensemble mean over all |X|^{n M'} sub-codebooks; also checks
/// E[P_{Z|W}(z|w)] = P_Z^n(z) entrywise.
ExhaustiveMean exhaustive_ensemble_mean(const Distribution& p_x,
                                        const Channel& w_channel, int n,
                                        int words_per_message,
                                        std::uint64_t cap = 1u << 20);

struct EmpiricalExponentPoint {
  int n = 0;
  int words_per_message = 0;
  double mean_divergence = 0.0;
  double std_error = 0.0;
  double exponent = 0.0;  // -(1/n) ln(mean); +inf marker when undefined
  bool defined = false;
};

/// Per-n empirical decay exponents of the ensemble-mean divergence, with
/// M' = ceil(exp(n R')) capped at `words_cap`.  No extrapolation.
std::vector<EmpiricalExponentPoint> empirical_exponent(
    const Distribution& p_x, const Channel& w_channel, double r_prime,
    const std::vector<int>& n_list, std::uint64_t replicates,
    std::uint64_t seed, int words_cap = 64);

struct LeakageMI {
  double mutual_information = 0.0;   // I(W;Z), exact
  double average_divergence = 0.0;   // sum_w P_W(w) D(P_{Z|W=w} || P_Z^n)
};

/// Exact I(W;Z) = D(P_{Z|W}||P_Z^n|P_W) - D(P_Zbar||P_Z^n) for a concrete
/// codebook; also the upper bound it is dominated by.
LeakageMI exact_leakage_mutual_information(const Codebook& codebook,
                                           const Channel& w_channel,
                                           const Distribution& p_z,
                                           const Distribution& p_w,
                                           std::uint64_t cap = 1u << 20);

/// Monte Carlo Pr[decoded message != sent message] under joint ML decoding
/// of (w, w') over the main channel, messages uniform, fresh codebook per
/// replicate.  Ties broken uniformly from the decoder's own substream.
SimResult error_probability_mc(const Distribution& p_x, const Channel& v,
                               int n, int num_messages, int words_per_message,
                               std::uint64_t replicates, std::uint64_t seed);

}  // namespace wiretap
