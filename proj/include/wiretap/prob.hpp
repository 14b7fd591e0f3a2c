#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace wiretap {

/// Probabilities at or below this threshold are treated as exact zeros
/// during validation (absorbs parser rounding).
inline constexpr double kZeroThreshold = 1e-15;

/// Thrown when an enumeration or simulation would exceed a configured
/// resource cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point on the probability simplex over a finite alphabet.
class Distribution {
 public:
  explicit Distribution(std::vector<double> probs, double sum_tol = 1e-12);

  static Distribution uniform(int alphabet_size);

  int size() const { return static_cast<int>(probs_.size()); }
  double operator[](int i) const { return probs_[i]; }
  const std::vector<double>& probs() const { return probs_; }
  bool full_support() const { return full_support_; }

  /// ln p_i; -inf for zero entries.
  double log_prob(int i) const;

  bool operator==(const Distribution& other) const = default;

 private:
  std::vector<double> probs_;
  bool full_support_ = true;
};

/// A row-stochastic matrix between finite alphabets (row x = input symbol).
class Channel {
 public:
  Channel(int input_size, int output_size, std::vector<double> row_major,
          double sum_tol = 1e-12);

  static Channel identity(int alphabet_size);
  static Channel bsc(double crossover);
  /// Channel whose every row equals `row` (input is ignored).
  static Channel replicate_rows(const Distribution& row, int input_size);

  int input_size() const { return input_size_; }
  int output_size() const { return output_size_; }
  double operator()(int output, int input) const {
    return entries_[input * output_size_ + output];
  }
  std::span<const double> row(int input) const {
    return {entries_.data() + input * output_size_,
            static_cast<std::size_t>(output_size_)};
  }
  Distribution row_distribution(int input) const;

  bool operator==(const Channel& other) const = default;

 private:
  int input_size_;
  int output_size_;
  std::vector<double> entries_;  // row-major, entries_[x * |out| + y]
};

/// Joint distribution of (X, Z) with cached marginals and posterior.
class JointXZ {
 public:
  /// Builds P_{X,Z}(x,z) = P_X(x) W(z|x).
  JointXZ(const Distribution& p_x, const Channel& w);

  int x_size() const { return p_x_.size(); }
  int z_size() const { return p_z_.size(); }
  double operator()(int x, int z) const {
    return matrix_[x * p_z_.size() + z];
  }
  const Distribution& marginal_x() const { return p_x_; }
  const Distribution& marginal_z() const { return p_z_; }

  /// P_{X|Z} as a channel Z -> X.  Throws if some P_Z(z) = 0.
  const Channel& posterior() const;

 private:
  std::vector<double> matrix_;  // row-major over (x, z)
  Distribution p_x_;
  Distribution p_z_;
  std::optional<Channel> posterior_;  // absent if P_Z is not full support
};

/// Input distribution, main channel, wiretap channel and the rate pair.
struct WiretapInstance {
  Distribution p_x;
  Channel main_channel;     // V: X -> Y
  Channel wiretap_channel;  // W: X -> Z
  double rate;              // R, nats/symbol
  double rate_prime;        // R', nats/symbol

  WiretapInstance(Distribution p_x_in, Channel v, Channel w, double r,
                  double r_prime);
};

Distribution output_marginal(const Distribution& p_x, const Channel& ch);

/// P_{X|Z}(x|z) = P_{X,Z}(x,z) / P_Z(z), as a channel Z -> X.
Channel posterior(const JointXZ& joint);

/// I(X;Z) in nats.
double mutual_information(const Distribution& p_x, const Channel& ch);

/// D(P || Q); +inf if P charges a Q-null symbol.
double kl_divergence(const Distribution& p, const Distribution& q);

/// sum_z P(z) D(Q(.|z) || ref(.|z)); may be +inf.
double conditional_kl(const Channel& q, const Channel& ref,
                      const Distribution& p);

/// ln P^n(seq) = sum_i ln P(seq_i); -inf allowed.
double sequence_log_prob(const Distribution& p, std::span<const int> seq);

/// Prefixes `ch` with P_{X|V}: returns the induced input distribution on X
/// and the effective channel V -> output of `ch`.
std::pair<Distribution, Channel> compose_prefix(const Distribution& p_v,
                                                const Channel& prefix,
                                                const Channel& ch);

}  // namespace wiretap
