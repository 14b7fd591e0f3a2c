#include "wiretap/prob.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace wiretap {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

Distribution::Distribution(std::vector<double> probs, double sum_tol)
    : probs_(std::move(probs)) {
  if (probs_.empty()) {
    throw std::invalid_argument("Distribution: empty alphabet");
  }
  double sum = 0.0;
  for (double& p : probs_) {
    if (p < 0.0) {
      if (p < -kZeroThreshold) {
        throw std::invalid_argument("Distribution: negative probability");
      }
      p = 0.0;
    }
    if (p <= kZeroThreshold) {
      p = 0.0;
      full_support_ = false;
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > sum_tol) {
    throw std::invalid_argument("Distribution: probabilities sum to " +
                                std::to_string(sum) + ", expected 1");
  }
}

Distribution Distribution::uniform(int alphabet_size) {
  if (alphabet_size <= 0) {
    throw std::invalid_argument("Distribution: non-positive alphabet size");
  }
  return Distribution(
      std::vector<double>(alphabet_size, 1.0 / alphabet_size));
}

double Distribution::log_prob(int i) const {
  double p = probs_[i];
  return p > 0.0 ? std::log(p) : -kInf;
}

Channel::Channel(int input_size, int output_size, std::vector<double> row_major,
                 double sum_tol)
    : input_size_(input_size),
      output_size_(output_size),
      entries_(std::move(row_major)) {
  if (input_size_ <= 0 || output_size_ <= 0) {
    throw std::invalid_argument("Channel: non-positive alphabet size");
  }
  if (entries_.size() !=
      static_cast<std::size_t>(input_size_) * output_size_) {
    throw std::invalid_argument("Channel: entry count does not match sizes");
  }
  for (int x = 0; x < input_size_; ++x) {
    double sum = 0.0;
    for (int y = 0; y < output_size_; ++y) {
      double& p = entries_[x * output_size_ + y];
      if (p < 0.0) {
        if (p < -kZeroThreshold) {
          throw std::invalid_argument("Channel: negative entry");
        }
        p = 0.0;
      }
      if (p <= kZeroThreshold) p = 0.0;
      sum += p;
    }
    if (std::abs(sum - 1.0) > sum_tol) {
      throw std::invalid_argument("Channel: row " + std::to_string(x) +
                                  " sums to " + std::to_string(sum));
    }
  }
}

Channel Channel::identity(int alphabet_size) {
  std::vector<double> e(static_cast<std::size_t>(alphabet_size) *
                            alphabet_size,
                        0.0);
  for (int i = 0; i < alphabet_size; ++i) e[i * alphabet_size + i] = 1.0;
  return Channel(alphabet_size, alphabet_size, std::move(e));
}

Channel Channel::bsc(double crossover) {
  if (crossover < 0.0 || crossover > 1.0) {
    throw std::invalid_argument("bsc: crossover outside [0,1]");
  }
  return Channel(2, 2,
                 {1.0 - crossover, crossover, crossover, 1.0 - crossover});
}

Channel Channel::replicate_rows(const Distribution& row, int input_size) {
  std::vector<double> e;
  e.reserve(static_cast<std::size_t>(input_size) * row.size());
  for (int x = 0; x < input_size; ++x) {
    e.insert(e.end(), row.probs().begin(), row.probs().end());
  }
  return Channel(input_size, row.size(), std::move(e));
}

Distribution Channel::row_distribution(int input) const {
  auto r = row(input);
  return Distribution(std::vector<double>(r.begin(), r.end()));
}

JointXZ::JointXZ(const Distribution& p_x, const Channel& w)
    : p_x_(p_x), p_z_(output_marginal(p_x, w)) {
  const int nx = p_x.size();
  const int nz = w.output_size();
  matrix_.resize(static_cast<std::size_t>(nx) * nz);
  for (int x = 0; x < nx; ++x) {
    for (int z = 0; z < nz; ++z) {
      matrix_[x * nz + z] = p_x[x] * w(z, x);
    }
  }
  if (p_z_.full_support()) {
    std::vector<double> rows(static_cast<std::size_t>(nz) * nx);
    for (int z = 0; z < nz; ++z) {
      for (int x = 0; x < nx; ++x) {
        rows[z * nx + x] = matrix_[x * nz + z] / p_z_[z];
      }
    }
    posterior_.emplace(nz, nx, std::move(rows), 1e-9);
  }
}

const Channel& JointXZ::posterior() const {
  if (!posterior_) {
    throw std::domain_error("posterior: output marginal has a zero entry");
  }
  return *posterior_;
}

WiretapInstance::WiretapInstance(Distribution p_x_in, Channel v, Channel w,
                                 double r, double r_prime)
    : p_x(std::move(p_x_in)),
      main_channel(std::move(v)),
      wiretap_channel(std::move(w)),
      rate(r),
      rate_prime(r_prime) {
  if (p_x.size() != main_channel.input_size() ||
      p_x.size() != wiretap_channel.input_size()) {
    throw std::invalid_argument("WiretapInstance: dimension mismatch");
  }
  if (!p_x.full_support()) {
    throw std::invalid_argument("WiretapInstance: P_X must have full support");
  }
  if (!output_marginal(p_x, wiretap_channel).full_support()) {
    throw std::invalid_argument(
        "WiretapInstance: induced P_Z must have full support");
  }
  if (rate < 0.0 || rate_prime < 0.0) {
    throw std::invalid_argument("WiretapInstance: negative rate");
  }
}

Distribution output_marginal(const Distribution& p_x, const Channel& ch) {
  if (p_x.size() != ch.input_size()) {
    throw std::invalid_argument("output_marginal: dimension mismatch");
  }
  std::vector<double> out(ch.output_size(), 0.0);
  for (int x = 0; x < p_x.size(); ++x) {
    if (p_x[x] == 0.0) continue;
    auto row = ch.row(x);
    for (int y = 0; y < ch.output_size(); ++y) out[y] += p_x[x] * row[y];
  }
  return Distribution(std::move(out));
}

Channel posterior(const JointXZ& joint) { return joint.posterior(); }

double mutual_information(const Distribution& p_x, const Channel& ch) {
  Distribution p_out = output_marginal(p_x, ch);
  double mi = 0.0;
  for (int x = 0; x < p_x.size(); ++x) {
    if (p_x[x] == 0.0) continue;
    for (int y = 0; y < ch.output_size(); ++y) {
      double w = ch(y, x);
      if (w == 0.0) continue;
      mi += p_x[x] * w * std::log(w / p_out[y]);
    }
  }
  return mi;
}

double kl_divergence(const Distribution& p, const Distribution& q) {
  if (p.size() != q.size()) {
    throw std::invalid_argument("kl_divergence: alphabet mismatch");
  }
  double d = 0.0;
  for (int i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) return kInf;
    d += p[i] * std::log(p[i] / q[i]);
  }
  return std::max(d, 0.0);
}

double conditional_kl(const Channel& q, const Channel& ref,
                      const Distribution& p) {
  if (q.input_size() != p.size() || ref.input_size() != q.input_size() ||
      ref.output_size() != q.output_size()) {
    throw std::invalid_argument("conditional_kl: dimension mismatch");
  }
  double d = 0.0;
  for (int z = 0; z < p.size(); ++z) {
    if (p[z] == 0.0) continue;
    double row = kl_divergence(q.row_distribution(z), ref.row_distribution(z));
    if (row == kInf) return kInf;
    d += p[z] * row;
  }
  return d;
}

double sequence_log_prob(const Distribution& p, std::span<const int> seq) {
  double lp = 0.0;
  for (int s : seq) {
    if (s < 0 || s >= p.size()) {
      throw std::out_of_range("sequence_log_prob: symbol outside alphabet");
    }
    lp += p.log_prob(s);
  }
  return lp;
}

std::pair<Distribution, Channel> compose_prefix(const Distribution& p_v,
                                                const Channel& prefix,
                                                const Channel& ch) {
  if (p_v.size() != prefix.input_size() ||
      prefix.output_size() != ch.input_size()) {
    throw std::invalid_argument("compose_prefix: dimension mismatch");
  }
  Distribution p_x = output_marginal(p_v, prefix);
  const int nv = prefix.input_size();
  const int ny = ch.output_size();
  std::vector<double> eff(static_cast<std::size_t>(nv) * ny, 0.0);
  for (int v = 0; v < nv; ++v) {
    for (int x = 0; x < ch.input_size(); ++x) {
      double pvx = prefix(x, v);
      if (pvx == 0.0) continue;
      for (int y = 0; y < ny; ++y) eff[v * ny + y] += pvx * ch(y, x);
    }
  }
  return {std::move(p_x), Channel(nv, ny, std::move(eff), 1e-9)};
}

}  // namespace wiretap
