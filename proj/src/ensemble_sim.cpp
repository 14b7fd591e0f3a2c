#include "wiretap/ensemble_sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wiretap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t checked_power(std::uint64_t base, int exp, std::uint64_t cap,
                            const char* what) {
  std::uint64_t result = 1;
  for (int i = 0; i < exp; ++i) {
    if (result > cap / base) throw CapExceeded(what);
    result *= base;
  }
  if (result > cap) throw CapExceeded(what);
  return result;
}

int inverse_cdf(const Distribution& p, double u) {
  double acc = 0.0;
  for (int i = 0; i < p.size(); ++i) {
    acc += p[i];
    if (u < acc) return i;
  }
  return p.size() - 1;
}

/// W^n(.|x) over Z^n in lexicographic order (z_0 most significant),
/// linear domain.  Safe while n * ln(min positive entry) stays well above
/// the double underflow threshold; callers check via `product_dp_safe`.
void word_output_table(const Channel& w, const int* word, int n,
                       std::vector<double>& table) {
  table.assign(1, 1.0);
  std::vector<double> next;
  const int nz = w.output_size();
  for (int i = 0; i < n; ++i) {
    next.resize(table.size() * nz);
    auto row = [&](int z) { return w(z, word[i]); };
    for (std::size_t j = 0; j < table.size(); ++j) {
      for (int z = 0; z < nz; ++z) next[j * nz + z] = table[j] * row(z);
    }
    table.swap(next);
  }
}

bool product_dp_safe(const Channel& w, int n) {
  double min_pos = 1.0;
  for (int x = 0; x < w.input_size(); ++x) {
    for (int z = 0; z < w.output_size(); ++z) {
      double p = w(z, x);
      if (p > 0.0) min_pos = std::min(min_pos, p);
    }
  }
  return n * std::log(min_pos) > -600.0;
}

/// Same table in log domain (additions only).
void word_output_log_table(const Channel& w, const int* word, int n,
                           std::vector<double>& table) {
  table.assign(1, 0.0);
  std::vector<double> next;
  const int nz = w.output_size();
  for (int i = 0; i < n; ++i) {
    next.resize(table.size() * nz);
    for (std::size_t j = 0; j < table.size(); ++j) {
      for (int z = 0; z < nz; ++z) {
        double p = w(z, word[i]);
        next[j * nz + z] =
            p > 0.0 ? table[j] + std::log(p) : -kInf;
      }
    }
    table.swap(next);
  }
}

/// P_{Z|W}(.|w) in linear domain for one message of a codebook.
std::vector<double> message_output_probs(const Codebook& cb,
                                         const Channel& w_channel, int message,
                                         std::uint64_t cap) {
  if (message < 0 || message >= cb.num_messages) {
    throw std::invalid_argument("message index out of range");
  }
  std::uint64_t size = checked_power(w_channel.output_size(), cb.n, cap,
                                     "output enumeration exceeds cap");
  std::vector<double> acc(size, 0.0);
  std::vector<double> table;
  const int mp = cb.words_per_message;
  const bool fast = product_dp_safe(w_channel, cb.n);
  for (int wp = 0; wp < mp; ++wp) {
    const int* word =
        cb.symbols.data() +
        (static_cast<std::size_t>(message) * mp + wp) * cb.n;
    if (fast) {
      word_output_table(w_channel, word, cb.n, table);
      for (std::size_t z = 0; z < size; ++z) acc[z] += table[z];
    } else {
      word_output_log_table(w_channel, word, cb.n, table);
      for (std::size_t z = 0; z < size; ++z) {
        if (table[z] > -kInf) acc[z] += std::exp(table[z]);
      }
    }
  }
  for (double& p : acc) p /= mp;
  return acc;
}

std::vector<double> product_log_table(const Distribution& p, int n,
                                      std::uint64_t size) {
  std::vector<double> table(1, 0.0), next;
  const int k = p.size();
  for (int i = 0; i < n; ++i) {
    next.resize(table.size() * k);
    for (std::size_t j = 0; j < table.size(); ++j) {
      for (int z = 0; z < k; ++z) next[j * k + z] = table[j] + p.log_prob(z);
    }
    table.swap(next);
  }
  if (table.size() != size) throw std::logic_error("table size mismatch");
  return table;
}

/// sum_z p(z) ln( p(z) / exp(log_q(z)) ) with 0 ln 0 = 0.  Residue below
/// 1e-12 is rounding noise (e.g. equal distributions reached through
/// different arithmetic) and collapses to an exact zero.
double divergence_against_log_ref(const std::vector<double>& p,
                                  const std::vector<double>& log_q) {
  double d = 0.0;
  for (std::size_t z = 0; z < p.size(); ++z) {
    if (p[z] <= 0.0) continue;
    if (log_q[z] == -kInf) return kInf;
    d += p[z] * (std::log(p[z]) - log_q[z]);
  }
  return d < 1e-12 ? 0.0 : d;
}

/// Deterministic pairwise reduction; result independent of how replicates
/// were distributed across workers.
double pairwise_sum(const std::vector<double>& v, std::size_t lo,
                    std::size_t hi) {
  if (hi - lo <= 8) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += v[i];
    return s;
  }
  std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

SimResult summarize(const std::vector<double>& values, std::uint64_t seed) {
  const std::size_t n = values.size();
  double mean = pairwise_sum(values, 0, n) / n;
  std::vector<double> sq(n);
  for (std::size_t i = 0; i < n; ++i) {
    double d = values[i] - mean;
    sq[i] = d * d;
  }
  double var = n > 1 ? pairwise_sum(sq, 0, n) / (n - 1) : 0.0;
  return {mean, std::sqrt(var / n), n, seed, false};
}

}  // namespace

std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t a,
                           std::uint64_t b, std::uint64_t c, std::uint64_t d) {
  std::uint64_t h = mix64(seed);
  h = mix64(h ^ a);
  h = mix64(h ^ b);
  h = mix64(h ^ c);
  h = mix64(h ^ d);
  return h;
}

double counter_uniform(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                       std::uint64_t c, std::uint64_t d) {
  return (counter_hash(seed, a, b, c, d) >> 11) * 0x1.0p-53;
}

Codebook sample_codebook(const Distribution& p_x, int n, int num_messages,
                         int words_per_message, std::uint64_t seed) {
  if (n <= 0 || num_messages <= 0 || words_per_message <= 0) {
    throw std::invalid_argument("sample_codebook: non-positive dimension");
  }
  std::uint64_t total = static_cast<std::uint64_t>(num_messages) *
                        words_per_message * static_cast<std::uint64_t>(n);
  if (total > (1u << 26)) {
    throw CapExceeded("sample_codebook: codebook exceeds memory cap");
  }
  Codebook cb;
  cb.n = n;
  cb.num_messages = num_messages;
  cb.words_per_message = words_per_message;
  cb.seed = seed;
  cb.symbols.resize(total);
  std::size_t idx = 0;
  for (int w = 0; w < num_messages; ++w) {
    for (int wp = 0; wp < words_per_message; ++wp) {
      for (int i = 0; i < n; ++i) {
        cb.symbols[idx++] =
            inverse_cdf(p_x, counter_uniform(seed, w, wp, i, 0));
      }
    }
  }
  return cb;
}

std::vector<double> conditional_output_distribution(const Codebook& codebook,
                                                    const Channel& w_channel,
                                                    int message,
                                                    std::uint64_t cap) {
  std::vector<double> probs =
      message_output_probs(codebook, w_channel, message, cap);
  double total = 0.0;
  for (double p : probs) total += p;
  if (std::abs(total - 1.0) > 1e-9) {
    throw std::logic_error("conditional_output_distribution: not normalized");
  }
  std::vector<double> log_probs(probs.size());
  for (std::size_t z = 0; z < probs.size(); ++z) {
    log_probs[z] = probs[z] > 0.0 ? std::log(probs[z]) : -kInf;
  }
  return log_probs;
}

double leakage_divergence(const Codebook& codebook, const Channel& w_channel,
                          const Distribution& p_z, int message,
                          std::uint64_t cap) {
  std::vector<double> probs =
      message_output_probs(codebook, w_channel, message, cap);
  std::vector<double> log_ref = product_log_table(p_z, codebook.n,
                                                  probs.size());
  return divergence_against_log_ref(probs, log_ref);
}

std::vector<double> replicate_divergences(const Distribution& p_x,
                                          const Channel& w_channel, int n,
                                          int words_per_message,
                                          std::uint64_t replicates,
                                          std::uint64_t seed) {
  if (replicates == 0) {
    throw std::invalid_argument("replicate_divergences: zero replicates");
  }
  Distribution p_z = output_marginal(p_x, w_channel);
  std::uint64_t size = checked_power(w_channel.output_size(), n, 1u << 20,
                                     "output enumeration exceeds cap");
  std::vector<double> log_ref = product_log_table(p_z, n, size);

  std::vector<double> values(replicates);
  for (std::uint64_t r = 0; r < replicates; ++r) {
    std::uint64_t sub_seed = counter_hash(seed, r, 0, 0, 1);
    Codebook cb = sample_codebook(p_x, n, 1, words_per_message, sub_seed);
    std::vector<double> probs =
        message_output_probs(cb, w_channel, 0, 1u << 20);
    values[r] = divergence_against_log_ref(probs, log_ref);
  }
  return values;
}

SimResult ensemble_mean_divergence(const Distribution& p_x,
                                   const Channel& w_channel, int n,
                                   int words_per_message,
                                   std::uint64_t replicates,
                                   std::uint64_t seed) {
  return summarize(replicate_divergences(p_x, w_channel, n, words_per_message,
                                         replicates, seed),
                   seed);
}

ExhaustiveMean exhaustive_ensemble_mean(const Distribution& p_x,
                                        const Channel& w_channel, int n,
                                        int words_per_message,
                                        std::uint64_t cap) {
  const int nx = p_x.size();
  const int total_symbols = n * words_per_message;
  std::uint64_t num_codebooks = checked_power(
      nx, total_symbols, cap, "exhaustive_ensemble_mean: exceeds cap");
  std::uint64_t out_size = checked_power(w_channel.output_size(), n, cap,
                                         "output enumeration exceeds cap");

  Distribution p_z = output_marginal(p_x, w_channel);
  std::vector<double> log_ref = product_log_table(p_z, n, out_size);

  std::vector<int> symbols(total_symbols, 0);
  std::vector<double> mean_probs(out_size, 0.0);
  std::vector<double> table;
  double expected_divergence = 0.0;

  for (std::uint64_t code = 0; code < num_codebooks; ++code) {
    std::uint64_t rem = code;
    double weight = 1.0;
    for (int s = 0; s < total_symbols; ++s) {
      symbols[s] = static_cast<int>(rem % nx);
      rem /= nx;
      weight *= p_x[symbols[s]];
    }
    if (weight == 0.0) continue;

    std::vector<double> probs(out_size, 0.0);
    for (int wp = 0; wp < words_per_message; ++wp) {
      word_output_table(w_channel, symbols.data() + wp * n, n, table);
      for (std::uint64_t z = 0; z < out_size; ++z) probs[z] += table[z];
    }
    for (double& p : probs) p /= words_per_message;

    for (std::uint64_t z = 0; z < out_size; ++z) {
      mean_probs[z] += weight * probs[z];
    }
    expected_divergence +=
        weight * divergence_against_log_ref(probs, log_ref);
  }

  double max_gap = 0.0;
  for (std::uint64_t z = 0; z < out_size; ++z) {
    double ref = log_ref[z] == -kInf ? 0.0 : std::exp(log_ref[z]);
    max_gap = std::max(max_gap, std::abs(mean_probs[z] - ref));
  }

  ExhaustiveMean out;
  out.result = {expected_divergence, 0.0, num_codebooks, 0, true};
  out.max_mean_gap = max_gap;
  return out;
}

std::vector<EmpiricalExponentPoint> empirical_exponent(
    const Distribution& p_x, const Channel& w_channel, double r_prime,
    const std::vector<int>& n_list, std::uint64_t replicates,
    std::uint64_t seed, int words_cap) {
  std::vector<EmpiricalExponentPoint> points;
  points.reserve(n_list.size());
  for (int n : n_list) {
    int mp = static_cast<int>(
        std::min<double>(words_cap, std::ceil(std::exp(n * r_prime))));
    mp = std::max(mp, 1);
    SimResult sr = ensemble_mean_divergence(
        p_x, w_channel, n, mp, replicates, counter_hash(seed, n, 0, 0, 2));
    EmpiricalExponentPoint pt;
    pt.n = n;
    pt.words_per_message = mp;
    pt.mean_divergence = sr.estimate;
    pt.std_error = sr.std_error;
    if (sr.estimate > 0.0) {
      pt.exponent = -std::log(sr.estimate) / n;
      pt.defined = true;
    } else {
      pt.exponent = kInf;
      pt.defined = false;
    }
    points.push_back(pt);
  }
  return points;
}

LeakageMI exact_leakage_mutual_information(const Codebook& codebook,
                                           const Channel& w_channel,
                                           const Distribution& p_z,
                                           const Distribution& p_w,
                                           std::uint64_t cap) {
  if (p_w.size() != codebook.num_messages) {
    throw std::invalid_argument(
        "exact_leakage_mutual_information: P_W size mismatch");
  }
  std::uint64_t size = checked_power(w_channel.output_size(), codebook.n, cap,
                                     "output enumeration exceeds cap");
  std::vector<double> log_ref =
      product_log_table(p_z, codebook.n, size);

  std::vector<std::vector<double>> per_message(codebook.num_messages);
  std::vector<double> mixture(size, 0.0);
  double cond_div = 0.0;
  for (int w = 0; w < codebook.num_messages; ++w) {
    per_message[w] = message_output_probs(codebook, w_channel, w, cap);
    cond_div += p_w[w] * divergence_against_log_ref(per_message[w], log_ref);
    for (std::uint64_t z = 0; z < size; ++z) {
      mixture[z] += p_w[w] * per_message[w][z];
    }
  }
  double mixture_div = divergence_against_log_ref(mixture, log_ref);
  LeakageMI out;
  out.mutual_information = std::max(cond_div - mixture_div, 0.0);
  out.average_divergence = cond_div;
  return out;
}

SimResult error_probability_mc(const Distribution& p_x, const Channel& v,
                               int n, int num_messages, int words_per_message,
                               std::uint64_t replicates, std::uint64_t seed) {
  if (replicates == 0) {
    throw std::invalid_argument("error_probability_mc: zero replicates");
  }
  if (static_cast<std::uint64_t>(num_messages) * words_per_message > 4096) {
    throw CapExceeded("error_probability_mc: ML decoding too large");
  }
  std::vector<double> errors(replicates);
  std::vector<int> y(n);
  for (std::uint64_t r = 0; r < replicates; ++r) {
    std::uint64_t sub_seed = counter_hash(seed, r, 0, 0, 3);
    Codebook cb =
        sample_codebook(p_x, n, num_messages, words_per_message, sub_seed);

    // Message, randomization index, channel noise and decoder tie-breaks
    // all come from disjoint substreams of (seed, r).
    int w = std::min(num_messages - 1,
                     static_cast<int>(counter_uniform(sub_seed, 0, 0, 0, 10) *
                                      num_messages));
    int wp = std::min(
        words_per_message - 1,
        static_cast<int>(counter_uniform(sub_seed, 0, 0, 0, 11) *
                         words_per_message));
    for (int i = 0; i < n; ++i) {
      y[i] = inverse_cdf(v.row_distribution(cb.symbol(w, wp, i)),
                         counter_uniform(sub_seed, i, 0, 0, 12));
    }

    double best = -kInf;
    std::vector<int> best_messages;
    for (int w2 = 0; w2 < num_messages; ++w2) {
      for (int wp2 = 0; wp2 < words_per_message; ++wp2) {
        double ll = 0.0;
        for (int i = 0; i < n; ++i) {
          double p = v(y[i], cb.symbol(w2, wp2, i));
          if (p == 0.0) {
            ll = -kInf;
            break;
          }
          ll += std::log(p);
        }
        if (ll > best) {
          best = ll;
          best_messages.assign(1, w2);
        } else if (ll == best && ll > -kInf) {
          best_messages.push_back(w2);
        }
      }
    }
    int decoded = best_messages.empty()
                      ? 0
                      : best_messages[static_cast<std::size_t>(
                            counter_uniform(sub_seed, 0, 0, 0, 13) *
                            best_messages.size())];
    errors[r] = decoded == w ? 0.0 : 1.0;
  }
  return summarize(errors, seed);
}

}  // namespace wiretap
