#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wiretap/prob.hpp"

namespace wiretap {

/// Thrown on spec-file parse or validation failures; message carries a
/// line number when one is known.
class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PrefixSpec {
  std::vector<std::string> v_alphabet;
  std::vector<double> v_distribution;
  std::vector<std::vector<double>> matrix;  // P_{X|V}, rows indexed by v
};

struct RatePair {
  double r = 0.0;
  double r_prime = 0.0;
};

/// Parsed channel-spec file: named input alphabet, input distribution,
/// the two channel matrices, optional prefix channel, optional rates.
struct ChannelSpec {
  std::vector<std::string> alphabet;
  std::vector<double> input_distribution;
  std::vector<std::vector<double>> v_matrix;
  std::vector<std::vector<double>> w_matrix;
  std::optional<PrefixSpec> prefix;
  std::optional<RatePair> rates;

  /// Input distribution and channels after applying the prefix (if any);
  /// these feed every exponent operation.
  Distribution effective_input() const;
  Channel effective_main() const;
  Channel effective_wiretap() const;

  WiretapInstance make_instance(double r, double r_prime) const;
};

ChannelSpec parse_channel_spec(const std::string& json_text);
ChannelSpec load_channel_spec(const std::string& path);
std::string serialize_channel_spec(const ChannelSpec& spec);

/// FNV-1a over the serialized spec; recorded in CSV metadata lines.
std::uint64_t spec_hash(const ChannelSpec& spec);

}  // namespace wiretap
