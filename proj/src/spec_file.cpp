#include "wiretap/spec_file.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace wiretap {

namespace {

using nlohmann::json;

constexpr double kParseTol = 1e-9;

std::vector<double> renormalized(std::vector<double> v, const char* what) {
  double sum = 0.0;
  for (double x : v) {
    if (x < -kParseTol) {
      throw SpecError(std::string(what) + ": negative entry");
    }
    sum += std::max(x, 0.0);
  }
  if (std::abs(sum - 1.0) > kParseTol) {
    throw SpecError(std::string(what) + ": entries sum to " +
                    std::to_string(sum) + ", expected 1 within 1e-9");
  }
  // Renormalize only when needed so parse -> serialize -> parse is a
  // fixed point.
  if (std::abs(sum - 1.0) > 1e-12) {
    for (double& x : v) x = std::max(x, 0.0) / sum;
  } else {
    for (double& x : v) x = std::max(x, 0.0);
  }
  return v;
}

std::vector<double> get_vector(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array()) {
    throw SpecError(std::string("missing or non-array field '") + key + "'");
  }
  std::vector<double> out;
  for (const auto& e : j[key]) {
    if (!e.is_number()) {
      throw SpecError(std::string("field '") + key +
                      "' contains a non-numeric entry");
    }
    out.push_back(e.get<double>());
  }
  return out;
}

std::vector<std::vector<double>> get_matrix(const json& j, const char* key,
                                            std::size_t expected_rows) {
  if (!j.contains(key) || !j[key].is_array()) {
    throw SpecError(std::string("missing or non-array field '") + key + "'");
  }
  std::vector<std::vector<double>> rows;
  for (const auto& row : j[key]) {
    std::vector<double> r;
    for (const auto& e : row) {
      if (!e.is_number()) {
        throw SpecError(std::string("matrix '") + key +
                        "' contains a non-numeric entry");
      }
      r.push_back(e.get<double>());
    }
    rows.push_back(renormalized(std::move(r),
                                (std::string("matrix '") + key + "' row")
                                    .c_str()));
  }
  if (rows.size() != expected_rows) {
    throw SpecError(std::string("matrix '") + key + "' has " +
                    std::to_string(rows.size()) + " rows, expected " +
                    std::to_string(expected_rows));
  }
  std::size_t cols = rows.front().size();
  for (const auto& r : rows) {
    if (r.size() != cols) throw SpecError(std::string("matrix '") + key +
                                          "' has ragged rows");
  }
  return rows;
}

Channel to_channel(const std::vector<std::vector<double>>& rows) {
  std::vector<double> flat;
  for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
  return Channel(static_cast<int>(rows.size()),
                 static_cast<int>(rows.front().size()), std::move(flat));
}

}  // namespace

Distribution ChannelSpec::effective_input() const {
  Distribution base{input_distribution};
  if (!prefix) return base;
  Distribution p_v{prefix->v_distribution};
  return output_marginal(p_v, to_channel(prefix->matrix));
}

Channel ChannelSpec::effective_main() const {
  Channel v = to_channel(v_matrix);
  if (!prefix) return v;
  return compose_prefix(Distribution{prefix->v_distribution},
                        to_channel(prefix->matrix), v)
      .second;
}

Channel ChannelSpec::effective_wiretap() const {
  Channel w = to_channel(w_matrix);
  if (!prefix) return w;
  return compose_prefix(Distribution{prefix->v_distribution},
                        to_channel(prefix->matrix), w)
      .second;
}

WiretapInstance ChannelSpec::make_instance(double r, double r_prime) const {
  // With a prefix, the instance lives on the V alphabet: the prefixed
  // system behaves exactly like an unprefixed one with V as the input.
  if (prefix) {
    Distribution p_v{prefix->v_distribution};
    return WiretapInstance(p_v, effective_main(), effective_wiretap(), r,
                           r_prime);
  }
  return WiretapInstance(Distribution{input_distribution},
                         to_channel(v_matrix), to_channel(w_matrix), r,
                         r_prime);
}

ChannelSpec parse_channel_spec(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < e.byte && i < json_text.size(); ++i) {
      if (json_text[i] == '\n') ++line;
    }
    throw SpecError("parse error at line " + std::to_string(line) + ": " +
                    e.what());
  }

  ChannelSpec spec;
  if (!j.contains("alphabet") || !j["alphabet"].is_array()) {
    throw SpecError("missing or non-array field 'alphabet'");
  }
  for (const auto& s : j["alphabet"]) {
    spec.alphabet.push_back(s.get<std::string>());
  }
  if (spec.alphabet.empty()) throw SpecError("'alphabet' is empty");

  spec.input_distribution =
      renormalized(get_vector(j, "input_distribution"), "input_distribution");
  if (spec.input_distribution.size() != spec.alphabet.size()) {
    throw SpecError("'input_distribution' size does not match 'alphabet'");
  }
  spec.v_matrix = get_matrix(j, "V", spec.alphabet.size());
  spec.w_matrix = get_matrix(j, "W", spec.alphabet.size());

  if (j.contains("prefix")) {
    const json& p = j["prefix"];
    PrefixSpec prefix;
    if (p.contains("v_alphabet")) {
      for (const auto& s : p["v_alphabet"]) {
        prefix.v_alphabet.push_back(s.get<std::string>());
      }
    }
    prefix.v_distribution =
        renormalized(get_vector(p, "v_distribution"), "prefix.v_distribution");
    prefix.matrix = get_matrix(p, "matrix", prefix.v_distribution.size());
    if (prefix.matrix.front().size() != spec.alphabet.size()) {
      throw SpecError("'prefix.matrix' columns do not match 'alphabet'");
    }
    if (prefix.v_alphabet.empty()) {
      for (std::size_t i = 0; i < prefix.v_distribution.size(); ++i) {
        prefix.v_alphabet.push_back("v" + std::to_string(i));
      }
    }
    spec.prefix = std::move(prefix);
  }
  if (j.contains("rates")) {
    const json& r = j["rates"];
    RatePair rates;
    if (!r.contains("R") || !r.contains("R_prime")) {
      throw SpecError("'rates' requires fields 'R' and 'R_prime'");
    }
    rates.r = r["R"].get<double>();
    rates.r_prime = r["R_prime"].get<double>();
    if (rates.r < 0.0 || rates.r_prime < 0.0) {
      throw SpecError("'rates' entries must be non-negative");
    }
    spec.rates = rates;
  }
  return spec;
}

ChannelSpec load_channel_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open spec file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_channel_spec(buf.str());
}

std::string serialize_channel_spec(const ChannelSpec& spec) {
  json j;
  j["alphabet"] = spec.alphabet;
  j["input_distribution"] = spec.input_distribution;
  j["V"] = spec.v_matrix;
  j["W"] = spec.w_matrix;
  if (spec.prefix) {
    j["prefix"] = {{"v_alphabet", spec.prefix->v_alphabet},
                   {"v_distribution", spec.prefix->v_distribution},
                   {"matrix", spec.prefix->matrix}};
  }
  if (spec.rates) {
    j["rates"] = {{"R", spec.rates->r}, {"R_prime", spec.rates->r_prime}};
  }
  return j.dump(2);
}

std::uint64_t spec_hash(const ChannelSpec& spec) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : serialize_channel_spec(spec)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace wiretap
