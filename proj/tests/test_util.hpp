#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "wiretap/prob.hpp"

namespace wiretap::test {

/// Deterministic xorshift-style stream for test fixtures.
inline double next_uniform(std::uint64_t& state) {
  state ^= state << 13;
  state ^= state >> 7;
  state ^= state << 17;
  return (state >> 11) * 0x1.0p-53;
}

inline Distribution random_distribution(int k, std::uint64_t& state,
                                        double floor = 0.05) {
  std::vector<double> v(k);
  double sum = 0.0;
  for (double& x : v) {
    x = floor - std::log(1.0 - next_uniform(state));
    sum += x;
  }
  for (double& x : v) x /= sum;
  return Distribution(std::move(v), 1e-9);
}

inline Channel random_channel(int in, int out, std::uint64_t& state,
                              double floor = 0.05) {
  std::vector<double> rows;
  rows.reserve(static_cast<std::size_t>(in) * out);
  for (int x = 0; x < in; ++x) {
    Distribution row = random_distribution(out, state, floor);
    rows.insert(rows.end(), row.probs().begin(), row.probs().end());
  }
  return Channel(in, out, std::move(rows), 1e-9);
}

/// Dense 1-D grid maximization, the independent oracle for the
/// golden-section searches.
template <typename F>
double grid_max(F&& f, double lo, double hi, double step) {
  double best = f(lo);
  for (double x = lo + step; x <= hi + step / 2; x += step) {
    best = std::max(best, f(std::min(x, hi)));
  }
  return best;
}

}  // namespace wiretap::test
