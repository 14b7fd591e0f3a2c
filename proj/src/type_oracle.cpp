#include "wiretap/type_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "wiretap/exponents.hpp"

namespace wiretap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double log_binomial_count(int n, int k_parts) {
  // ln C(n + k - 1, k - 1)
  return std::lgamma(n + k_parts) - std::lgamma(n + 1.0) -
         std::lgamma(static_cast<double>(k_parts));
}

/// All compositions of `total` into `parts` parts, lexicographic.
void enumerate_compositions(int total, int parts,
                            std::vector<std::vector<int>>& out) {
  std::vector<int> current(parts, 0);
  auto rec = [&](auto&& self, int pos, int remaining) -> void {
    if (pos == parts - 1) {
      current[pos] = remaining;
      out.push_back(current);
      return;
    }
    for (int c = 0; c <= remaining; ++c) {
      current[pos] = c;
      self(self, pos + 1, remaining - c);
    }
  };
  rec(rec, 0, total);
}

double log_sum_exp_acc(double acc, double term) {
  if (term == -kInf) return acc;
  if (acc == -kInf) return term;
  double m = std::max(acc, term);
  return m + std::log(std::exp(acc - m) + std::exp(term - m));
}

}  // namespace

Distribution NType::to_distribution() const {
  std::vector<double> probs(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    probs[i] = static_cast<double>(counts[i]) / n;
  }
  return Distribution(std::move(probs));
}

Channel ConditionalType::to_channel(const NType& z_type) const {
  const int nz = static_cast<int>(counts.size());
  const int nx = static_cast<int>(counts.front().size());
  std::vector<double> rows(static_cast<std::size_t>(nz) * nx, 0.0);
  for (int z = 0; z < nz; ++z) {
    int total = z_type.counts[z];
    if (total == 0) {
      // Empty rows carry no shell mass; fill uniformly to stay stochastic.
      for (int x = 0; x < nx; ++x) rows[z * nx + x] = 1.0 / nx;
      continue;
    }
    for (int x = 0; x < nx; ++x) {
      rows[z * nx + x] = static_cast<double>(counts[z][x]) / total;
    }
  }
  return Channel(nz, nx, std::move(rows));
}

double ALevelSet::total_prob() const {
  double lp = has_neg_inf ? neg_inf_log_prob : -kInf;
  for (const ALevel& level : levels) lp = log_sum_exp_acc(lp, level.log_prob);
  return lp == -kInf ? 0.0 : std::exp(lp);
}

std::vector<NType> enumerate_n_types(int n, int alphabet_size,
                                     std::uint64_t cap) {
  if (n <= 0 || alphabet_size <= 0) {
    throw std::invalid_argument("enumerate_n_types: non-positive argument");
  }
  if (log_binomial_count(n, alphabet_size) > std::log(double(cap)) + 1e-9) {
    throw CapExceeded("enumerate_n_types: type count exceeds cap");
  }
  std::vector<std::vector<int>> comps;
  enumerate_compositions(n, alphabet_size, comps);
  std::vector<NType> types;
  types.reserve(comps.size());
  for (auto& c : comps) types.push_back(NType{n, std::move(c)});
  return types;
}

std::vector<ConditionalType> enumerate_conditional_types(const NType& z_type,
                                                         int x_size,
                                                         std::uint64_t cap) {
  double log_total = 0.0;
  for (int c : z_type.counts) {
    if (c > 0) log_total += log_binomial_count(c, x_size);
  }
  if (log_total > std::log(double(cap)) + 1e-9) {
    throw CapExceeded("enumerate_conditional_types: count exceeds cap");
  }

  const int nz = static_cast<int>(z_type.counts.size());
  std::vector<std::vector<std::vector<int>>> per_z(nz);
  for (int z = 0; z < nz; ++z) {
    if (z_type.counts[z] == 0) {
      per_z[z] = {std::vector<int>(x_size, 0)};
    } else {
      enumerate_compositions(z_type.counts[z], x_size, per_z[z]);
    }
  }

  std::vector<ConditionalType> out;
  ConditionalType current;
  current.counts.resize(nz);
  auto rec = [&](auto&& self, int z) -> void {
    if (z == nz) {
      out.push_back(current);
      return;
    }
    for (const auto& row : per_z[z]) {
      current.counts[z] = row;
      self(self, z + 1);
    }
  };
  rec(rec, 0);
  return out;
}

double shell_log_prob(const Distribution& p_x, const NType& z_type,
                      const ConditionalType& q) {
  if (q.counts.size() != z_type.counts.size()) {
    throw std::invalid_argument("shell_log_prob: z-alphabet mismatch");
  }
  double lp = 0.0;
  for (std::size_t z = 0; z < q.counts.size(); ++z) {
    int row_sum = std::accumulate(q.counts[z].begin(), q.counts[z].end(), 0);
    if (row_sum != z_type.counts[z]) {
      throw std::invalid_argument(
          "shell_log_prob: conditional type inconsistent with z-type");
    }
    lp += std::lgamma(z_type.counts[z] + 1.0);
    for (std::size_t x = 0; x < q.counts[z].size(); ++x) {
      int c = q.counts[z][x];
      if (c == 0) continue;
      lp -= std::lgamma(c + 1.0);
      double lpx = p_x.log_prob(static_cast<int>(x));
      if (lpx == -kInf) return -kInf;
      lp += c * lpx;
    }
  }
  return lp;
}

ALevelSet a_level_set(const JointXZ& joint, const NType& z_type,
                      std::uint64_t cap, double merge_tol) {
  const Channel& post = joint.posterior();
  const Distribution& p_x = joint.marginal_x();
  const int nx = joint.x_size();
  if (static_cast<int>(z_type.counts.size()) != joint.z_size()) {
    throw std::invalid_argument("a_level_set: z-alphabet mismatch");
  }

  ALevelSet set;
  set.z_type = z_type;
  set.neg_inf_log_prob = -kInf;

  for (ConditionalType& q :
       enumerate_conditional_types(z_type, nx, cap)) {
    // a = (1/n) sum_{z,x} counts[z][x] ln( P_{X|Z}(x|z) / P_X(x) )
    double a = 0.0;
    bool minus_inf = false;
    for (int z = 0; z < joint.z_size() && !minus_inf; ++z) {
      for (int x = 0; x < nx; ++x) {
        int c = q.counts[z][x];
        if (c == 0) continue;
        double pxz = post(x, z);
        if (pxz == 0.0) {
          minus_inf = true;
          break;
        }
        a += c * std::log(pxz / p_x[x]);
      }
    }
    a /= z_type.n;

    double lp = shell_log_prob(p_x, z_type, q);
    if (minus_inf) {
      set.has_neg_inf = true;
      set.neg_inf_log_prob = log_sum_exp_acc(set.neg_inf_log_prob, lp);
      continue;
    }
    auto it = std::find_if(set.levels.begin(), set.levels.end(),
                           [&](const ALevel& lv) {
                             return std::abs(lv.a - a) <= merge_tol;
                           });
    if (it == set.levels.end()) {
      set.levels.push_back(ALevel{a, {std::move(q)}, lp});
    } else {
      it->members.push_back(std::move(q));
      it->log_prob = log_sum_exp_acc(it->log_prob, lp);
    }
  }
  std::sort(set.levels.begin(), set.levels.end(),
            [](const ALevel& l, const ALevel& r) { return l.a < r.a; });
  return set;
}

BruteForceEb eb_bruteforce(const JointXZ& joint, const Distribution& p,
                           double a, int grid_resolution) {
  const Channel& post = joint.posterior();
  const Distribution& p_x = joint.marginal_x();
  const int nx = joint.x_size();
  const int nz = joint.z_size();
  if (nx * nz > 9) {
    throw CapExceeded("eb_bruteforce: alphabet product exceeds 9");
  }

  // Row candidates per z with their linear a-contribution and the
  // D(row || P_X) contribution, both weighted by P(z).
  struct RowCandidate {
    double a_part;
    double d_part;
  };
  std::vector<std::vector<RowCandidate>> candidates(nz);
  std::vector<std::vector<int>> comps;
  enumerate_compositions(grid_resolution, nx, comps);

  double slack = 0.0;
  for (int z = 0; z < nz; ++z) {
    if (p[z] == 0.0) {
      candidates[z] = {{0.0, 0.0}};
      continue;
    }
    double cmin = kInf, cmax = -kInf;
    for (int x = 0; x < nx; ++x) {
      if (post(x, z) == 0.0) continue;
      double c = std::log(post(x, z) / p_x[x]);
      cmin = std::min(cmin, c);
      cmax = std::max(cmax, c);
    }
    slack += p[z] * (cmax - cmin) / grid_resolution;

    for (const auto& comp : comps) {
      double a_part = 0.0, d_part = 0.0;
      bool feasible = true;
      for (int x = 0; x < nx && feasible; ++x) {
        if (comp[x] == 0) continue;
        double qx = static_cast<double>(comp[x]) / grid_resolution;
        if (post(x, z) == 0.0) {
          feasible = false;  // a_value would be -inf
          break;
        }
        a_part += qx * std::log(post(x, z) / p_x[x]);
        d_part += qx * std::log(qx / p_x[x]);
      }
      if (!feasible) continue;
      candidates[z].push_back({p[z] * a_part, p[z] * d_part});
    }
  }
  slack = std::max(slack, 1e-9);

  double best = kInf;
  std::vector<const RowCandidate*> chosen(nz);
  auto rec = [&](auto&& self, int z, double a_acc, double d_acc) -> void {
    if (d_acc >= best) return;
    if (z == nz) {
      if (std::abs(a_acc - a) <= slack) best = std::min(best, d_acc);
      return;
    }
    for (const RowCandidate& rc : candidates[z]) {
      self(self, z + 1, a_acc + rc.a_part, d_acc + rc.d_part);
    }
  };
  rec(rec, 0, 0.0, 0.0);

  // Analytic minimizer Q(x|z) ~ P_{X|Z}(x|z) exp(rho iota(x,z)) at the
  // closed-form arg-rho, as an extra candidate.
  ExponentResult closed = eb_closed_form(joint, p, a);
  if (std::isfinite(closed.value)) {
    double rho = closed.arg_lambda;
    double a_acc = 0.0, d_acc = 0.0;
    for (int z = 0; z < nz; ++z) {
      if (p[z] == 0.0) continue;
      std::vector<double> row(nx, 0.0);
      double total = 0.0;
      for (int x = 0; x < nx; ++x) {
        if (post(x, z) == 0.0) continue;
        double iota = std::log(post(x, z) / p_x[x]);
        row[x] = post(x, z) * std::exp(rho * iota);
        total += row[x];
      }
      for (int x = 0; x < nx; ++x) {
        if (row[x] == 0.0) continue;
        double qx = row[x] / total;
        a_acc += p[z] * qx * std::log(post(x, z) / p_x[x]);
        d_acc += p[z] * qx * std::log(qx / p_x[x]);
      }
    }
    if (std::abs(a_acc - a) <= slack) best = std::min(best, d_acc);
  }

  if (!std::isfinite(best)) {
    throw std::domain_error("eb_bruteforce: no feasible Q at this level");
  }

  // The feasibility band in `a` maps to a value band scaled by the local
  // slope of the conjugate, d E_b / d a = 1 + rho.  Report the slack in
  // value units so the oracle can only confirm, never falsely refute.
  double max_slope = 1.0 + kDefaultRhoMax;
  if (std::isfinite(closed.value) && !closed.boundary_hit) {
    double rho_edge = std::abs(closed.arg_lambda);
    for (double edge : {a - slack, a + slack}) {
      ExponentResult r = eb_closed_form(joint, p, edge);
      if (!std::isfinite(r.value)) continue;
      rho_edge = std::max(rho_edge, std::abs(r.arg_lambda));
    }
    max_slope = 1.0 + rho_edge;
  }
  return {best, slack * max_slope};
}

double exact_un_log_moment(const JointXZ& joint, int n, int m_prime,
                           const NType& z_type, std::uint64_t cap) {
  ALevelSet set = a_level_set(joint, z_type);
  const int num_levels = static_cast<int>(set.levels.size());
  const int buckets = num_levels + (set.has_neg_inf ? 1 : 0);

  if (log_binomial_count(m_prime, buckets) > std::log(double(cap)) + 1e-9) {
    throw CapExceeded("exact_un_log_moment: outcome count exceeds cap");
  }

  std::vector<double> log_p(buckets), gain(buckets, 0.0);
  for (int i = 0; i < num_levels; ++i) {
    log_p[i] = set.levels[i].log_prob;
    gain[i] = std::exp(n * set.levels[i].a);
  }
  if (set.has_neg_inf) log_p[num_levels] = set.neg_inf_log_prob;

  std::vector<std::vector<int>> outcomes;
  enumerate_compositions(m_prime, buckets, outcomes);

  double moment = 0.0;
  for (const auto& counts : outcomes) {
    double lp = std::lgamma(m_prime + 1.0);
    double u = 0.0;
    bool possible = true;
    for (int i = 0; i < buckets; ++i) {
      if (counts[i] == 0) continue;
      if (log_p[i] == -kInf) {
        possible = false;
        break;
      }
      lp += counts[i] * log_p[i] - std::lgamma(counts[i] + 1.0);
      u += counts[i] * gain[i];
    }
    if (!possible) continue;
    u /= m_prime;
    if (u <= 0.0) continue;  // 0 ln 0 = 0
    moment += std::exp(lp) * u * std::log(u);
  }
  return moment;
}

double type_class_log_prob(const Distribution& p_z, const NType& z_type) {
  double lp = std::lgamma(z_type.n + 1.0);
  for (std::size_t z = 0; z < z_type.counts.size(); ++z) {
    int c = z_type.counts[z];
    if (c == 0) continue;
    lp -= std::lgamma(c + 1.0);
    double lpz = p_z.log_prob(static_cast<int>(z));
    if (lpz == -kInf) return -kInf;
    lp += c * lpz;
  }
  return lp;
}

}  // namespace wiretap
