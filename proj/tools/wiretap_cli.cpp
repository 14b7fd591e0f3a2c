#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wiretap/ensemble_sim.hpp"
#include "wiretap/exponents.hpp"
#include "wiretap/prob.hpp"
#include "wiretap/spec_file.hpp"
#include "wiretap/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitCheckFailure = 2;
constexpr int kExitResourceCap = 3;
constexpr const char* kVersion = "1.0.0";

double to_display(double nats, bool bits) {
  return bits ? nats / std::log(2.0) : nats;
}

std::string fmt(double value) {
  std::ostringstream os;
  os << std::setprecision(12) << value;
  return os.str();
}

struct CommonOptions {
  std::string spec_path;
  bool bits = false;
};

int run_exponent(const CommonOptions& common, double r_prime, double r,
                 bool has_r) {
  wiretap::ChannelSpec spec = wiretap::load_channel_spec(common.spec_path);
  wiretap::Distribution p_x = spec.effective_input();
  wiretap::Channel v = spec.effective_main();
  wiretap::Channel w = spec.effective_wiretap();
  if (common.bits) r_prime *= std::log(2.0);
  if (common.bits && has_r) r *= std::log(2.0);
  if (!has_r && spec.rates) {
    r = spec.rates->r;
    has_r = true;
  }

  const char* unit = common.bits ? "bits" : "nats";
  std::cout << "I(X;Z) = "
            << fmt(to_display(wiretap::mutual_information(p_x, w),
                              common.bits))
            << " " << unit << "\n";
  std::cout << "I(X;Y) = "
            << fmt(to_display(wiretap::mutual_information(p_x, v),
                              common.bits))
            << " " << unit << "\n";
  wiretap::ExponentResult es = wiretap::secrecy_exponent(p_x, w, r_prime);
  std::cout << "E_s(R'=" << fmt(to_display(r_prime, common.bits))
            << ") = " << fmt(to_display(es.value, common.bits)) << " " << unit
            << "  (arg lambda = " << fmt(es.arg_lambda)
            << (es.boundary_hit ? ", boundary" : "") << ")\n";
  if (has_r) {
    wiretap::ExponentResult er = wiretap::gallager_er(p_x, v, r + r_prime);
    std::cout << "E_r(R+R'=" << fmt(to_display(r + r_prime, common.bits))
              << ") = " << fmt(to_display(er.value, common.bits)) << " "
              << unit << "  (arg rho = " << fmt(er.arg_lambda)
              << (er.boundary_hit ? ", boundary" : "") << ")\n";
  }
  return kExitOk;
}

int run_sweep(const CommonOptions& common, double r_min, double r_max,
              int steps, const std::string& out_path) {
  wiretap::ChannelSpec spec = wiretap::load_channel_spec(common.spec_path);
  wiretap::Distribution p_x = spec.effective_input();
  wiretap::Channel v = spec.effective_main();
  wiretap::Channel w = spec.effective_wiretap();
  double unit = common.bits ? std::log(2.0) : 1.0;
  r_min *= unit;
  r_max *= unit;

  wiretap::ExponentCurve curve =
      wiretap::sweep_secrecy_exponent(p_x, w, r_min, r_max, steps);

  std::ofstream out(out_path);
  if (!out) throw wiretap::SpecError("cannot write to " + out_path);
  out << "# wiretap sweep version=" << kVersion
      << " spec_hash=" << wiretap::spec_hash(spec) << "\n";
  out << "r_prime,e_s,arg_lambda";
  bool has_r = spec.rates.has_value();
  if (has_r) out << ",e_r";
  out << "\n";
  out << std::setprecision(12);
  for (const auto& [rate, es] : curve.points) {
    out << rate / unit << "," << es.value / unit << "," << es.arg_lambda;
    if (has_r) {
      wiretap::ExponentResult er =
          wiretap::gallager_er(p_x, v, spec.rates->r + rate);
      out << "," << er.value / unit;
    }
    out << "\n";
  }
  std::cout << "wrote " << curve.points.size() << " points to " << out_path
            << "\n";
  return kExitOk;
}

int run_verify(const CommonOptions& common, const std::string& level_name,
               double r_prime, bool has_r_prime) {
  wiretap::ChannelSpec spec = wiretap::load_channel_spec(common.spec_path);
  wiretap::Distribution p_x = spec.effective_input();
  wiretap::Channel w = spec.effective_wiretap();
  if (!has_r_prime) {
    r_prime = spec.rates ? spec.rates->r_prime : std::log(2.0);
  } else if (common.bits) {
    r_prime *= std::log(2.0);
  }
  wiretap::VerifyLevel level = level_name == "full"
                                   ? wiretap::VerifyLevel::kFull
                                   : wiretap::VerifyLevel::kFast;
  bool all_passed = true;
  for (const wiretap::CheckResult& check :
       wiretap::run_verification(p_x, w, r_prime, level)) {
    std::cout << (check.passed ? "PASS" : "FAIL") << "  " << check.name
              << "  gap=" << fmt(check.gap) << " tol=" << fmt(check.tolerance)
              << "\n";
    all_passed = all_passed && check.passed;
  }
  return all_passed ? kExitOk : kExitCheckFailure;
}

int run_simulate(const CommonOptions& common, std::vector<int> n_list, int m,
                 int m_prime, int m_prime_cap, std::uint64_t replicates,
                 std::uint64_t seed, double r_prime, bool has_r_prime,
                 const std::string& out_path) {
  wiretap::ChannelSpec spec = wiretap::load_channel_spec(common.spec_path);
  wiretap::Distribution p_x = spec.effective_input();
  wiretap::Channel w = spec.effective_wiretap();
  if (!has_r_prime) {
    if (!spec.rates) {
      throw wiretap::SpecError(
          "simulate: no --r-prime given and spec carries no rates");
    }
    r_prime = spec.rates->r_prime;
  } else if (common.bits) {
    r_prime *= std::log(2.0);
  }
  (void)m;  // leakage simulation is per message; M enters only the rate R

  wiretap::ExponentResult es = wiretap::secrecy_exponent(p_x, w, r_prime);

  std::ofstream out(out_path);
  if (!out) throw wiretap::SpecError("cannot write to " + out_path);
  out << "# wiretap simulate version=" << kVersion << " seed=" << seed
      << " generator=" << wiretap::kGeneratorId
      << " spec_hash=" << wiretap::spec_hash(spec)
      << " r_prime=" << fmt(r_prime) << " replicates=" << replicates << "\n";
  out << "n,m_prime,mean_divergence,std_error,empirical_exponent,"
         "e_s_reference\n";
  out << std::setprecision(12);

  double unit = common.bits ? std::log(2.0) : 1.0;
  if (m_prime > 0) {
    // Pinned M': one row per n at the fixed sub-codebook size.
    for (int n : n_list) {
      wiretap::SimResult sr = wiretap::ensemble_mean_divergence(
          p_x, w, n, m_prime, replicates,
          wiretap::counter_hash(seed, n, 0, 0, 2));
      double exponent = sr.estimate > 0.0 ? -std::log(sr.estimate) / n : 0.0;
      out << n << "," << m_prime << "," << sr.estimate / unit << ","
          << sr.std_error / unit << ","
          << (sr.estimate > 0.0 ? fmt(exponent / unit) : "inf") << ","
          << es.value / unit << "\n";
    }
  } else {
    for (const wiretap::EmpiricalExponentPoint& pt :
         wiretap::empirical_exponent(p_x, w, r_prime, n_list, replicates,
                                     seed, m_prime_cap)) {
      out << pt.n << "," << pt.words_per_message << ","
          << pt.mean_divergence / unit << "," << pt.std_error / unit << ","
          << (pt.defined ? fmt(pt.exponent / unit) : "inf") << ","
          << es.value / unit << "\n";
    }
  }
  std::cout << "wrote " << n_list.size() << " rows to " << out_path << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Secrecy and reliability exponents of the wire-tap channel"};
  app.require_subcommand(1);

  CommonOptions common;
  double r_prime = 0.0, r = 0.0, r_min = 0.0, r_max = 1.0;
  int steps = 21;
  std::string out_path, level = "fast";
  std::vector<int> n_list;
  int m = 1, m_prime = 0, m_prime_cap = 64;
  std::uint64_t replicates = 1000, seed = 0xC0FFEE;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--spec", common.spec_path, "channel spec JSON file")
        ->required();
    cmd->add_flag("--bits", common.bits,
                  "read/report rates and exponents in bits");
  };

  CLI::App* exponent = app.add_subcommand("exponent", "point exponents");
  add_common(exponent);
  exponent->add_option("--r-prime", r_prime, "sub-codebook rate R'")
      ->required();
  CLI::Option* r_opt = exponent->add_option("--r", r, "message rate R");

  CLI::App* sweep = app.add_subcommand("sweep", "sweep E_s over R'");
  add_common(sweep);
  sweep->add_option("--min", r_min, "lowest R'")->required();
  sweep->add_option("--max", r_max, "highest R'")->required();
  sweep->add_option("--steps", steps, "number of sample points");
  sweep->add_option("--out", out_path, "output CSV path")->required();

  CLI::App* verify = app.add_subcommand("verify", "run the oracle suite");
  add_common(verify);
  verify->add_option("--level", level, "fast or full")
      ->check(CLI::IsMember({"fast", "full"}));
  CLI::Option* verify_rp =
      verify->add_option("--r-prime", r_prime, "rate for rate-dependent checks");

  CLI::App* simulate = app.add_subcommand("simulate", "seeded ensemble runs");
  add_common(simulate);
  simulate->add_option("--n", n_list, "blocklengths")->required();
  simulate->add_option("--m", m, "number of messages M");
  simulate->add_option("--m-prime", m_prime,
                       "pin M' (otherwise ceil(exp(n R')) capped)");
  simulate->add_option("--m-prime-cap", m_prime_cap,
                       "cap for the derived M'");
  simulate->add_option("--replicates", replicates, "Monte Carlo replicates");
  simulate->add_option("--seed", seed, "master seed");
  CLI::Option* sim_rp =
      simulate->add_option("--r-prime", r_prime, "sub-codebook rate R'");
  simulate->add_option("--out", out_path, "output CSV path")->required();

  try {
    app.parse(argc, argv);
    if (exponent->parsed()) {
      return run_exponent(common, r_prime, r, !r_opt->empty());
    }
    if (sweep->parsed()) {
      return run_sweep(common, r_min, r_max, steps, out_path);
    }
    if (verify->parsed()) {
      return run_verify(common, level, r_prime, !verify_rp->empty());
    }
    if (simulate->parsed()) {
      return run_simulate(common, n_list, m, m_prime, m_prime_cap, replicates,
                          seed, r_prime, !sim_rp->empty(), out_path);
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitValidation;
  } catch (const wiretap::CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResourceCap;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitOk;
}
