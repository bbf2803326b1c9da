#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "wiretap/channels.hpp"
#include "wiretap/coding.hpp"
#include "wiretap/common.hpp"
#include "wiretap/metrics.hpp"
#include "wiretap/report.hpp"
#include "wiretap/specparse.hpp"
#include "wiretap/verify.hpp"
#include "wiretap/xtx.hpp"

// Command-line front end. Every run prints one envelope:
//   json   {"version", "command", "config", "result"}
//   csv    '# version' and '# config' comment lines, then header + rows
//   table  the same comment lines, then an aligned human-readable block
// The config echo always includes the seed and the effective size cap, so a
// printed envelope is enough to reproduce the run byte for byte.
//
// Exit codes: 0 success, 2 malformed input or unmet precondition, 3 size cap
// exceeded, 4 verification failure, 1 anything else.

namespace {

using nlohmann::json;
using namespace wiretap;

// Shortest round-trip decimal, '.' separator, locale-free.
std::string num(double x) { return json(x).dump(); }

std::string num2(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", x);
  return buf;
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

json envelope(const std::string& command, const json& config,
              const json& result) {
  return json{{"version", kLibraryVersion},
              {"command", command},
              {"config", config},
              {"result", result}};
}

void print_text_preamble(const json& config) {
  std::cout << "# wiretap " << kLibraryVersion << "\n# config:";
  for (auto it = config.begin(); it != config.end(); ++it) {
    std::cout << ' ' << it.key() << '='
              << (it->is_string() ? it->get<std::string>() : it->dump());
  }
  std::cout << '\n';
}

void print_kv_table(const json& config,
                    const std::vector<std::pair<std::string, std::string>>& rows) {
  print_text_preamble(config);
  std::size_t w = 0;
  for (const auto& [k, v] : rows) w = std::max(w, k.size());
  for (const auto& [k, v] : rows) {
    std::cout << k << std::string(w - k.size() + 2, ' ') << v << '\n';
  }
}

// Shared run settings; the cap is applied before any engine runs.
struct RunCtx {
  std::string out;           // "", meaning the command's default
  std::uint64_t cap = 0;     // 0 keeps the current library cap
  bool cap_from_flag = false;

  std::string format(const std::string& fallback) const {
    return out.empty() ? fallback : out;
  }

  void apply_cap() const {
    if (cap_from_flag) {
      set_enum_cap(cap);
      return;
    }
    if (const char* env = std::getenv("WIRETAP_SIZE_CAP")) {
      std::string s(env);
      std::uint64_t v = 0;
      auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc{} || p != s.data() + s.size() || v == 0) {
        throw ParseError("WIRETAP_SIZE_CAP: expected a positive integer, got '" +
                         s + "'");
      }
      set_enum_cap(v);
    }
  }
};

json base_config(const std::string& command, const RunCtx& ctx,
                 const std::string& fmt, std::uint64_t seed) {
  return json{{"command", command},
              {"out", fmt},
              {"cap", enum_cap()},
              {"seed", seed}};
}

// ---------------------------------------------------------------------------
// design

int cmd_design(const RunCtx& ctx, int m, int s, double p) {
  ctx.apply_cap();
  const std::string fmt = ctx.format("json");

  DesignSpec d = design_u(m, s, p);
  const double target = std::ldexp(1.0, -s);

  json config = base_config("design", ctx, fmt, 0);
  config["m"] = m;
  config["s"] = s;
  config["p"] = p;

  json result = d.to_json();
  result["target"] = target;
  result["meets_target"] = d.bound_ds <= target;

  if (fmt == "json") {
    std::cout << envelope("design", config, result).dump(2) << '\n';
  } else if (fmt == "csv") {
    print_text_preamble(config);
    std::cout << "m,s,p,alpha,u,rate,rate2,rate_limit,rate2_limit,bound_ds,"
                 "target,meets_target\n"
              << m << ',' << s << ',' << num(p) << ',' << num(d.alpha) << ','
              << d.u << ',' << num(d.rate) << ',' << num(d.rate2) << ','
              << num(d.rate_limit) << ',' << num(d.rate2_limit) << ','
              << num(d.bound_ds) << ',' << num(target) << ','
              << (d.bound_ds <= target ? "true" : "false") << '\n';
  } else {
    print_kv_table(config,
                   {{"u", std::to_string(d.u)},
                    {"alpha", num(d.alpha)},
                    {"rate", num(d.rate)},
                    {"rate2", num(d.rate2)},
                    {"rate_limit", num(d.rate_limit)},
                    {"rate2_limit", num(d.rate2_limit)},
                    {"bound_ds", num(d.bound_ds)},
                    {"target", num(target)},
                    {"meets_target", d.bound_ds <= target ? "true" : "false"}});
  }
  return 0;
}

// ---------------------------------------------------------------------------
// metric

std::string normalize_metric(std::string name) {
  if (name == "misr") return "mis-r";
  if (name == "rsr") return "rs-r";
  if (name == "ds" || name == "mis" || name == "mis-r" || name == "ss" ||
      name == "rs-r") {
    return name;
  }
  throw ParseError("unknown metric '" + name +
                   "' (ds, mis, mis-r, ss, rs-r)");
}

Channel adversary_channel(const std::string& spec, int cipher_bits) {
  if (spec == "constant") return Channel::constant(cipher_bits);
  return parse_channel(spec);
}

std::vector<std::pair<Word, Word>> parse_pairs(
    const std::vector<std::string>& raw) {
  std::vector<std::pair<Word, Word>> pairs;
  pairs.reserve(raw.size());
  for (const auto& s : raw) {
    auto colon = s.find(':');
    if (colon == std::string::npos) {
      throw ParseError("pair '" + s + "': expected the form A:B");
    }
    Word a = 0, b = 0;
    auto [pa, ea] = std::from_chars(s.data(), s.data() + colon, a);
    auto [pb, eb] =
        std::from_chars(s.data() + colon + 1, s.data() + s.size(), b);
    if (ea != std::errc{} || pa != s.data() + colon || eb != std::errc{} ||
        pb != s.data() + s.size()) {
      throw ParseError("pair '" + s + "': expected two decimal integers");
    }
    pairs.emplace_back(a, b);
  }
  return pairs;
}

std::vector<std::pair<Word, Word>> all_message_pairs(int m) {
  if (m > 6) {
    throw PreconditionError(
        "ds monte-carlo enumerates all message pairs only for message width "
        "<= 6; pass explicit --pairs for wider messages");
  }
  std::vector<std::pair<Word, Word>> pairs;
  const Word n = Word{1} << m;
  for (Word a = 0; a < n; ++a) {
    for (Word b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
  }
  return pairs;
}

void print_report_csv(const AdvReport& rep) {
  std::cout << "metric,value,bits,mode,seed,trials,half_width\n"
            << rep.metric << ',' << num(rep.value) << ','
            << (std::isinf(rep.bits()) ? "" : num(rep.bits())) << ','
            << to_string(rep.mode);
  if (rep.sampled) {
    std::cout << ',' << rep.seed << ',' << rep.trials << ','
              << num(rep.half_width) << '\n';
  } else {
    std::cout << ",,,\n";
  }
}

void print_report_table(const json& config, const AdvReport& rep) {
  std::vector<std::pair<std::string, std::string>> rows;
  rows.emplace_back("metric", rep.metric);
  rows.emplace_back("value", num(rep.value));
  rows.emplace_back("bits", std::isinf(rep.bits()) ? "inf" : num(rep.bits()));
  rows.emplace_back("mode", to_string(rep.mode));
  for (const auto& [k, v] : rep.params) rows.emplace_back(k, v);
  if (rep.sampled) {
    rows.emplace_back("seed", std::to_string(rep.seed));
    rows.emplace_back("trials", std::to_string(rep.trials));
    rows.emplace_back("half_width", num(rep.half_width));
  }
  print_kv_table(config, rows);
}

int cmd_metric(const RunCtx& ctx, const std::string& raw_name,
               const std::string& scheme_spec, const std::string& code_spec,
               const std::string& cha_spec, const std::string& mode,
               std::uint64_t trials, std::uint64_t seed, double tol,
               const std::vector<std::string>& raw_pairs) {
  ctx.apply_cap();
  const std::string fmt = ctx.format("json");
  const std::string name = normalize_metric(raw_name);
  const bool mc = mode == "mc";

  json config = base_config("metric", ctx, fmt, seed);
  config["metric"] = name;
  config["mode"] = mode;
  config["chA"] = cha_spec;
  if (mc) config["trials"] = trials;
  if (name == "mis") config["tol"] = tol;

  AdvReport rep;
  try {
    if (name == "rs-r") {
      if (code_spec.empty()) {
        throw ParseError("metric rs-r measures a code, pass --code");
      }
      if (!scheme_spec.empty()) {
        throw ParseError("metric rs-r takes --code, not --scheme");
      }
      config["code"] = code_spec;
      CodeFn code = parse_code(code_spec);
      Channel chA = adversary_channel(cha_spec, code.out_bits());
      rep = mc ? adv_rs_r_mc(code, chA, {trials, seed})
               : adv_rs_r_exact(code, chA);
    } else {
      if (scheme_spec.empty()) {
        throw ParseError("metric " + name + " measures a scheme, pass --scheme");
      }
      if (!code_spec.empty()) {
        throw ParseError("metric " + name + " takes --scheme, not --code");
      }
      config["scheme"] = scheme_spec;
      XtXScheme scheme = parse_scheme(scheme_spec);
      const EncryptionFn& e = scheme.encryption();
      Channel chA = adversary_channel(cha_spec, scheme.cipher_bits());
      if (name == "ds") {
        if (mc) {
          auto pairs = raw_pairs.empty() ? all_message_pairs(e.message_bits())
                                         : parse_pairs(raw_pairs);
          rep = adv_ds_mc(e, chA, {trials, seed}, pairs);
        } else {
          rep = adv_ds_exact(e, chA);
        }
      } else if (mc) {
        throw PreconditionError("metric " + name +
                                " has no sampling engine, use exact mode");
      } else if (name == "mis") {
        rep = adv_mis(e, chA, tol);
      } else if (name == "mis-r") {
        rep = adv_mis_r(e, chA);
      } else {
        rep = restricted_ss_exact(e, chA);
        auto [lo, hi] = adv_ss_bounds(e, chA);
        rep.params["sandwich_lower"] = num(lo.value);
        rep.params["sandwich_upper"] = num(hi.value);
      }
    }
  } catch (const SizeCapError&) {
    std::cerr << "hint: exact enumeration exceeded the size cap; retry with "
                 "--mode mc (ds, rs-r) or raise --cap\n";
    throw;
  }

  if (fmt == "json") {
    std::cout << envelope("metric", config, rep.to_json()).dump(2) << '\n';
  } else if (fmt == "csv") {
    print_text_preamble(config);
    print_report_csv(rep);
  } else {
    print_report_table(config, rep);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// rate-table

int cmd_rate_table(const RunCtx& ctx, std::vector<double> ps) {
  ctx.apply_cap();
  const std::string fmt = ctx.format("table");
  if (ps.empty()) ps = {0.5, 0.4, 0.3, 0.2, 0.1};

  json config = base_config("rate-table", ctx, fmt, 0);
  config["p"] = ps;

  auto rows = rate_table(ps);

  if (fmt == "json") {
    json result = json::array();
    for (const auto& r : rows) {
      result.push_back(json{{"p", r.p},
                            {"alpha", r.alpha},
                            {"rate_limit", r.rate_limit},
                            {"rate2_limit", r.rate2_limit},
                            {"rate", round2_half_up(r.rate_limit)},
                            {"rate2", round2_half_up(r.rate2_limit)}});
    }
    std::cout << envelope("rate-table", config, result).dump(2) << '\n';
  } else if (fmt == "csv") {
    print_text_preamble(config);
    std::cout << "p,alpha,rate_limit,rate2_limit,rate,rate2\n";
    for (const auto& r : rows) {
      std::cout << num(r.p) << ',' << num(r.alpha) << ',' << num(r.rate_limit)
                << ',' << num(r.rate2_limit) << ','
                << num2(round2_half_up(r.rate_limit)) << ','
                << num2(round2_half_up(r.rate2_limit)) << '\n';
    }
  } else {
    print_text_preamble(config);
    std::cout << "p     rate  rate2\n";
    for (const auto& r : rows) {
      std::cout << num2(r.p) << "  " << num2(round2_half_up(r.rate_limit))
                << "  " << num2(round2_half_up(r.rate2_limit)) << '\n';
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// simulate

int cmd_simulate(const RunCtx& ctx, const std::string& scheme_spec,
                 const std::string& chr_spec, const std::string& cha_spec,
                 std::uint64_t trials, std::uint64_t seed) {
  ctx.apply_cap();
  const std::string fmt = ctx.format("json");
  if (trials == 0) throw PreconditionError("simulate needs trials > 0");

  XtXScheme scheme = parse_scheme(scheme_spec);
  const EncryptionFn& e = scheme.encryption();
  Channel chR = parse_channel(chr_spec);
  Channel chA = adversary_channel(cha_spec, scheme.cipher_bits());

  if (chR.in_width() != scheme.cipher_bits()) {
    throw PreconditionError("receiver channel input width " +
                            std::to_string(chR.in_width()) +
                            " does not match ciphertext width " +
                            std::to_string(scheme.cipher_bits()));
  }
  const int decode_in = scheme.en1().decode_in_bits() +
                        scheme.en2().decode_in_bits();
  if (chR.out_width() != decode_in) {
    throw PreconditionError("receiver channel output width " +
                            std::to_string(chR.out_width()) +
                            " does not match decoder input width " +
                            std::to_string(decode_in));
  }
  if (chA.in_width() != scheme.cipher_bits()) {
    throw PreconditionError("adversary channel input width " +
                            std::to_string(chA.in_width()) +
                            " does not match ciphertext width " +
                            std::to_string(scheme.cipher_bits()));
  }
  if (!chA.exact()) {
    throw PreconditionError(
        "simulate needs an adversary channel with exact transition "
        "probabilities for the maximum-likelihood guesser");
  }

  json config = base_config("simulate", ctx, fmt, seed);
  config["scheme"] = scheme_spec;
  config["chR"] = chr_spec;
  config["chA"] = cha_spec;
  config["trials"] = trials;

  // Bayes-optimal guesser against the coin-averaged message laws; ties go to
  // the smaller message.
  Channel induced = induced_channel(e, chA);
  const Word msg_count = Word{1} << e.message_bits();
  std::map<Word, Word> guess_cache;
  auto guess = [&](Word obs) {
    auto it = guess_cache.find(obs);
    if (it != guess_cache.end()) return it->second;
    Word best = 0;
    double best_p = -1.0;
    for (Word m = 0; m < msg_count; ++m) {
      double p = induced.transition_prob(m, obs);
      if (p > best_p) {
        best_p = p;
        best = m;
      }
    }
    guess_cache.emplace(obs, best);
    return best;
  };

  RngStream draws(seed, 0);
  RngStream recv_noise(seed, 1);
  RngStream adv_noise(seed, 2);
  std::uint64_t decrypt_errors = 0;
  std::uint64_t recovered = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const Word coins = draws.bits(e.coin_bits());
    const Word msg = draws.bits(e.message_bits());
    const Word cipher = e.encrypt(coins, msg);
    if (xtx_decrypt(scheme, chR.sample(cipher, recv_noise)) != msg) {
      ++decrypt_errors;
    }
    if (guess(chA.sample(cipher, adv_noise)) == msg) ++recovered;
  }

  const double de_rate = double(decrypt_errors) / double(trials);
  const double rec_rate = double(recovered) / double(trials);
  const double half_width = 3.0 * std::sqrt(0.25 / double(trials));

  json result{{"trials", trials},
              {"seed", seed},
              {"decrypt_errors", decrypt_errors},
              {"decrypt_error_rate", de_rate},
              {"recovery_successes", recovered},
              {"recovery_rate", rec_rate},
              {"half_width", half_width}};

  if (fmt == "json") {
    std::cout << envelope("simulate", config, result).dump(2) << '\n';
  } else if (fmt == "csv") {
    print_text_preamble(config);
    std::cout << "trials,seed,decrypt_errors,decrypt_error_rate,"
                 "recovery_successes,recovery_rate,half_width\n"
              << trials << ',' << seed << ',' << decrypt_errors << ','
              << num(de_rate) << ',' << recovered << ',' << num(rec_rate)
              << ',' << num(half_width) << '\n';
  } else {
    print_kv_table(config,
                   {{"trials", std::to_string(trials)},
                    {"seed", std::to_string(seed)},
                    {"decrypt_errors", std::to_string(decrypt_errors)},
                    {"decrypt_error_rate", num(de_rate)},
                    {"recovery_successes", std::to_string(recovered)},
                    {"recovery_rate", num(rec_rate)},
                    {"half_width", num(half_width)}});
  }
  return 0;
}

// ---------------------------------------------------------------------------
// verify

int cmd_verify(const RunCtx& ctx, const std::string& suite) {
  ctx.apply_cap();
  const std::string fmt = ctx.format("json");

  json config = base_config("verify", ctx, fmt, 0);
  config["suite"] = suite;

  auto checks = verify_suite(suite);

  if (fmt == "json") {
    json result = json::array();
    for (const auto& c : checks) result.push_back(c.to_json());
    std::cout << envelope("verify", config, result).dump(2) << '\n';
  } else if (fmt == "csv") {
    print_text_preamble(config);
    std::cout << "status,relation,instance,lhs,rhs,tol\n";
    for (const auto& c : checks) {
      std::cout << to_string(c.status) << ',' << csv_cell(c.relation) << ','
                << csv_cell(c.instance) << ',' << num(c.lhs) << ','
                << num(c.rhs) << ',' << num(c.tol) << '\n';
    }
  } else {
    print_text_preamble(config);
    std::size_t pass = 0, fail = 0, declined = 0;
    for (const auto& c : checks) {
      if (c.status == CheckStatus::kPass) ++pass;
      else if (c.status == CheckStatus::kFail) ++fail;
      else ++declined;
      std::printf("%-22s %-34s lhs=%-14s rhs=%-14s %s\n",
                  to_string(c.status).c_str(), c.relation.c_str(),
                  num(c.lhs).c_str(), num(c.rhs).c_str(), c.instance.c_str());
    }
    std::cout << checks.size() << " checks: " << pass << " pass, " << fail
              << " fail, " << declined << " precondition-not-met\n";
  }
  return suite_passed(checks) ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wiretap channel security toolkit"};
  app.set_version_flag("--version", std::string(kLibraryVersion));
  app.set_config("--config");
  app.require_subcommand(1);

  RunCtx ctx;
  app.add_option("--out", ctx.out, "output format")
      ->check(CLI::IsMember({"json", "csv", "table"}));
  app.add_option_function<std::uint64_t>(
         "--cap",
         [&ctx](std::uint64_t v) {
           ctx.cap = v;
           ctx.cap_from_flag = true;
         },
         "exact-enumeration state cap")
      ->check(CLI::PositiveNumber);

  int m = 0, s = 0;
  double p = 0.0;
  auto* design = app.add_subcommand(
      "design", "size a scheme for a target security level");
  design->fallthrough();
  design->add_option("--m", m, "message bits")->required();
  design->add_option("--s", s, "target security bits")->required();
  design->add_option("--p", p, "adversary crossover probability")->required();

  std::string metric_name, scheme_spec, code_spec, cha_spec, mode = "exact";
  std::uint64_t trials = 100000, seed = 0;
  double tol = 1e-9;
  std::vector<std::string> raw_pairs;
  auto* metric =
      app.add_subcommand("metric", "evaluate a security metric exactly or by "
                                   "sampling");
  metric->fallthrough();
  metric->add_option("name", metric_name, "ds | mis | mis-r | ss | rs-r")
      ->required();
  metric->add_option("--scheme", scheme_spec, "scheme spec, e.g. "
                     "xtx(hash=gf(4,1),en1=id(4),en2=id(5))");
  metric->add_option("--code", code_spec, "code spec for rs-r, e.g. id(6)");
  metric->add_option("--chA", cha_spec,
                     "adversary channel spec; 'constant' erases everything")
      ->required();
  auto* mode_opt = metric->add_option("--mode", mode, "exact | mc")
                       ->check(CLI::IsMember({"exact", "mc"}));
  auto* exact_flag =
      metric->add_flag("--exact", "shorthand for --mode exact");
  auto* mc_flag = metric->add_flag("--mc", "shorthand for --mode mc");
  metric->add_option("--trials", trials, "samples per estimate");
  metric->add_option("--seed", seed, "rng seed");
  metric->add_option("--tol", tol, "capacity-iteration duality-gap tolerance");
  metric->add_option("--pairs", raw_pairs,
                     "candidate message pairs A:B for ds sampling");

  std::vector<double> ps;
  auto* rates = app.add_subcommand(
      "rate-table", "limiting rates for a list of adversary crossovers");
  rates->fallthrough();
  rates->add_option("--p", ps, "crossover probabilities in (0, 1/2]");

  std::string sim_scheme, chr_spec, sim_cha;
  std::uint64_t sim_trials = 100000, sim_seed = 0;
  auto* simulate = app.add_subcommand(
      "simulate", "trial runs of encrypt, both channels, decrypt, and a "
                  "maximum-likelihood adversary");
  simulate->fallthrough();
  simulate->add_option("--scheme", sim_scheme, "scheme spec")->required();
  simulate->add_option("--chR", chr_spec, "receiver channel spec")->required();
  simulate->add_option("--chA", sim_cha, "adversary channel spec")->required();
  simulate->add_option("--trials", sim_trials, "number of trials");
  simulate->add_option("--seed", sim_seed, "rng seed");

  std::string suite;
  auto* verify = app.add_subcommand(
      "verify", "run a numeric certificate suite with fixed seeds");
  verify->fallthrough();
  verify->add_option("suite", suite, "probcore | relations | xtx | hash | all")
      ->required();

  int rc = 0;
  design->callback([&] { rc = cmd_design(ctx, m, s, p); });
  metric->callback([&] {
    if (*exact_flag && *mc_flag) {
      throw ParseError("--exact and --mc conflict");
    }
    if (*exact_flag) {
      if (*mode_opt && mode != "exact") {
        throw ParseError("--exact conflicts with --mode " + mode);
      }
      mode = "exact";
    }
    if (*mc_flag) {
      if (*mode_opt && mode != "mc") {
        throw ParseError("--mc conflicts with --mode " + mode);
      }
      mode = "mc";
    }
    rc = cmd_metric(ctx, metric_name, scheme_spec, code_spec, cha_spec, mode,
                    trials, seed, tol, raw_pairs);
  });
  rates->callback([&] { rc = cmd_rate_table(ctx, ps); });
  simulate->callback(
      [&] { rc = cmd_simulate(ctx, sim_scheme, chr_spec, sim_cha, sim_trials,
                              sim_seed); });
  verify->callback([&] { rc = cmd_verify(ctx, suite); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ExactModeUnavailable& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const SizeCapError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return rc;
}
