#include "wiretap/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <unordered_map>

namespace wiretap {

std::string to_string(ReportMode mode) {
  switch (mode) {
    case ReportMode::kExact:
      return "exact";
    case ReportMode::kMonteCarlo:
      return "monte-carlo";
    case ReportMode::kAnalyticBound:
      return "analytic-bound";
  }
  throw Error("unknown report mode");
}

double AdvReport::bits() const {
  if (value < 0.0) throw Error("advantage below zero");
  if (value == 0.0) return std::numeric_limits<double>::infinity();
  return -std::log2(value);
}

nlohmann::json AdvReport::to_json() const {
  nlohmann::json j;
  j["metric"] = metric;
  j["value"] = value;
  const double b = bits();
  j["bits"] = std::isinf(b) ? nlohmann::json() : nlohmann::json(b);
  j["mode"] = to_string(mode);
  j["params"] = params;
  if (sampled) {
    j["seed"] = seed;
    j["trials"] = trials;
    j["half_width"] = half_width;
  }
  if (!witness.is_null()) j["witness"] = witness;
  return j;
}

namespace {

std::map<std::string, std::string> scheme_params(const EncryptionFn& e,
                                                 const Channel& chA) {
  return {{"scheme", e.describe()}, {"chA", chA.describe()}};
}

// All 2^m coin-averaged observation laws, row-major.
std::vector<double> observation_laws(const EncryptionFn& e,
                                     const Channel& chA) {
  if (chA.in_width() != e.cipher_bits()) {
    throw PreconditionError("adversary channel input width mismatch");
  }
  const std::size_t msgs = std::size_t{1} << e.message_bits();
  const std::size_t coins = std::size_t{1} << e.coin_bits();
  const std::size_t outs = chA.out_size();
  check_enum_cap(coins, "coin enumeration");
  check_enum_cap(msgs * outs, "observation law table");
  std::vector<double> rows(msgs * outs, 0.0);
  const double w = std::ldexp(1.0, -e.coin_bits());
  for (Word m = 0; m < msgs; ++m) {
    double* row = rows.data() + m * outs;
    for (Word r = 0; r < coins; ++r) {
      chA.accumulate_row(e.encrypt(r, m), w, row);
    }
  }
  return rows;
}

double l1_half(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::abs(a[i] - b[i]);
  return 0.5 * s;
}

// Guard against floating-point dust outside the provable range.
double snap_range(double v, double lo, double hi, const char* what) {
  if (v < lo - 1e-9 || v > hi + 1e-9) {
    throw Error(std::string(what) + " outside its provable range");
  }
  return std::clamp(v, lo, hi);
}

}  // namespace

Channel induced_channel(const EncryptionFn& e, const Channel& chA) {
  const std::vector<double> rows = observation_laws(e, chA);
  return Channel::matrix(e.message_bits(), chA.out_width(), rows,
                         "induced(" + e.describe() + ";" + chA.describe() +
                             ")");
}

AdvReport adv_ds_exact(const EncryptionFn& e, const Channel& chA) {
  const std::vector<double> rows = observation_laws(e, chA);
  const std::size_t msgs = std::size_t{1} << e.message_bits();
  const std::size_t outs = chA.out_size();
  double best = 0.0;
  Word best0 = 0, best1 = (msgs > 1) ? 1 : 0;
  for (Word m0 = 0; m0 + 1 < msgs; ++m0) {
    for (Word m1 = m0 + 1; m1 < msgs; ++m1) {
      const double sd =
          l1_half(rows.data() + m0 * outs, rows.data() + m1 * outs, outs);
      if (sd > best) {
        best = sd;
        best0 = m0;
        best1 = m1;
      }
    }
  }
  AdvReport rep;
  rep.metric = "ds";
  rep.mode = ReportMode::kExact;
  rep.value = snap_range(best, 0.0, 1.0, "ds");
  rep.params = scheme_params(e, chA);
  rep.witness = nlohmann::json{{"m0", best0}, {"m1", best1}};
  return rep;
}

AdvReport adv_ds_mc(const EncryptionFn& e, const Channel& chA, McParams mc,
                    const std::vector<std::pair<Word, Word>>& pairs) {
  if (chA.in_width() != e.cipher_bits()) {
    throw PreconditionError("adversary channel input width mismatch");
  }
  if (pairs.empty()) {
    throw PreconditionError(
        "ds monte-carlo cannot maximize by sampling, pass candidate message "
        "pairs");
  }
  if (mc.trials == 0) throw PreconditionError("trials must be positive");
  double best = 0.0;
  Word best0 = 0, best1 = 0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    RngStream rng(mc.seed, i);
    std::unordered_map<Word, double> law0, law1;
    const double w = 1.0 / double(mc.trials);
    for (std::uint64_t t = 0; t < mc.trials; ++t) {
      const Word x = e.encrypt(rng.bits(e.coin_bits()), pairs[i].first);
      law0[chA.sample(x, rng)] += w;
    }
    for (std::uint64_t t = 0; t < mc.trials; ++t) {
      const Word x = e.encrypt(rng.bits(e.coin_bits()), pairs[i].second);
      law1[chA.sample(x, rng)] += w;
    }
    double l1 = 0.0;
    for (const auto& [z, p0] : law0) {
      const auto it = law1.find(z);
      l1 += std::abs(p0 - (it == law1.end() ? 0.0 : it->second));
    }
    for (const auto& [z, p1] : law1) {
      if (!law0.count(z)) l1 += p1;
    }
    const double sd = 0.5 * l1;
    if (sd >= best) {
      best = sd;
      best0 = pairs[i].first;
      best1 = pairs[i].second;
    }
  }
  AdvReport rep;
  rep.metric = "ds";
  rep.mode = ReportMode::kMonteCarlo;
  rep.value = best;
  rep.params = scheme_params(e, chA);
  rep.params["estimate"] = "lower-bound";
  rep.sampled = true;
  rep.seed = mc.seed;
  rep.trials = mc.trials;
  rep.half_width = 3.0 * std::sqrt(0.25 / double(mc.trials));
  rep.witness = nlohmann::json{{"m0", best0}, {"m1", best1}};
  return rep;
}

AdvReport adv_mis_r(const EncryptionFn& e, const Channel& chA) {
  const JointDist joint = joint_from_channel(
      Dist::uniform_bits(e.message_bits()), induced_channel(e, chA));
  AdvReport rep;
  rep.metric = "mis-r";
  rep.mode = ReportMode::kExact;
  rep.value = snap_range(mutual_information(joint), 0.0,
                         double(e.message_bits()), "mis-r");
  rep.params = scheme_params(e, chA);
  return rep;
}

AdvReport adv_mis(const EncryptionFn& e, const Channel& chA, double tol,
                  std::uint64_t max_iterations) {
  if (!(tol > 0.0)) throw PreconditionError("mis: tolerance must be positive");
  const std::vector<double> rows = observation_laws(e, chA);
  const std::size_t msgs = std::size_t{1} << e.message_bits();
  const std::size_t outs = chA.out_size();

  // Alternating maximization over the input law. Per round, with
  // q = p W and D(x) = KL(W_x; q), I(p) = sum_x p(x) D(x) lower-bounds the
  // maximum and max_x D(x) upper-bounds it; the update is
  // p'(x) ~ p(x) 2^D(x).
  std::vector<double> p(msgs, 1.0 / double(msgs));
  std::vector<double> q(outs), d(msgs);
  double lower = 0.0, gap = std::numeric_limits<double>::infinity();
  std::uint64_t it = 0;
  for (; it < max_iterations; ++it) {
    std::fill(q.begin(), q.end(), 0.0);
    for (std::size_t x = 0; x < msgs; ++x) {
      if (p[x] == 0.0) continue;
      const double* row = rows.data() + x * outs;
      for (std::size_t y = 0; y < outs; ++y) q[y] += p[x] * row[y];
    }
    double upper = 0.0;
    lower = 0.0;
    for (std::size_t x = 0; x < msgs; ++x) {
      const double* row = rows.data() + x * outs;
      double kl = 0.0;
      for (std::size_t y = 0; y < outs; ++y) {
        if (row[y] > 0.0) kl += row[y] * std::log2(row[y] / q[y]);
      }
      d[x] = kl;
      lower += p[x] * kl;
      upper = std::max(upper, kl);
    }
    gap = upper - lower;
    if (gap <= tol) break;
    double norm = 0.0;
    for (std::size_t x = 0; x < msgs; ++x) {
      p[x] *= std::exp2(d[x] - upper);  // shift keeps the scale bounded
      norm += p[x];
    }
    for (double& v : p) v /= norm;
  }
  if (gap > tol) {
    throw ConvergenceError("mis maximization still has duality gap " +
                           std::to_string(gap) + " after " +
                           std::to_string(max_iterations) + " rounds");
  }

  AdvReport rep;
  rep.metric = "mis";
  rep.mode = ReportMode::kExact;
  rep.value =
      snap_range(lower, 0.0, double(e.message_bits()), "mis");
  rep.params = scheme_params(e, chA);
  char tol_buf[32];
  std::snprintf(tol_buf, sizeof(tol_buf), "%g", tol);
  rep.params["tol"] = tol_buf;
  rep.witness = nlohmann::json{{"input_dist", p},
                               {"duality_gap", gap},
                               {"iterations", it + 1}};
  return rep;
}

std::pair<AdvReport, AdvReport> adv_ss_bounds(const EncryptionFn& e,
                                              const Channel& chA) {
  const AdvReport ds = adv_ds_exact(e, chA);
  AdvReport lower = ds, upper = ds;
  lower.metric = "ss-lower";
  lower.mode = ReportMode::kAnalyticBound;
  lower.value = 0.5 * ds.value;
  lower.params["from"] = "ds";
  upper.metric = "ss-upper";
  upper.mode = ReportMode::kAnalyticBound;
  upper.params["from"] = "ds";
  if ((std::size_t{1} << e.message_bits()) <= 16) {
    const double restricted = restricted_ss_exact(e, chA).value;
    if (restricted < lower.value - 1e-9 || restricted > upper.value + 1e-9) {
      throw Error("restricted semantic-security value escaped the sandwich");
    }
  }
  return {lower, upper};
}

AdvReport restricted_ss_exact(const EncryptionFn& e, const Channel& chA) {
  const std::vector<double> rows = observation_laws(e, chA);
  const std::size_t msgs = std::size_t{1} << e.message_bits();
  const std::size_t outs = chA.out_size();
  double best = 0.0;
  Word best0 = 0, best1 = (msgs > 1) ? 1 : 0;
  for (Word m0 = 0; m0 + 1 < msgs; ++m0) {
    for (Word m1 = m0 + 1; m1 < msgs; ++m1) {
      // Bayes guesser for a fair coin over {m0, m1} minus the blind guess.
      const double* r0 = rows.data() + m0 * outs;
      const double* r1 = rows.data() + m1 * outs;
      double win = 0.0;
      for (std::size_t y = 0; y < outs; ++y) {
        win += std::max(0.5 * r0[y], 0.5 * r1[y]);
      }
      const double adv = win - 0.5;
      if (adv > best) {
        best = adv;
        best0 = m0;
        best1 = m1;
      }
    }
  }
  AdvReport rep;
  rep.metric = "ss-restricted";
  rep.mode = ReportMode::kExact;
  rep.value = snap_range(best, 0.0, 0.5, "restricted ss");
  rep.params = scheme_params(e, chA);
  rep.params["message_law"] = "two-point uniform";
  rep.params["transform"] = "identity";
  rep.witness = nlohmann::json{{"m0", best0}, {"m1", best1}};
  return rep;
}

AdvReport adv_rs_r_exact(const CodeFn& code, const Channel& chA) {
  if (chA.in_width() != code.out_bits()) {
    throw PreconditionError("adversary channel input width mismatch");
  }
  const std::size_t inputs = std::size_t{1} << code.in_bits();
  const std::size_t outs = chA.out_size();
  check_enum_cap(inputs, "recovery inputs");
  check_enum_cap(outs, "recovery outputs");
  std::vector<double> best(outs, 0.0);
  std::vector<double> row(outs);
  for (Word x = 0; x < inputs; ++x) {
    std::fill(row.begin(), row.end(), 0.0);
    chA.accumulate_row(code.encode(x), 1.0, row.data());
    for (std::size_t z = 0; z < outs; ++z) {
      best[z] = std::max(best[z], row[z]);
    }
  }
  double total = 0.0;
  for (double v : best) total += v;
  AdvReport rep;
  rep.metric = "rs-r";
  rep.mode = ReportMode::kExact;
  rep.value = snap_range(std::ldexp(total, -code.in_bits()),
                         std::ldexp(1.0, -code.in_bits()), 1.0, "rs-r");
  rep.params = {{"code", code.describe()}, {"chA", chA.describe()}};
  return rep;
}

AdvReport adv_rs_r_mc(const CodeFn& code, const Channel& chA, McParams mc) {
  if (chA.in_width() != code.out_bits()) {
    throw PreconditionError("adversary channel input width mismatch");
  }
  if (mc.trials == 0) throw PreconditionError("trials must be positive");
  const std::size_t inputs = std::size_t{1} << code.in_bits();
  check_enum_cap(inputs, "recovery inputs");
  std::vector<Word> codewords(inputs);
  for (Word x = 0; x < inputs; ++x) codewords[x] = code.encode(x);
  RngStream rng(mc.seed, 0);
  std::uint64_t wins = 0;
  for (std::uint64_t t = 0; t < mc.trials; ++t) {
    const Word x = rng.bits(code.in_bits());
    const Word z = chA.sample(codewords[x], rng);
    Word guess = 0;
    double best = -1.0;
    for (Word c = 0; c < inputs; ++c) {
      const double w = chA.transition_prob(codewords[c], z);
      if (w > best) {
        best = w;
        guess = c;
      }
    }
    if (guess == x) ++wins;
  }
  AdvReport rep;
  rep.metric = "rs-r";
  rep.mode = ReportMode::kMonteCarlo;
  rep.value = double(wins) / double(mc.trials);
  rep.params = {{"code", code.describe()}, {"chA", chA.describe()}};
  rep.sampled = true;
  rep.seed = mc.seed;
  rep.trials = mc.trials;
  rep.half_width = 3.0 * std::sqrt(0.25 / double(mc.trials));
  return rep;
}

double psd(const JointDist& j) {
  j.validate();
  const Dist pm = j.row_marginal();
  double best = 0.0;
  std::vector<double> cond0(j.cols), cond1(j.cols);
  for (std::size_t a = 0; a + 1 < j.rows; ++a) {
    if (pm.p[a] == 0.0) continue;
    for (std::size_t z = 0; z < j.cols; ++z) cond0[z] = j.at(a, z) / pm.p[a];
    for (std::size_t b = a + 1; b < j.rows; ++b) {
      if (pm.p[b] == 0.0) continue;
      for (std::size_t z = 0; z < j.cols; ++z) cond1[z] = j.at(b, z) / pm.p[b];
      best = std::max(best, l1_half(cond0.data(), cond1.data(), j.cols));
    }
  }
  return best;
}

}  // namespace wiretap
