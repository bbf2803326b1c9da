#include "wiretap/relations.hpp"

#include <cmath>

namespace wiretap {

std::string to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::kPass:
      return "pass";
    case CheckStatus::kFail:
      return "fail";
    case CheckStatus::kPreconditionNotMet:
      return "precondition-not-met";
  }
  throw Error("unknown check status");
}

nlohmann::json RelationCheck::to_json() const {
  return nlohmann::json{{"relation", relation}, {"instance", instance},
                        {"lhs", lhs},           {"rhs", rhs},
                        {"slack", slack()},     {"tol", tol},
                        {"status", to_string(status)}};
}

RelationCheck make_relation_check(std::string relation, std::string instance,
                                  double lhs, double rhs, double tol) {
  RelationCheck rc;
  rc.relation = std::move(relation);
  rc.instance = std::move(instance);
  rc.lhs = lhs;
  rc.rhs = rhs;
  rc.tol = tol;
  rc.status =
      (rhs - lhs >= -tol) ? CheckStatus::kPass : CheckStatus::kFail;
  return rc;
}

namespace {

std::string instance_label(const EncryptionFn& e, const Channel& chA) {
  return e.describe() + " | " + chA.describe();
}

RelationCheck precondition_not_met(std::string relation, std::string instance,
                                   const std::string& why) {
  RelationCheck rc;
  rc.relation = std::move(relation);
  rc.instance = std::move(instance) + " [" + why + "]";
  rc.status = CheckStatus::kPreconditionNotMet;
  return rc;
}

}  // namespace

std::pair<RelationCheck, RelationCheck> check_ds_ss(const EncryptionFn& e,
                                                    const Channel& chA) {
  const double ds = adv_ds_exact(e, chA).value;
  const double ss = restricted_ss_exact(e, chA).value;
  const std::string inst = instance_label(e, chA);
  return {make_relation_check("ss<=ds", inst, ss, ds),
          make_relation_check("ds<=2ss", inst, ds, 2.0 * ss)};
}

RelationCheck check_mis_to_ds(const EncryptionFn& e, const Channel& chA) {
  const double ds = adv_ds_exact(e, chA).value;
  const double mis = adv_mis(e, chA).value;
  return make_relation_check("ds<=sqrt(2mis)", instance_label(e, chA), ds,
                             std::sqrt(2.0 * mis), 1e-8);
}

RelationCheck check_ds_to_mis(const EncryptionFn& e, const Channel& chA) {
  const double eps = adv_ds_exact(e, chA).value;
  const double mis = adv_mis(e, chA).value;
  const double bound =
      eps == 0.0 ? 0.0 : 2.0 * eps * (e.cipher_bits() - std::log2(eps));
  return make_relation_check("mis<=2ds*lg(2^c/ds)", instance_label(e, chA),
                             mis, bound, 1e-8);
}

int prop411_min_n(double p) {
  if (!(p >= 0.0 && p < 0.5)) {
    throw PreconditionError("separation: crossover must lie in [0, 1/2)");
  }
  const double beta = (0.5 - p) * (0.5 - p) / 2.0;
  int n = 1;
  while (!(std::exp(-double(n) * beta) < 0.25)) ++n;
  return n;
}

double majority_attack_advantage(int n, double p) {
  if (n < 1) throw PreconditionError("separation: prefix must be nonempty");
  if (!(p >= 0.0 && p <= 0.5)) {
    throw PreconditionError("separation: crossover must lie in [0, 1/2]");
  }
  // q = Pr[Bin(n, p) < n/2], exact
  long double q = 0.0L;
  for (int j = 0; 2 * j < n; ++j) {
    long double c = 1.0L;
    for (int i = 0; i < j; ++i) c = c * (n - i) / (i + 1);
    q += c * std::pow((long double)p, j) *
         std::pow(1.0L - (long double)p, n - j);
  }
  return 2.0 * double(q) - 1.0;
}

SeparationScheme build_prop411_counterexample(const EncryptionFn& base,
                                              double p, int prefix_override) {
  const int n = prefix_override > 0 ? prefix_override : prop411_min_n(p);
  const int m = base.message_bits();
  if (base.cipher_bits() + n > 62) {
    throw PreconditionError("separation: prefixed ciphertext exceeds 62 bits");
  }
  const int base_r = base.coin_bits();
  const EncryptionFn scheme(
      base_r + 1, m, base.cipher_bits() + n,
      [base, n, m, base_r](Word r, Word msg) {
        const Word flag_coin = r >> base_r;
        const bool special = msg == 0 || msg == word_mask(m);
        const Word a = special ? (msg >> (m - 1)) : flag_coin;
        const Word prefix = a ? word_mask(n) : 0;
        return concat_bits(prefix, base.encrypt(low_bits(r, base_r), msg),
                           base.cipher_bits());
      },
      "flag-prefix(" + base.describe() + "," + std::to_string(n) + ")");
  return SeparationScheme{scheme, n, 0, word_mask(m),
                          majority_attack_advantage(n, p)};
}

namespace {

RelationCheck misr_to_mis_impl(const EncryptionFn& e, const Channel& chA,
                               std::string instance) {
  if (!is_separable(e)) {
    return precondition_not_met("mis<=mis-r", std::move(instance),
                                "scheme not separable");
  }
  if (!is_message_linear(e)) {
    return precondition_not_met("mis<=mis-r", std::move(instance),
                                "scheme not message-linear");
  }
  const double mis = adv_mis(e, chA).value;
  const double misr = adv_mis_r(e, chA).value;
  RelationCheck rc = make_relation_check("mis<=mis-r", std::move(instance),
                                         mis, misr, 1e-8);
  if (!induced_channel(e, chA).is_symmetric()) {
    rc.status = CheckStatus::kFail;
    rc.instance += " [induced channel not symmetric]";
  }
  return rc;
}

}  // namespace

RelationCheck check_misr_to_mis(const EncryptionFn& e,
                                const Channel& bit_channel) {
  std::string instance = instance_label(e, bit_channel) + "^c";
  if (bit_channel.in_width() != 1) {
    return precondition_not_met("mis<=mis-r", std::move(instance),
                                "per-symbol channel must take one bit");
  }
  if (!bit_channel.is_symmetric()) {
    return precondition_not_met("mis<=mis-r", std::move(instance),
                                "per-symbol channel not symmetric");
  }
  Channel chA = bit_channel;
  for (int i = 1; i < e.cipher_bits(); ++i) {
    chA = Channel::parallel(chA, bit_channel);
  }
  return misr_to_mis_impl(e, chA, std::move(instance));
}

RelationCheck check_misr_to_mis(const EncryptionFn& e, const Dist& noise) {
  if (noise.width != e.cipher_bits()) {
    throw PreconditionError("relation: noise width must match the ciphertext");
  }
  const Channel chA = Channel::additive_noise(noise);
  return misr_to_mis_impl(e, chA, instance_label(e, chA));
}

}  // namespace wiretap
