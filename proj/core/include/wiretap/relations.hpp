#pragma once

#include <string>
#include <utility>

#include "wiretap/metrics.hpp"

// Executable certificates for the implication bounds between the security
// metrics, plus the construction separating uniform-message security from
// distinguishing security.

namespace wiretap {

enum class CheckStatus { kPass, kFail, kPreconditionNotMet };

std::string to_string(CheckStatus status);

struct RelationCheck {
  std::string relation;
  std::string instance;
  double lhs = 0.0;
  double rhs = 0.0;
  double tol = 1e-10;
  CheckStatus status = CheckStatus::kPass;

  double slack() const { return rhs - lhs; }
  bool passed() const { return status == CheckStatus::kPass; }
  nlohmann::json to_json() const;
};

// status = pass iff lhs <= rhs + tol.
RelationCheck make_relation_check(std::string relation, std::string instance,
                                  double lhs, double rhs, double tol = 1e-10);

// The sandwich: restricted-exact ss <= ds and ds <= 2 * ss.
std::pair<RelationCheck, RelationCheck> check_ds_ss(const EncryptionFn& e,
                                                    const Channel& chA);

// ds <= sqrt(2 * mis); tolerance absorbs the capacity-iteration error.
RelationCheck check_mis_to_ds(const EncryptionFn& e, const Channel& chA);

// mis <= 2 eps lg(2^c / eps) with eps = ds; the eps = 0 limit demands
// mis = 0.
RelationCheck check_ds_to_mis(const EncryptionFn& e, const Channel& chA);

// Smallest n with exp(-n (1/2 - p)^2 / 2) < 1/4; needs p < 1/2.
int prop411_min_n(double p);

// 2 q - 1 where q = Pr[Bin(n, p) < n/2]: the edge of a majority vote on an
// n-fold repeated bit observed through crossover p.
double majority_attack_advantage(int n, double p);

// A scheme that is nearly as hard to attack on a uniform message as its
// base, yet fully distinguishable on the all-zero / all-one pair: the
// ciphertext gains an n-bit prefix a^n where a is the leading message bit
// for those two messages and a fresh coin otherwise.
struct SeparationScheme {
  EncryptionFn scheme;
  int prefix_len;
  Word message_zero;
  Word message_ones;
  double attack_advantage;  // majority vote on the prefix through bsc(p)
};

// prefix_override = 0 derives the length from p; a positive value forces a
// small prefix so exact evaluation stays feasible.
SeparationScheme build_prop411_counterexample(const EncryptionFn& base,
                                              double p,
                                              int prefix_override = 0);

// mis <= mis-r for separable message-linear schemes observed through c
// independent copies of one symmetric bit channel. Hypothesis failures come
// back as kPreconditionNotMet; the induced channel's symmetry is certified
// as part of the check.
RelationCheck check_misr_to_mis(const EncryptionFn& e,
                                const Channel& bit_channel);

// Same statement for the adversary channel X -> X xor E with E drawn fresh
// from `noise` (width = ciphertext width).
RelationCheck check_misr_to_mis(const EncryptionFn& e, const Dist& noise);

}  // namespace wiretap
