#pragma once

#include <utility>
#include <vector>

#include "wiretap/channels.hpp"
#include "wiretap/coding.hpp"
#include "wiretap/common.hpp"
#include "wiretap/probcore.hpp"
#include "wiretap/report.hpp"

// Security advantages of an encryption function against a channel adversary.
//
//   ds     max over message pairs of the statistical distance between the
//          adversary's observed-ciphertext laws
//   mis-r  I(U; ChA(E(U))) with a uniform message
//   mis    the same mutual information maximized over message laws, i.e. the
//          capacity of the induced message->observation channel
//   ss     semantic security, certified through the ds sandwich
//          (ds/2, ds) plus an exact engine on a restricted adversary class
//   rs-r   recovery advantage of the Bayes-optimal guesser for a uniform
//          input observed through code + channel
//
// Every result is an AdvReport; value is the advantage, bits() = -lg(value).

namespace wiretap {

// The message -> adversary-observation channel; rows are coin-averaged laws.
Channel induced_channel(const EncryptionFn& e, const Channel& chA);

// Exact max over unordered message pairs; witness carries the pair.
AdvReport adv_ds_exact(const EncryptionFn& e, const Channel& chA);

// Empirical statistical distance maximized over caller-designated message
// pairs only, so the result is a lower bound (flagged in params).
AdvReport adv_ds_mc(const EncryptionFn& e, const Channel& chA, McParams mc,
                    const std::vector<std::pair<Word, Word>>& pairs);

AdvReport adv_mis_r(const EncryptionFn& e, const Channel& chA);

// Alternating maximization over input laws, run until the standard duality
// gap drops below tol; throws ConvergenceError past the iteration cap.
// Witness carries the maximizing law, the gap and the iteration count.
AdvReport adv_mis(const EncryptionFn& e, const Channel& chA,
                  double tol = 1e-9, std::uint64_t max_iterations = 100000);

// The proven sandwich (ds/2, ds).
std::pair<AdvReport, AdvReport> adv_ss_bounds(const EncryptionFn& e,
                                              const Channel& chA);

// Exact semantic-security advantage restricted to two-point uniform message
// laws and the identity transform: max over pairs of the Bayes guesser's
// edge over the blind simulator.
AdvReport restricted_ss_exact(const EncryptionFn& e, const Channel& chA);

// Recovery advantage GP(U | ChA(encode(U))), U uniform over code inputs.
AdvReport adv_rs_r_exact(const CodeFn& code, const Channel& chA);

// Empirical success rate of the maximum-likelihood guesser; needs a channel
// with exact transition probabilities for the guesser itself.
AdvReport adv_rs_r_mc(const CodeFn& code, const Channel& chA, McParams mc);

// Pairwise statistical distance: max over pairs of row-support points of the
// distance between their conditional column laws.
double psd(const JointDist& j);

}  // namespace wiretap
