#pragma once

#include <string>
#include <vector>

#include "wiretap/channels.hpp"
#include "wiretap/common.hpp"
#include "wiretap/probcore.hpp"

// Keyed universal hash families mapping u bits to m bits.
//
//   matrix   key = an m x u matrix over GF(2), applied as H(K, x) = Kx.
//            Key length h = u*m bits, serialized row-major, first row in the
//            key's leading bits.
//   gf-mult  key = a field element; H(K, x) = the low m bits of K*x in
//            GF(2^u), m <= u. The field modulus is the lowest-weight,
//            lexicographically least irreducible polynomial of degree u.
//
// Both families are exactly 2^-m universal, certifiable by enumeration at
// desk sizes via max_collision_prob.

namespace wiretap {

enum class HashKind { kMatrix, kGfMult };

class HashFamily {
 public:
  static HashFamily matrix(int u, int m);
  static HashFamily gf_mult(int u, int m);

  HashKind kind() const { return kind_; }
  int input_bits() const { return u_; }
  int output_bits() const { return m_; }
  int key_bits() const { return h_; }

  // gf-mult only: modulus without its leading x^u term.
  Word field_modulus_low() const;

  Word eval(Word key, Word input) const;

  std::string describe() const;

 private:
  HashFamily() = default;
  HashKind kind_ = HashKind::kMatrix;
  int u_ = 0, m_ = 0, h_ = 0;
  Word modulus_low_ = 0;
};

// The table entry for the field modulus of GF(2^degree), 1 <= degree <= 64,
// without the leading term. Entries for degree <= 32 are re-verified by an
// exhaustive divisor sweep on first use.
Word lowest_irreducible_poly_low(int degree);

// Exact collision probability over the key space for one input pair.
double collision_prob(const HashFamily& fam, Word x1, Word x2);

// max over distinct input pairs of collision_prob; full enumeration.
double max_collision_prob(const HashFamily& fam);

// Privacy amplification bound: SD((K, Z, H(K, U)); (K, Z, V)) is at most
// (1/2) sqrt(2^m * gp) when gp bounds the average guessing probability of U
// given the side information Z.
double lhl_bound(int m, double gp);

// The left side of that bound, computed exactly by enumerating keys, inputs
// and side-channel outputs. u_dist is the law of U; side carries U to Z.
double lhl_exact_sd(const HashFamily& fam, const Dist& u_dist,
                    const Channel& side);

// Test-vector files: whitespace-separated lines
//   kind u m key_hex input_hex output_hex
// with kind in {mx, gf}; '#' starts a comment.
struct HashVectorReport {
  std::size_t checked = 0;
  std::size_t mismatched = 0;
  std::string first_mismatch;
};
HashVectorReport run_hash_test_vectors(const std::string& path);

}  // namespace wiretap
