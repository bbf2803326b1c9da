#pragma once

#include <string>
#include <vector>

#include "wiretap/coding.hpp"
#include "wiretap/hashing.hpp"

// Extract-then-xor encryption. A fresh key/source pair is drawn as coins,
// the source is hashed under the key into a pad, the pad masks the message,
// and two codes protect the pieces for transmission:
//
//   pad  = hash(key, source)
//   body = key || (pad xor message)
//   out  = en1(source) || en2(body)
//
// The receiver decodes both blocks, rebuilds the pad and unmasks. The
// distinguishing advantage of the whole scheme is controlled by how hard it
// is to recover the source from the first block alone; the second block and
// whatever channel carries it never enter the bound.

namespace wiretap {

class XtXScheme {
 public:
  // en1 must accept the hash input width, en2 the key plus output width.
  XtXScheme(HashFamily fam, CodeFn en1, CodeFn en2);

  const HashFamily& family() const { return fam_; }
  const CodeFn& en1() const { return en1_; }
  const CodeFn& en2() const { return en2_; }

  int key_bits() const { return fam_.key_bits(); }
  int source_bits() const { return fam_.input_bits(); }
  int message_bits() const { return fam_.output_bits(); }
  int cipher_bits() const { return en1_.out_bits() + en2_.out_bits(); }

  // Coins are key || source with the key in the leading bits.
  const EncryptionFn& encryption() const { return enc_; }

  // Seed reuse: pins the hash key, leaving the source as the only coin.
  // The key still rides inside the ciphertext so decryption is unchanged.
  EncryptionFn with_fixed_key(Word key) const;

  std::string describe() const { return enc_.describe(); }

 private:
  HashFamily fam_;
  CodeFn en1_;
  CodeFn en2_;
  EncryptionFn enc_;
};

XtXScheme build_xtx(const HashFamily& fam, const CodeFn& en1,
                    const CodeFn& en2);

// Decodes the two blocks with the codes' own decoders and unmasks the pad.
// `received` has decode_in width of en1 then en2; decoding errors surface
// as a wrong message, never as a failure.
Word xtx_decrypt(const XtXScheme& scheme, Word received);

// sqrt(2^m * rsr): distinguishing advantage of the scheme from the recovery
// advantage of the source block through its channel.
double ds_bound_generic(int m, double rsr);

// Identity codes, adversary bsc(p) on every ciphertext bit:
// sqrt(2^m (1-p)^u).
double ds_bound_bsc_noiseless_receiver(int m, int u, double p);

// Source code u -> u+r bits, adversary bsc(p) on every ciphertext bit:
// sqrt(2^(m+r) (1-p)^(u+r)). r = 0 recovers the noiseless-receiver bound.
double ds_bound_bsc_noisy_receiver(int m, int u, int r, double p);

// Recovery advantage of a systematic code u -> u+r through a channel acting
// independently on the copied and redundant bits: at most 2^r times the
// recovery advantage of the bare source through the copied-bits channel.
double rsr_systematic_reduction(int r, double rsr_id);

// Seed sizing for identity codes against an adversary bsc(p): the smallest
// source width whose distinguishing bound reaches 2^-s.
struct DesignSpec {
  int m = 0;
  int s = 0;
  double p = 0.0;
  double alpha = 0.0;  // lg(1/(1-p)), security bits bought per source bit
  int u = 0;
  double rate = 0.0;        // m/(u+m), key amortized away
  double rate2 = 0.0;       // m/u, masked block sent in the clear
  double rate_limit = 0.0;  // alpha/(1+alpha) as m grows
  double rate2_limit = 0.0; // alpha as m grows
  double bound_ds = 0.0;    // sqrt(2^m (1-p)^u) at the chosen u

  nlohmann::json to_json() const;
};

DesignSpec design_u(int m, int s, double p);

struct RateRow {
  double p = 0.0;
  double alpha = 0.0;
  double rate_limit = 0.0;
  double rate2_limit = 0.0;
};

// Limiting rates for a list of adversary crossovers; display rounds to two
// decimals, serialization keeps full precision.
std::vector<RateRow> rate_table(const std::vector<double>& ps);

double round2_half_up(double x);

}  // namespace wiretap
