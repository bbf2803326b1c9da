#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "wiretap/channels.hpp"
#include "wiretap/common.hpp"
#include "wiretap/probcore.hpp"
#include "wiretap/report.hpp"

// Encryption and code function abstractions plus decryption-error evaluation.
//
// An encryption function is a deterministic map (R, M) -> X on declared bit
// widths; coins R are always uniform. A code function is an injective encode
// a -> b bits with an attached decoder from the receiver's alphabet (width d,
// usually b) back to a bits. Decoders are data: majority, prefix truncation
// and nearest-codeword search ship here, anything else can be plugged in.

namespace wiretap {

class EncryptionFn {
 public:
  EncryptionFn(int coin_bits, int message_bits, int cipher_bits,
               std::function<Word(Word, Word)> map, std::string desc);

  int coin_bits() const { return impl_->r; }
  int message_bits() const { return impl_->m; }
  int cipher_bits() const { return impl_->c; }
  double rate() const;

  Word encrypt(Word coins, Word message) const;

  // Law of the ciphertext for a fixed message, coins uniform.
  Dist ciphertext_dist(Word message) const;

  std::string describe() const { return impl_->desc; }

 private:
  struct Impl {
    int r, m, c;
    std::function<Word(Word, Word)> map;
    std::string desc;
  };
  std::shared_ptr<const Impl> impl_;
};

class CodeFn {
 public:
  // Injectivity is certified exhaustively at construction for a <= 16.
  CodeFn(int in_bits, int out_bits, std::function<Word(Word)> encode,
         int decode_in_bits, std::function<Word(Word)> decode,
         std::string desc);

  int in_bits() const { return impl_->a; }
  int out_bits() const { return impl_->b; }
  int decode_in_bits() const { return impl_->d; }

  Word encode(Word x) const;
  Word decode(Word y) const;

  std::string describe() const { return impl_->desc; }

 private:
  struct Impl {
    int a, b, d;
    std::function<Word(Word)> encode;
    std::function<Word(Word)> decode;
    std::string desc;
  };
  std::shared_ptr<const Impl> impl_;
};

// encode(U) = U || redundancy(U), decode = keep the prefix.
class SystematicCode {
 public:
  SystematicCode(int message_bits, int redundancy_bits,
                 std::function<Word(Word)> redundancy, std::string desc);

  int message_bits() const { return u_; }
  int redundancy_bits() const { return red_; }
  Word redundancy(Word x) const { return red_fn_(low_bits(x, u_)); }
  const CodeFn& code() const { return code_; }

 private:
  int u_, red_;
  std::function<Word(Word)> red_fn_;
  CodeFn code_;
};

// E(R, M) = E(R, 0) xor E(0, M) for every coin/message pair.
bool is_separable(const EncryptionFn& e);

// E(0, M xor M') = E(0, M) xor E(0, M') plus E(0, 0) = 0.
bool is_message_linear(const EncryptionFn& e);

// 1 -> n bit repetition with majority decoding; n odd (ties rejected).
CodeFn repetition_code(int n);

// Each of `width` bits repeated n times, majority decoded per position.
// Output layout: the n copies of the leading input bit come first.
CodeFn block_repetition_code(int n, int width);

CodeFn identity_code(int width);

SystematicCode make_systematic(int message_bits, int redundancy_bits,
                               std::function<Word(Word)> redundancy,
                               std::string desc);

// rows[i] is the b-bit codeword contribution of message bit i (msb first);
// encode(x) = xor of the rows selected by x, decode = nearest codeword
// (ties broken toward the smallest message).
CodeFn generator_matrix_code(int in_bits, int out_bits,
                             const std::vector<Word>& rows,
                             std::string desc = "");

// Coin-free encryption wrapper around a code's encoder.
EncryptionFn as_encryption(const CodeFn& code);

// E(R, M) = encode(M) xor (R || 0-pad): coins land in the leading
// coordinates, so the map splits by construction.
EncryptionFn xor_linear_scheme(const CodeFn& code, int coin_bits);

struct McParams {
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

// Max over messages of Pr[decode(chR(encode(M))) != M].
AdvReport decryption_error_exact(const CodeFn& code, const Channel& chR);
AdvReport decryption_error_exact(const EncryptionFn& e,
                                 const std::function<Word(Word)>& decoder,
                                 const Channel& chR);

// Per-message empirical estimates on independent rng streams; the max is
// taken over all messages when m <= 12, otherwise over a caller-supplied
// list and the result is only a lower bound (flagged in params).
AdvReport decryption_error_mc(const CodeFn& code, const Channel& chR,
                              McParams mc,
                              const std::vector<Word>& messages = {});
AdvReport decryption_error_mc(const EncryptionFn& e,
                              const std::function<Word(Word)>& decoder,
                              const Channel& chR, McParams mc,
                              const std::vector<Word>& messages = {});

}  // namespace wiretap
