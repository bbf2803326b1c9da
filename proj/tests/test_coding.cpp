#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "wiretap/coding.hpp"

using namespace wiretap;

namespace {

// Oracle: binomial upper tail on long doubles.
double binom_tail_ref(int n, double p, int from) {
  long double total = 0.0L;
  for (int j = from; j <= n; ++j) {
    long double c = 1.0L;
    for (int i = 0; i < j; ++i) c = c * (n - i) / (i + 1);
    total += c * std::pow((long double)p, j) *
             std::pow(1.0L - (long double)p, n - j);
  }
  return (double)total;
}

CodeFn hamming74() {
  return generator_matrix_code(4, 7, {0x46, 0x25, 0x13, 0x0f}, "hamming74");
}

}  // namespace

TEST_CASE("encryption function basics") {
  const EncryptionFn otp(3, 3, 3, [](Word r, Word m) { return r ^ m; },
                         "otp(3)");
  CHECK(otp.coin_bits() == 3);
  CHECK(otp.message_bits() == 3);
  CHECK(otp.cipher_bits() == 3);
  CHECK(otp.rate() == 1.0);
  CHECK(otp.describe() == "otp(3)");
  CHECK(otp.encrypt(0b101, 0b011) == 0b110);
  // stray high bits are masked before the map runs
  CHECK(otp.encrypt(0b1101, 0b1011) == otp.encrypt(0b101, 0b011));

  CHECK_THROWS_AS(EncryptionFn(-1, 1, 1, [](Word, Word m) { return m; }, ""),
                  PreconditionError);
  CHECK_THROWS_AS(EncryptionFn(0, 0, 1, [](Word, Word m) { return m; }, ""),
                  PreconditionError);
  CHECK_THROWS_AS(EncryptionFn(0, 1, 63, [](Word, Word m) { return m; }, ""),
                  PreconditionError);

  const EncryptionFn bad(0, 1, 1, [](Word, Word) { return Word{2}; }, "bad");
  CHECK_THROWS_AS(bad.encrypt(0, 0), Error);
}

TEST_CASE("ciphertext law of a one-time pad is uniform") {
  const EncryptionFn otp(3, 3, 3, [](Word r, Word m) { return r ^ m; },
                         "otp(3)");
  for (Word m = 0; m < 8; ++m) {
    const Dist d = otp.ciphertext_dist(m);
    for (double v : d.p) CHECK(v == 0.125);
  }
}

TEST_CASE("ciphertext law of a coin-free scheme is a point mass") {
  const EncryptionFn e = as_encryption(repetition_code(3));
  const Dist d = e.ciphertext_dist(1);
  CHECK(d.p[0b111] == 1.0);
  CHECK(d.p[0] == 0.0);
}

TEST_CASE("code construction certifies injectivity") {
  CHECK_THROWS_AS(CodeFn(2, 2, [](Word) { return Word{0}; }, 2,
                         [](Word y) { return y; }, "squash"),
                  PreconditionError);
  CHECK_THROWS_AS(CodeFn(3, 2, [](Word x) { return x; }, 2,
                         [](Word y) { return y; }, "shrink"),
                  PreconditionError);
  CHECK_NOTHROW(identity_code(12));
}

TEST_CASE("repetition code encodes and majority-decodes") {
  const CodeFn rep = repetition_code(3);
  CHECK(rep.describe() == "rep(3)");
  CHECK(rep.in_bits() == 1);
  CHECK(rep.out_bits() == 3);
  CHECK(rep.encode(1) == 0b111);
  CHECK(rep.encode(0) == 0);
  CHECK(rep.decode(0b101) == 1);
  CHECK(rep.decode(0b100) == 0);
  CHECK_THROWS_AS(repetition_code(2), PreconditionError);
  CHECK_THROWS_AS(repetition_code(0), PreconditionError);
  CHECK_NOTHROW(repetition_code(1));
}

TEST_CASE("block repetition repeats each bit and corrects per position") {
  const CodeFn rep = block_repetition_code(3, 2);
  CHECK(rep.describe() == "rep(3,2)");
  CHECK(rep.encode(0b10) == 0b111000);
  CHECK(rep.encode(0b01) == 0b000111);
  CHECK(rep.encode(0b11) == 0b111111);
  // one flip in each block still decodes
  CHECK(rep.decode(0b101001) == 0b10);
  for (Word x = 0; x < 4; ++x) CHECK(rep.decode(rep.encode(x)) == x);
  CHECK_THROWS_AS(block_repetition_code(2, 2), PreconditionError);
  CHECK_THROWS_AS(block_repetition_code(3, 21), PreconditionError);
}

TEST_CASE("systematic codes put the message in the leading bits") {
  const SystematicCode parity = make_systematic(
      3, 1, [](Word x) { return Word(parity64(x)); }, "sys(parity,3)");
  CHECK(parity.code().encode(0b101) == 0b1010);
  CHECK(parity.code().encode(0b100) == 0b1001);
  CHECK(parity.redundancy(0b101) == 0);
  CHECK(parity.code().describe() == "sys(parity,3)");

  const SystematicCode copy =
      make_systematic(3, 3, [](Word x) { return x; }, "sys(copy,3)");
  CHECK(copy.code().encode(0b110) == 0b110110);

  // prefix property, exhaustively
  for (Word x = 0; x < 8; ++x) {
    CHECK((parity.code().encode(x) >> 1) == x);
    CHECK((copy.code().encode(x) >> 3) == x);
    CHECK(parity.code().decode(parity.code().encode(x)) == x);
    CHECK(copy.code().decode(copy.code().encode(x)) == x);
  }

  CHECK_THROWS_AS(make_systematic(3, -1, [](Word) { return Word{0}; }, ""),
                  PreconditionError);
  // the construction-time certificate already exercises the encoder
  CHECK_THROWS_AS(make_systematic(2, 1, [](Word) { return Word{2}; }, ""),
                  Error);
}

TEST_CASE("generator matrix code encodes by row xor") {
  const CodeFn g = generator_matrix_code(2, 3, {0b110, 0b011});
  CHECK(g.describe() == "gen(2,3)");
  CHECK(g.encode(0b10) == 0b110);
  CHECK(g.encode(0b01) == 0b011);
  CHECK(g.encode(0b11) == 0b101);
  CHECK(g.encode(0) == 0);
  CHECK(g.decode(0b110) == 0b10);
  // equidistant word: tie breaks toward the smallest message
  CHECK(g.decode(0b111) == 0b01);

  CHECK_THROWS_AS(generator_matrix_code(2, 3, {0b110}), PreconditionError);
  CHECK_THROWS_AS(generator_matrix_code(2, 3, {0b1100, 0b011}),
                  PreconditionError);
  // rank-deficient rows are not injective
  CHECK_THROWS_AS(generator_matrix_code(2, 3, {0b110, 0b110}),
                  PreconditionError);
}

TEST_CASE("the [7,4] single-error-correcting fixture corrects every flip") {
  const CodeFn h = hamming74();
  for (Word x = 0; x < 16; ++x) {
    const Word cw = h.encode(x);
    CHECK(h.decode(cw) == x);
    for (int bit = 0; bit < 7; ++bit) {
      CHECK(h.decode(cw ^ (Word{1} << bit)) == x);
    }
  }
}

TEST_CASE("round trips over a noiseless channel at test sizes") {
  const std::vector<CodeFn> codes = {repetition_code(5),
                                     block_repetition_code(3, 4),
                                     identity_code(6), hamming74()};
  for (const auto& code : codes) {
    for (Word x = 0; x < (Word{1} << code.in_bits()); ++x) {
      CHECK(code.decode(code.encode(x)) == x);
    }
  }
}

TEST_CASE("exact decryption error: identity over identity is zero") {
  const AdvReport r =
      decryption_error_exact(identity_code(4), Channel::identity(4));
  CHECK(r.value == 0.0);
  CHECK(r.mode == ReportMode::kExact);
  CHECK(r.metric == "de");
  CHECK(std::isinf(r.bits()));
}

TEST_CASE("exact decryption error matches the binomial tail oracle") {
  const AdvReport rep3 =
      decryption_error_exact(repetition_code(3), Channel::bsc(0.1, 3));
  CHECK(rep3.value == doctest::Approx(0.028).epsilon(1e-12));
  CHECK(rep3.value ==
        doctest::Approx(binom_tail_ref(3, 0.1, 2)).epsilon(1e-13));

  for (double p : {0.05, 0.1, 0.25, 0.4}) {
    for (int n : {1, 3, 5, 7}) {
      const AdvReport r =
          decryption_error_exact(repetition_code(n), Channel::bsc(p, n));
      CHECK(r.value ==
            doctest::Approx(binom_tail_ref(n, p, n / 2 + 1)).epsilon(1e-12));
    }
  }
}

TEST_CASE("exact decryption error of the perfect [7,4] fixture") {
  // correct iff at most one flip
  for (double p : {0.05, 0.1, 0.2}) {
    const AdvReport r = decryption_error_exact(hamming74(), Channel::bsc(p, 7));
    const double q = 1.0 - p;
    const double expect = 1.0 - std::pow(q, 7) - 7.0 * p * std::pow(q, 6);
    CHECK(r.value == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("block repetition decomposes into independent per-bit errors") {
  const double p = 0.15;
  const AdvReport r = decryption_error_exact(block_repetition_code(3, 2),
                                             Channel::bsc(p, 6));
  const double per_bit = binom_tail_ref(3, p, 2);
  CHECK(r.value ==
        doctest::Approx(1.0 - (1.0 - per_bit) * (1.0 - per_bit))
            .epsilon(1e-12));
}

TEST_CASE("exact decryption error averages over coins") {
  // identity receiver channel but a decoder blind to the pad: right only
  // when the coins are zero
  const EncryptionFn otp(3, 3, 3, [](Word r, Word m) { return r ^ m; },
                         "otp(3)");
  const auto blind = [](Word y) { return y; };
  const AdvReport r = decryption_error_exact(otp, blind, Channel::identity(3));
  CHECK(r.value == 0.875);
}

TEST_CASE("decryption error rejects mismatched widths and huge alphabets") {
  CHECK_THROWS_AS(
      decryption_error_exact(repetition_code(3), Channel::bsc(0.1, 4)),
      PreconditionError);
  {
    EnumCapGuard guard(16);
    CHECK_THROWS_AS(
        decryption_error_exact(identity_code(8), Channel::bsc(0.1, 8)),
        SizeCapError);
  }
  // sampler-only channels cannot answer exact queries
  const Channel mc_only = Channel::sampler(
      3, 3, [](Word x, RngStream&) { return x; }, "stub");
  CHECK_THROWS_AS(decryption_error_exact(repetition_code(3), mc_only),
                  ExactModeUnavailable);
}

TEST_CASE("monte-carlo decryption error tracks the exact value") {
  const AdvReport exact =
      decryption_error_exact(repetition_code(3), Channel::bsc(0.1, 3));
  const AdvReport mc = decryption_error_mc(repetition_code(3),
                                           Channel::bsc(0.1, 3),
                                           {20000, 424242});
  CHECK(mc.sampled);
  CHECK(mc.trials == 20000);
  CHECK(mc.seed == 424242);
  CHECK(mc.half_width > 0.0);
  CHECK(std::abs(mc.value - exact.value) <= mc.half_width);
  CHECK(mc.params.at("estimate") == "max-over-messages");

  // reproducible given the seed
  const AdvReport again = decryption_error_mc(repetition_code(3),
                                              Channel::bsc(0.1, 3),
                                              {20000, 424242});
  CHECK(again.value == mc.value);
}

TEST_CASE("monte-carlo decryption error over a designated message list") {
  const EncryptionFn wide(
      0, 14, 14, [](Word, Word m) { return m; }, "wide-id");
  const auto dec = [](Word y) { return y; };
  CHECK_THROWS_AS(
      decryption_error_mc(wide, dec, Channel::identity(14), {100, 1}),
      PreconditionError);
  const AdvReport r = decryption_error_mc(wide, dec, Channel::identity(14),
                                          {100, 1}, {0, 5, 9000});
  CHECK(r.value == 0.0);
  CHECK(r.params.at("estimate") == "lower-bound");
  CHECK_THROWS_AS(
      decryption_error_mc(wide, dec, Channel::identity(14), {0, 1}, {0}),
      PreconditionError);
}

TEST_CASE("separability holds exactly for xor-split schemes") {
  const EncryptionFn xl = xor_linear_scheme(hamming74(), 3);
  CHECK(is_separable(xl));
  CHECK(is_message_linear(xl));
  CHECK(xl.coin_bits() == 3);
  CHECK(xl.cipher_bits() == 7);
  // coins land in the leading bits
  CHECK(xl.encrypt(0b101, 0) == (Word{0b101} << 4));

  const EncryptionFn otp(3, 3, 3, [](Word r, Word m) { return r ^ m; },
                         "otp(3)");
  CHECK(is_separable(otp));
  CHECK(is_message_linear(otp));
}

TEST_CASE("separability fails for a multiplicative coupling") {
  // E(R, M) = (M and R) || R at r = m = 1
  const EncryptionFn e(
      1, 1, 2, [](Word r, Word m) { return ((m & r) << 1) | r; }, "and-pad");
  CHECK_FALSE(is_separable(e));
}

TEST_CASE("coin-free schemes reduce separability to a zero check") {
  CHECK(is_separable(as_encryption(identity_code(2))));
  const EncryptionFn affine(
      0, 2, 3, [](Word, Word m) { return (m << 1) | 1; }, "append-one");
  CHECK_FALSE(is_separable(affine));
  CHECK_FALSE(is_message_linear(affine));
}

TEST_CASE("message linearity fails for a nonlinear substitution") {
  const Word box[4] = {0, 1, 2, 1};
  const EncryptionFn sbox(
      0, 2, 2, [box](Word, Word m) { return box[m]; }, "sbox");
  CHECK_FALSE(is_message_linear(sbox));
}

TEST_CASE("structural checks respect the enumeration cap") {
  const EncryptionFn wide(
      12, 12, 12, [](Word r, Word m) { return r ^ m; }, "otp(12)");
  EnumCapGuard guard(1 << 10);
  CHECK_THROWS_AS(is_separable(wide), SizeCapError);
  CHECK_THROWS_AS(is_message_linear(wide), SizeCapError);
}

TEST_CASE("coin-free wrapper exposes the code rate") {
  const EncryptionFn e = as_encryption(hamming74());
  CHECK(e.coin_bits() == 0);
  CHECK(e.message_bits() == 4);
  CHECK(e.cipher_bits() == 7);
  CHECK(e.rate() == doctest::Approx(4.0 / 7.0));
  CHECK(e.encrypt(0, 0b1001) == hamming74().encode(0b1001));
}

TEST_CASE("xor-linear rejects coins wider than the codeword") {
  CHECK_THROWS_AS(xor_linear_scheme(identity_code(3), 4), PreconditionError);
  CHECK_NOTHROW(xor_linear_scheme(identity_code(3), 0));
}
