#include "wiretap/coding.hpp"

#include <algorithm>
#include <cmath>

namespace wiretap {

namespace {

Word checked_width(Word v, int width, const char* what) {
  if (width < 64 && (v >> width) != 0) {
    throw Error(std::string(what) + " produced a value wider than declared");
  }
  return v;
}

}  // namespace

EncryptionFn::EncryptionFn(int coin_bits, int message_bits, int cipher_bits,
                           std::function<Word(Word, Word)> map,
                           std::string desc) {
  if (coin_bits < 0 || coin_bits > 62) {
    throw PreconditionError("encryption: coin width outside 0..62");
  }
  if (message_bits < 1 || message_bits > 62) {
    throw PreconditionError("encryption: message width outside 1..62");
  }
  if (cipher_bits < 1 || cipher_bits > 62) {
    throw PreconditionError("encryption: ciphertext width outside 1..62");
  }
  if (!map) throw PreconditionError("encryption: null map");
  impl_ = std::make_shared<const Impl>(
      Impl{coin_bits, message_bits, cipher_bits, std::move(map),
           std::move(desc)});
}

double EncryptionFn::rate() const {
  return static_cast<double>(impl_->m) / static_cast<double>(impl_->c);
}

Word EncryptionFn::encrypt(Word coins, Word message) const {
  const Word x =
      impl_->map(low_bits(coins, impl_->r), low_bits(message, impl_->m));
  return checked_width(x, impl_->c, "encryption map");
}

Dist EncryptionFn::ciphertext_dist(Word message) const {
  check_enum_cap(std::uint64_t{1} << impl_->c, "ciphertext law");
  check_enum_cap(std::uint64_t{1} << impl_->r, "coin enumeration");
  std::vector<double> p(std::size_t{1} << impl_->c, 0.0);
  const double w = std::ldexp(1.0, -impl_->r);
  for (Word r = 0; r < (Word{1} << impl_->r); ++r) {
    p[encrypt(r, message)] += w;
  }
  return Dist::bitstrings(impl_->c, std::move(p));
}

CodeFn::CodeFn(int in_bits, int out_bits, std::function<Word(Word)> encode,
               int decode_in_bits, std::function<Word(Word)> decode,
               std::string desc) {
  if (in_bits < 1 || out_bits > 62 || in_bits > out_bits) {
    throw PreconditionError("code: need 1 <= a <= b <= 62");
  }
  if (decode_in_bits < 1 || decode_in_bits > 62) {
    throw PreconditionError("code: decoder input width outside 1..62");
  }
  if (!encode || !decode) throw PreconditionError("code: null map");
  impl_ = std::make_shared<const Impl>(Impl{in_bits, out_bits, decode_in_bits,
                                            std::move(encode),
                                            std::move(decode),
                                            std::move(desc)});
  if (in_bits <= 16) {
    std::vector<Word> outs(std::size_t{1} << in_bits);
    for (Word x = 0; x < outs.size(); ++x) outs[x] = this->encode(x);
    std::sort(outs.begin(), outs.end());
    if (std::adjacent_find(outs.begin(), outs.end()) != outs.end()) {
      throw PreconditionError("code: encoder is not injective");
    }
  }
}

Word CodeFn::encode(Word x) const {
  return checked_width(impl_->encode(low_bits(x, impl_->a)), impl_->b,
                       "encoder");
}

Word CodeFn::decode(Word y) const {
  return checked_width(impl_->decode(low_bits(y, impl_->d)), impl_->a,
                       "decoder");
}

SystematicCode::SystematicCode(int message_bits, int redundancy_bits,
                               std::function<Word(Word)> redundancy,
                               std::string desc)
    : u_(message_bits),
      red_(redundancy_bits),
      red_fn_(std::move(redundancy)),
      code_(message_bits, message_bits + redundancy_bits,
            [u = message_bits, red = redundancy_bits, fn = red_fn_](Word x) {
              const Word r = fn(x);
              if (red < 64 && (r >> red) != 0) {
                throw Error("redundancy map wider than declared");
              }
              return concat_bits(x, r, red);
            },
            message_bits + redundancy_bits,
            [red = redundancy_bits](Word y) { return y >> red; },
            std::move(desc)) {
  if (redundancy_bits < 0) {
    throw PreconditionError("systematic code: negative redundancy width");
  }
  if (!red_fn_) throw PreconditionError("systematic code: null redundancy");
}

bool is_separable(const EncryptionFn& e) {
  check_enum_cap(std::uint64_t{1} << (e.coin_bits() + e.message_bits()),
                 "separability check");
  const Word coins = Word{1} << e.coin_bits();
  const Word msgs = Word{1} << e.message_bits();
  for (Word r = 0; r < coins; ++r) {
    for (Word m = 0; m < msgs; ++m) {
      if (e.encrypt(r, m) != (e.encrypt(r, 0) ^ e.encrypt(0, m))) return false;
    }
  }
  return true;
}

bool is_message_linear(const EncryptionFn& e) {
  check_enum_cap(std::uint64_t{1} << (2 * e.message_bits()),
                 "message linearity check");
  if (e.encrypt(0, 0) != 0) return false;
  const Word msgs = Word{1} << e.message_bits();
  for (Word m1 = 0; m1 < msgs; ++m1) {
    for (Word m2 = 0; m2 < msgs; ++m2) {
      if (e.encrypt(0, m1 ^ m2) != (e.encrypt(0, m1) ^ e.encrypt(0, m2))) {
        return false;
      }
    }
  }
  return true;
}

CodeFn repetition_code(int n) {
  if (n < 1 || n % 2 == 0) {
    throw PreconditionError("repetition: n must be odd (majority ties)");
  }
  if (n > 62) throw PreconditionError("repetition: n outside 1..62");
  return CodeFn(
      1, n, [n](Word x) { return x ? word_mask(n) : 0; }, n,
      [n](Word y) { return Word(std::popcount(y) > n / 2); },
      "rep(" + std::to_string(n) + ")");
}

CodeFn block_repetition_code(int n, int width) {
  if (n < 1 || n % 2 == 0) {
    throw PreconditionError("repetition: n must be odd (majority ties)");
  }
  if (width < 1 || n * width > 62) {
    throw PreconditionError("repetition: n*width outside 1..62");
  }
  const auto encode = [n, width](Word x) {
    Word out = 0;
    for (int i = width - 1; i >= 0; --i) {
      out = (out << n) | (((x >> i) & 1) ? word_mask(n) : 0);
    }
    return out;
  };
  const auto decode = [n, width](Word y) {
    Word out = 0;
    for (int i = width - 1; i >= 0; --i) {
      const Word block = (y >> (i * n)) & word_mask(n);
      out = (out << 1) | Word(std::popcount(block) > n / 2);
    }
    return out;
  };
  return CodeFn(width, n * width, encode, n * width, decode,
                "rep(" + std::to_string(n) + "," + std::to_string(width) +
                    ")");
}

CodeFn identity_code(int width) {
  if (width < 1 || width > 62) {
    throw PreconditionError("identity code: width outside 1..62");
  }
  const auto id = [](Word x) { return x; };
  return CodeFn(width, width, id, width, id,
                "id(" + std::to_string(width) + ")");
}

SystematicCode make_systematic(int message_bits, int redundancy_bits,
                               std::function<Word(Word)> redundancy,
                               std::string desc) {
  return SystematicCode(message_bits, redundancy_bits, std::move(redundancy),
                        std::move(desc));
}

CodeFn generator_matrix_code(int in_bits, int out_bits,
                             const std::vector<Word>& rows, std::string desc) {
  if (in_bits < 1 || in_bits > out_bits || out_bits > 62) {
    throw PreconditionError("generator: need 1 <= a <= b <= 62");
  }
  if (rows.size() != static_cast<std::size_t>(in_bits)) {
    throw PreconditionError("generator: one row per message bit required");
  }
  for (Word row : rows) {
    if ((row >> out_bits) != 0) {
      throw PreconditionError("generator: row wider than the codeword");
    }
  }
  check_enum_cap(std::uint64_t{1} << in_bits, "generator decode table");
  auto codewords =
      std::make_shared<std::vector<Word>>(std::size_t{1} << in_bits);
  for (Word x = 0; x < codewords->size(); ++x) {
    Word cw = 0;
    for (int i = 0; i < in_bits; ++i) {
      if ((x >> (in_bits - 1 - i)) & 1) cw ^= rows[i];
    }
    (*codewords)[x] = cw;
  }
  const auto encode = [codewords](Word x) { return (*codewords)[x]; };
  const auto decode = [codewords](Word y) {
    Word best = 0;
    int best_dist = 64;
    for (Word x = 0; x < codewords->size(); ++x) {
      const int d = hamming((*codewords)[x], y);
      if (d < best_dist) {
        best_dist = d;
        best = x;
      }
    }
    return best;
  };
  if (desc.empty()) {
    desc = "gen(" + std::to_string(in_bits) + "," + std::to_string(out_bits) +
           ")";
  }
  return CodeFn(in_bits, out_bits, encode, out_bits, decode, std::move(desc));
}

EncryptionFn as_encryption(const CodeFn& code) {
  return EncryptionFn(
      0, code.in_bits(), code.out_bits(),
      [code](Word, Word m) { return code.encode(m); }, code.describe());
}

EncryptionFn xor_linear_scheme(const CodeFn& code, int coin_bits) {
  if (coin_bits < 0 || coin_bits > code.out_bits()) {
    throw PreconditionError("xor-linear: coins must fit the codeword");
  }
  const int pad = code.out_bits() - coin_bits;
  return EncryptionFn(
      coin_bits, code.in_bits(), code.out_bits(),
      [code, pad](Word r, Word m) { return code.encode(m) ^ (r << pad); },
      "xor-linear(" + code.describe() + "," + std::to_string(coin_bits) +
          ")");
}

namespace {

AdvReport de_exact_impl(int r, int m, int c,
                        const std::function<Word(Word, Word)>& map,
                        const std::function<Word(Word)>& dec,
                        const Channel& chR,
                        std::map<std::string, std::string> params) {
  if (chR.in_width() != c) {
    throw PreconditionError("decryption error: channel input width mismatch");
  }
  check_enum_cap(std::uint64_t{1} << m, "decryption error messages");
  check_enum_cap(std::uint64_t{1} << r, "decryption error coins");
  check_enum_cap(chR.out_size(), "decryption error outputs");
  const double weight = std::ldexp(1.0, -r);
  std::vector<double> law(chR.out_size());
  double worst = 0.0;
  Word worst_m = 0;
  for (Word msg = 0; msg < (Word{1} << m); ++msg) {
    std::fill(law.begin(), law.end(), 0.0);
    for (Word coins = 0; coins < (Word{1} << r); ++coins) {
      chR.accumulate_row(map(coins, msg), weight, law.data());
    }
    double err = 0.0;
    for (std::size_t y = 0; y < law.size(); ++y) {
      if (dec(y) != msg) err += law[y];
    }
    if (err > worst) {
      worst = err;
      worst_m = msg;
    }
  }
  AdvReport rep;
  rep.metric = "de";
  rep.mode = ReportMode::kExact;
  rep.value = worst;
  rep.params = std::move(params);
  rep.witness = nlohmann::json{{"message", worst_m}};
  return rep;
}

AdvReport de_mc_impl(int r, int m, int c,
                     const std::function<Word(Word, Word)>& map,
                     const std::function<Word(Word)>& dec, const Channel& chR,
                     McParams mc, const std::vector<Word>& messages,
                     std::map<std::string, std::string> params) {
  if (chR.in_width() != c) {
    throw PreconditionError("decryption error: channel input width mismatch");
  }
  if (mc.trials == 0) {
    throw PreconditionError("decryption error: trials must be positive");
  }
  std::vector<Word> msgs = messages;
  const bool partial = !msgs.empty();
  if (msgs.empty()) {
    if (m > 12) {
      throw PreconditionError(
          "decryption error: message space too large to exhaust, pass a "
          "message list");
    }
    msgs.resize(std::size_t{1} << m);
    for (Word x = 0; x < msgs.size(); ++x) msgs[x] = x;
  }
  double worst = 0.0;
  Word worst_m = msgs.front();
  for (std::size_t i = 0; i < msgs.size(); ++i) {
    const Word msg = low_bits(msgs[i], m);
    RngStream rng(mc.seed, i);
    std::uint64_t bad = 0;
    for (std::uint64_t t = 0; t < mc.trials; ++t) {
      const Word x = map(rng.bits(r), msg);
      if (dec(chR.sample(x, rng)) != msg) ++bad;
    }
    const double est = double(bad) / double(mc.trials);
    if (est >= worst) {
      worst = est;
      worst_m = msg;
    }
  }
  AdvReport rep;
  rep.metric = "de";
  rep.mode = ReportMode::kMonteCarlo;
  rep.value = worst;
  rep.params = std::move(params);
  rep.params["estimate"] = partial ? "lower-bound" : "max-over-messages";
  rep.sampled = true;
  rep.seed = mc.seed;
  rep.trials = mc.trials;
  rep.half_width = 3.0 * std::sqrt(0.25 / double(mc.trials));
  rep.witness = nlohmann::json{{"message", worst_m}};
  return rep;
}

std::map<std::string, std::string> code_params(const CodeFn& code,
                                               const Channel& chR) {
  return {{"code", code.describe()}, {"chR", chR.describe()}};
}

std::map<std::string, std::string> enc_params(const EncryptionFn& e,
                                              const Channel& chR) {
  return {{"scheme", e.describe()}, {"chR", chR.describe()}};
}

}  // namespace

AdvReport decryption_error_exact(const CodeFn& code, const Channel& chR) {
  if (chR.out_width() != code.decode_in_bits()) {
    throw PreconditionError("decryption error: decoder width mismatch");
  }
  return de_exact_impl(
      0, code.in_bits(), code.out_bits(),
      [&code](Word, Word m) { return code.encode(m); },
      [&code](Word y) { return code.decode(y); }, chR,
      code_params(code, chR));
}

AdvReport decryption_error_exact(const EncryptionFn& e,
                                 const std::function<Word(Word)>& decoder,
                                 const Channel& chR) {
  if (!decoder) throw PreconditionError("decryption error: null decoder");
  return de_exact_impl(
      e.coin_bits(), e.message_bits(), e.cipher_bits(),
      [&e](Word r, Word m) { return e.encrypt(r, m); }, decoder, chR,
      enc_params(e, chR));
}

AdvReport decryption_error_mc(const CodeFn& code, const Channel& chR,
                              McParams mc, const std::vector<Word>& messages) {
  if (chR.out_width() != code.decode_in_bits()) {
    throw PreconditionError("decryption error: decoder width mismatch");
  }
  return de_mc_impl(
      0, code.in_bits(), code.out_bits(),
      [&code](Word, Word m) { return code.encode(m); },
      [&code](Word y) { return code.decode(y); }, chR, mc, messages,
      code_params(code, chR));
}

AdvReport decryption_error_mc(const EncryptionFn& e,
                              const std::function<Word(Word)>& decoder,
                              const Channel& chR, McParams mc,
                              const std::vector<Word>& messages) {
  if (!decoder) throw PreconditionError("decryption error: null decoder");
  return de_mc_impl(
      e.coin_bits(), e.message_bits(), e.cipher_bits(),
      [&e](Word r, Word m) { return e.encrypt(r, m); }, decoder, chR, mc,
      messages, enc_params(e, chR));
}

}  // namespace wiretap
