#include "wiretap/xtx.hpp"

#include <cmath>

namespace wiretap {

namespace {

EncryptionFn derive_encryption(const HashFamily& fam, const CodeFn& en1,
                               const CodeFn& en2) {
  if (en1.in_bits() != fam.input_bits()) {
    throw PreconditionError("xtx: en1 must accept the hash input width");
  }
  if (en2.in_bits() != fam.key_bits() + fam.output_bits()) {
    throw PreconditionError("xtx: en2 must accept key plus message width");
  }
  const int h = fam.key_bits();
  const int u = fam.input_bits();
  const int m = fam.output_bits();
  const int n2 = en2.out_bits();
  return EncryptionFn(
      h + u, m, en1.out_bits() + n2,
      [fam, en1, en2, h, u, m, n2](Word coins, Word msg) {
        const Word key = coins >> u;
        const Word source = low_bits(coins, u);
        const Word masked = fam.eval(key, source) ^ msg;
        const Word body = concat_bits(key, masked, m);
        return concat_bits(en1.encode(source), en2.encode(body), n2);
      },
      "xtx(" + fam.describe() + "," + en1.describe() + "," + en2.describe() +
          ")");
}

}  // namespace

XtXScheme::XtXScheme(HashFamily fam, CodeFn en1, CodeFn en2)
    : fam_(std::move(fam)),
      en1_(std::move(en1)),
      en2_(std::move(en2)),
      enc_(derive_encryption(fam_, en1_, en2_)) {}

XtXScheme build_xtx(const HashFamily& fam, const CodeFn& en1,
                    const CodeFn& en2) {
  return XtXScheme(fam, en1, en2);
}

EncryptionFn XtXScheme::with_fixed_key(Word key) const {
  const HashFamily fam = fam_;
  const CodeFn en1 = en1_;
  const CodeFn en2 = en2_;
  const Word pinned = low_bits(key, fam.key_bits());
  const int u = fam.input_bits();
  const int m = fam.output_bits();
  const int n2 = en2.out_bits();
  return EncryptionFn(
      u, m, cipher_bits(),
      [fam, en1, en2, pinned, m, n2](Word coins, Word msg) {
        const Word masked = fam.eval(pinned, coins) ^ msg;
        const Word body = concat_bits(pinned, masked, m);
        return concat_bits(en1.encode(coins), en2.encode(body), n2);
      },
      "xtx-fixed-key(" + fam.describe() + "," + en1.describe() + "," +
          en2.describe() + ")");
}

Word xtx_decrypt(const XtXScheme& scheme, Word received) {
  const int d2 = scheme.en2().decode_in_bits();
  const Word source = scheme.en1().decode(received >> d2);
  const Word body = scheme.en2().decode(low_bits(received, d2));
  const int m = scheme.message_bits();
  const Word key = body >> m;
  const Word masked = low_bits(body, m);
  return scheme.family().eval(key, source) ^ masked;
}

double ds_bound_generic(int m, double rsr) {
  if (m < 0) throw PreconditionError("ds bound: negative message width");
  if (!(rsr >= 0.0 && rsr <= 1.0)) {
    throw PreconditionError("ds bound: recovery advantage outside [0, 1]");
  }
  return std::sqrt(std::ldexp(rsr, m));
}

double ds_bound_bsc_noiseless_receiver(int m, int u, double p) {
  if (u < 0) throw PreconditionError("ds bound: negative source width");
  if (!(p >= 0.0 && p <= 0.5)) {
    throw PreconditionError("ds bound: crossover outside [0, 1/2]");
  }
  return ds_bound_generic(m, std::pow(1.0 - p, u));
}

double ds_bound_bsc_noisy_receiver(int m, int u, int r, double p) {
  if (r < 0) throw PreconditionError("ds bound: negative redundancy width");
  if (u < 0) throw PreconditionError("ds bound: negative source width");
  if (!(p >= 0.0 && p <= 0.5)) {
    throw PreconditionError("ds bound: crossover outside [0, 1/2]");
  }
  return std::sqrt(std::ldexp(std::pow(1.0 - p, u + r), m + r));
}

double rsr_systematic_reduction(int r, double rsr_id) {
  if (r < 0) throw PreconditionError("rsr bound: negative redundancy width");
  if (!(rsr_id >= 0.0 && rsr_id <= 1.0)) {
    throw PreconditionError("rsr bound: recovery advantage outside [0, 1]");
  }
  return std::ldexp(rsr_id, r);
}

nlohmann::json DesignSpec::to_json() const {
  return nlohmann::json{{"m", m},
                        {"s", s},
                        {"p", p},
                        {"alpha", alpha},
                        {"u", u},
                        {"rate", rate},
                        {"rate2", rate2},
                        {"rate_limit", rate_limit},
                        {"rate2_limit", rate2_limit},
                        {"bound_ds", bound_ds}};
}

DesignSpec design_u(int m, int s, double p) {
  if (m < 1) throw PreconditionError("design: message width must be positive");
  if (s < 1) throw PreconditionError("design: target bits must be positive");
  if (p == 0.0) {
    throw PreconditionError(
        "design: a noiseless adversary channel buys no security per source "
        "bit; crossover must be positive");
  }
  if (!(p > 0.0 && p <= 0.5)) {
    throw PreconditionError("design: crossover outside (0, 1/2]");
  }
  DesignSpec spec;
  spec.m = m;
  spec.s = s;
  spec.p = p;
  spec.alpha = -std::log2(1.0 - p);
  spec.u = int(std::ceil((2.0 * s + m) / spec.alpha));
  spec.rate = double(m) / (double(spec.u) + m);
  spec.rate2 = double(m) / spec.u;
  spec.rate_limit = spec.alpha / (1.0 + spec.alpha);
  spec.rate2_limit = spec.alpha;
  spec.bound_ds = ds_bound_bsc_noiseless_receiver(m, spec.u, p);
  return spec;
}

std::vector<RateRow> rate_table(const std::vector<double>& ps) {
  std::vector<RateRow> rows;
  rows.reserve(ps.size());
  for (double p : ps) {
    if (!(p > 0.0 && p <= 0.5)) {
      throw PreconditionError("rate table: crossover outside (0, 1/2]");
    }
    RateRow row;
    row.p = p;
    row.alpha = -std::log2(1.0 - p);
    row.rate_limit = row.alpha / (1.0 + row.alpha);
    row.rate2_limit = row.alpha;
    rows.push_back(row);
  }
  return rows;
}

double round2_half_up(double x) {
  return std::floor(x * 100.0 + 0.5) / 100.0;
}

}  // namespace wiretap
