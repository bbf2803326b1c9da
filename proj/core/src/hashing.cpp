#include "wiretap/hashing.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <mutex>
#include <sstream>

namespace wiretap {

namespace {

// Lowest-weight, lexicographically least irreducible polynomial of each
// degree 1..64, leading term stripped. Generated by exhaustive search in
// (weight, value) order with a Rabin irreducibility test.
constexpr std::array<Word, 64> kIrreduciblePolyLow = {
    0x0,   0x3,  0x3,  0x3,  0x5,  0x3,        0x3,  0x1b, 0x3,  0x9,  0x5,
    0x9,   0x1b, 0x21, 0x3,  0x2b, 0x9,        0x9,  0x27, 0x9,  0x5,  0x3,
    0x21,  0x1b, 0x9,  0x1b, 0x27, 0x3,        0x5,  0x3,  0x9,  0x8d, 0x401,
    0x81,  0x5,  0x201, 0x53, 0x63, 0x11,      0x39, 0x9,  0x81, 0x59, 0x21,
    0x1b,  0x3,  0x21, 0x2d, 0x201, 0x1d,      0x4b, 0x9,  0x47, 0x201, 0x81,
    0x95,  0x11, 0x80001, 0x95, 0x3,           0x27, 0x20000001, 0x3, 0x1b};

using U128 = unsigned __int128;

U128 full_modulus(int degree, Word low) {
  return (U128{1} << degree) | U128{low};
}

// Carry-less product of two polynomials of degree < 64.
U128 clmul(Word a, Word b) {
  U128 r = 0;
  while (a) {
    const int i = std::countr_zero(a);
    r ^= U128{b} << i;
    a &= a - 1;
  }
  return r;
}

Word poly_mod(U128 v, int degree, Word low) {
  const U128 f = full_modulus(degree, low);
  for (int bit = 127; bit >= degree; --bit) {
    if ((v >> bit) & 1) v ^= f << (bit - degree);
  }
  return static_cast<Word>(v & ((degree >= 64) ? ~U128{0} : ((U128{1} << degree) - 1)));
}

// Divisor sweep: no monic divisor of degree 1..degree/2 divides f.
bool irreducible_by_division(int degree, Word low) {
  const U128 f = full_modulus(degree, low);
  for (int d = 1; d <= degree / 2; ++d) {
    for (Word tail = 0; tail < (Word{1} << d); ++tail) {
      const U128 g = (U128{1} << d) | U128{tail};
      // remainder of f mod g
      U128 r = f;
      const int dg = d;
      for (int bit = degree; bit >= dg; --bit) {
        if ((r >> bit) & 1) r ^= g << (bit - dg);
      }
      if (r == 0) return false;
    }
  }
  return true;
}

void verify_table_entry(int degree) {
  // One-time exhaustive certification for the degrees small enough to sweep.
  static std::array<std::once_flag, 32> flags;
  if (degree > 32) return;
  std::call_once(flags[degree - 1], [degree] {
    if (!irreducible_by_division(degree, kIrreduciblePolyLow[degree - 1])) {
      throw Error("field modulus table entry fails certification at degree " +
                  std::to_string(degree));
    }
  });
}

}  // namespace

Word lowest_irreducible_poly_low(int degree) {
  if (degree < 1 || degree > 64) {
    throw PreconditionError("field modulus: degree outside 1..64");
  }
  verify_table_entry(degree);
  return kIrreduciblePolyLow[degree - 1];
}

HashFamily HashFamily::matrix(int u, int m) {
  if (u < 1 || m < 1) throw PreconditionError("hash: widths must be positive");
  if (u > 62 || m > 62 || u * m > 62) {
    throw PreconditionError("hash: matrix key exceeds the word size");
  }
  HashFamily f;
  f.kind_ = HashKind::kMatrix;
  f.u_ = u;
  f.m_ = m;
  f.h_ = u * m;
  return f;
}

HashFamily HashFamily::gf_mult(int u, int m) {
  if (u < 1 || m < 1) throw PreconditionError("hash: widths must be positive");
  if (m > u) throw PreconditionError("hash: gf-mult needs m <= u");
  if (u > 62) throw PreconditionError("hash: gf-mult input exceeds the word size");
  HashFamily f;
  f.kind_ = HashKind::kGfMult;
  f.u_ = u;
  f.m_ = m;
  f.h_ = u;
  f.modulus_low_ = lowest_irreducible_poly_low(u);
  return f;
}

Word HashFamily::field_modulus_low() const {
  if (kind_ != HashKind::kGfMult) throw PreconditionError("hash: no field modulus");
  return modulus_low_;
}

Word HashFamily::eval(Word key, Word input) const {
  key = low_bits(key, h_);
  input = low_bits(input, u_);
  if (kind_ == HashKind::kMatrix) {
    Word out = 0;
    for (int i = 0; i < m_; ++i) {
      const Word row = (key >> (u_ * (m_ - 1 - i))) & word_mask(u_);
      out = (out << 1) | Word(parity64(row & input));
    }
    return out;
  }
  const Word prod = poly_mod(clmul(key, input), u_, modulus_low_);
  return low_bits(prod, m_);
}

std::string HashFamily::describe() const {
  const char* k = kind_ == HashKind::kMatrix ? "mx" : "gf";
  return std::string(k) + "(" + std::to_string(u_) + "," + std::to_string(m_) +
         ")";
}

double collision_prob(const HashFamily& fam, Word x1, Word x2) {
  if (fam.key_bits() > 62) throw SizeCapError("collision_prob: key space");
  const std::size_t keys = std::size_t{1} << fam.key_bits();
  check_enum_cap(keys, "collision_prob");
  x1 = low_bits(x1, fam.input_bits());
  x2 = low_bits(x2, fam.input_bits());
  if (x1 == x2) throw PreconditionError("collision_prob: inputs must differ");
  std::size_t hits = 0;
  for (Word k = 0; k < keys; ++k) {
    if (fam.eval(k, x1) == fam.eval(k, x2)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(keys);
}

double max_collision_prob(const HashFamily& fam) {
  if (fam.key_bits() > 62 || fam.input_bits() > 62) {
    throw SizeCapError("max_collision_prob: alphabet");
  }
  const std::size_t keys = std::size_t{1} << fam.key_bits();
  const std::size_t inputs = std::size_t{1} << fam.input_bits();
  check_enum_cap(keys, "max_collision_prob keys");
  check_enum_cap(inputs, "max_collision_prob inputs");
  const double work = 0.5 * double(inputs) * double(inputs - 1) * double(keys);
  if (work > double(std::uint64_t{1} << 33)) {
    throw SizeCapError("max_collision_prob: pair*key enumeration too large");
  }
  double best = 0.0;
  for (Word x1 = 0; x1 + 1 < inputs; ++x1) {
    for (Word x2 = x1 + 1; x2 < inputs; ++x2) {
      std::size_t hits = 0;
      for (Word k = 0; k < keys; ++k) {
        if (fam.eval(k, x1) == fam.eval(k, x2)) ++hits;
      }
      best = std::max(best, double(hits) / double(keys));
    }
  }
  return best;
}

double lhl_bound(int m, double gp) {
  if (m < 0) throw PreconditionError("lhl_bound: negative output width");
  if (!(gp >= 0.0 && gp <= 1.0)) throw PreconditionError("lhl_bound: gp outside [0,1]");
  return 0.5 * std::sqrt(std::ldexp(gp, m));
}

double lhl_exact_sd(const HashFamily& fam, const Dist& u_dist,
                    const Channel& side) {
  if (u_dist.width != fam.input_bits()) {
    throw PreconditionError("lhl_exact_sd: input law width mismatch");
  }
  if (side.in_width() != fam.input_bits()) {
    throw PreconditionError("lhl_exact_sd: side channel width mismatch");
  }
  if (fam.key_bits() > 62) throw SizeCapError("lhl_exact_sd: key space");
  const std::size_t keys = std::size_t{1} << fam.key_bits();
  const std::size_t zs = side.out_size();
  const std::size_t ys = std::size_t{1} << fam.output_bits();
  check_enum_cap(keys, "lhl_exact_sd keys");
  check_enum_cap(zs * ys, "lhl_exact_sd joint");

  // J(u, z) = P(u) W[u, z], shared across keys.
  const JointDist j = joint_from_channel(u_dist, side);
  const Dist pz = j.col_marginal();

  const double y_uniform = std::ldexp(1.0, -fam.output_bits());
  std::vector<double> law(zs * ys);
  double total = 0.0;
  for (Word k = 0; k < keys; ++k) {
    std::fill(law.begin(), law.end(), 0.0);
    for (std::size_t u = 0; u < u_dist.size(); ++u) {
      const Word y = fam.eval(k, u);
      for (std::size_t z = 0; z < zs; ++z) law[z * ys + y] += j.at(u, z);
    }
    for (std::size_t z = 0; z < zs; ++z) {
      for (std::size_t y = 0; y < ys; ++y) {
        total += std::abs(law[z * ys + y] - pz.p[z] * y_uniform);
      }
    }
  }
  return 0.5 * total / static_cast<double>(keys);
}

HashVectorReport run_hash_test_vectors(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("hash vectors: cannot open " + path);
  HashVectorReport report;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash_pos = line.find('#');
    if (hash_pos != std::string::npos) line.erase(hash_pos);
    std::istringstream ss(line);
    std::string kind;
    if (!(ss >> kind)) continue;  // blank
    int u = 0, m = 0;
    std::string key_hex, in_hex, out_hex;
    if (!(ss >> u >> m >> key_hex >> in_hex >> out_hex)) {
      throw ParseError("hash vectors: malformed line " + std::to_string(lineno));
    }
    HashFamily fam = kind == "mx"   ? HashFamily::matrix(u, m)
                     : kind == "gf" ? HashFamily::gf_mult(u, m)
                                    : throw ParseError(
                                          "hash vectors: unknown kind '" +
                                          kind + "' on line " +
                                          std::to_string(lineno));
    const Word key = std::stoull(key_hex, nullptr, 16);
    const Word input = std::stoull(in_hex, nullptr, 16);
    const Word expect = std::stoull(out_hex, nullptr, 16);
    ++report.checked;
    if (fam.eval(key, input) != expect) {
      ++report.mismatched;
      if (report.first_mismatch.empty()) {
        report.first_mismatch = "line " + std::to_string(lineno);
      }
    }
  }
  return report;
}

}  // namespace wiretap
