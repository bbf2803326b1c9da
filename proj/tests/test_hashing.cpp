#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <vector>

#include "doctest.h"
#include "wiretap/channels.hpp"
#include "wiretap/hashing.hpp"
#include "wiretap/probcore.hpp"

using namespace wiretap;

namespace {

// Oracle: trial division against every monic polynomial of degree <= d/2.
bool divides(std::uint64_t g, int dg, std::uint64_t f, int df) {
  for (int bit = df; bit >= dg; --bit) {
    if ((f >> bit) & 1) f ^= g << (bit - dg);
  }
  return f == 0;
}

bool irreducible_ref(std::uint64_t f, int d) {
  for (int dg = 1; dg <= d / 2; ++dg) {
    for (std::uint64_t t = 0; t < (std::uint64_t{1} << dg); ++t) {
      if (divides((std::uint64_t{1} << dg) | t, dg, f, d)) return false;
    }
  }
  return true;
}

// First irreducible of degree d in (term count, value) order, low part.
std::uint64_t first_irreducible_low(int d) {
  for (int w = 1; w <= d + 1; ++w) {
    for (std::uint64_t low = 0; low < (std::uint64_t{1} << d); ++low) {
      if (std::popcount(low) != w - 1) continue;
      if (irreducible_ref((std::uint64_t{1} << d) | low, d)) return low;
    }
  }
  return ~std::uint64_t{0};
}

Dist skewed_dist(int width) {
  std::vector<double> p(std::size_t{1} << width);
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) total += double(i + 1);
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = double(i + 1) / total;
  return Dist::bitstrings(width, std::move(p));
}

}  // namespace

TEST_CASE("hand vectors pin the matrix evaluation convention") {
  const HashFamily f42 = HashFamily::matrix(4, 2);
  CHECK(f42.eval(0x84, 0xb) == 0x2);
  CHECK(f42.eval(0x18, 0xa) == 0x1);
  const HashFamily f31 = HashFamily::matrix(3, 1);
  CHECK(f31.eval(0x7, 0x5) == 0x0);
  const HashFamily f22 = HashFamily::matrix(2, 2);
  CHECK(f22.eval(0x9, 0x2) == 0x2);  // identity matrix
  CHECK(f22.eval(0x9, 0x3) == 0x3);
  CHECK(f22.eval(0x0, 0x3) == 0x0);
  const HashFamily f44 = HashFamily::matrix(4, 4);
  CHECK(f44.eval(0x8421, 0xd) == 0xd);
  const HashFamily f41 = HashFamily::matrix(4, 1);
  CHECK(f41.eval(0xf, 0x7) == 0x1);
  const HashFamily wide = HashFamily::matrix(62, 1);
  CHECK(wide.eval(0x1, 0x3) == 0x1);
}

TEST_CASE("hand vectors pin the field multiplication convention") {
  CHECK(HashFamily::gf_mult(1, 1).eval(1, 1) == 1);
  CHECK(HashFamily::gf_mult(2, 2).eval(0x2, 0x3) == 0x1);
  CHECK(HashFamily::gf_mult(3, 2).eval(0x2, 0x6) == 0x3);
  const HashFamily g44 = HashFamily::gf_mult(4, 4);
  CHECK(g44.eval(0x1, 0xb) == 0xb);
  CHECK(g44.eval(0x2, 0x8) == 0x3);
  CHECK(g44.eval(0x6, 0x6) == 0x7);
  CHECK(HashFamily::gf_mult(4, 2).eval(0x6, 0x6) == 0x3);
  const HashFamily g88 = HashFamily::gf_mult(8, 8);
  CHECK(g88.eval(0x53, 0xca) == 0x01);
  CHECK(g88.eval(0x02, 0x87) == 0x15);
  CHECK(HashFamily::gf_mult(8, 4).eval(0x02, 0x87) == 0x5);
}

TEST_CASE("family metadata and descriptions") {
  const HashFamily mx = HashFamily::matrix(6, 2);
  CHECK(mx.kind() == HashKind::kMatrix);
  CHECK(mx.input_bits() == 6);
  CHECK(mx.output_bits() == 2);
  CHECK(mx.key_bits() == 12);
  CHECK(mx.describe() == "mx(6,2)");
  CHECK_THROWS_AS(mx.field_modulus_low(), Error);

  const HashFamily gf = HashFamily::gf_mult(6, 2);
  CHECK(gf.kind() == HashKind::kGfMult);
  CHECK(gf.key_bits() == 6);
  CHECK(gf.describe() == "gf(6,2)");
  CHECK(gf.field_modulus_low() == 0x3);
}

TEST_CASE("construction rejects out-of-range widths") {
  CHECK_THROWS_AS(HashFamily::matrix(0, 1), Error);
  CHECK_THROWS_AS(HashFamily::matrix(1, 0), Error);
  CHECK_THROWS_AS(HashFamily::matrix(8, 8), Error);   // 64-bit key
  CHECK_THROWS_AS(HashFamily::matrix(63, 1), Error);
  CHECK_THROWS_AS(HashFamily::gf_mult(2, 3), Error);  // m > u
  CHECK_THROWS_AS(HashFamily::gf_mult(63, 1), Error);
  CHECK_THROWS_AS(HashFamily::gf_mult(0, 0), Error);
  CHECK_NOTHROW(HashFamily::matrix(62, 1));
  CHECK_NOTHROW(HashFamily::gf_mult(62, 1));
}

TEST_CASE("stray high bits in key or input are ignored") {
  const HashFamily mx = HashFamily::matrix(3, 2);
  const HashFamily gf = HashFamily::gf_mult(5, 3);
  RngStream rng(2024, 7);
  for (int t = 0; t < 200; ++t) {
    const Word k = rng.next_u64();
    const Word x = rng.next_u64();
    CHECK(mx.eval(k, x) == mx.eval(low_bits(k, 6), low_bits(x, 3)));
    CHECK(gf.eval(k, x) == gf.eval(low_bits(k, 5), low_bits(x, 5)));
  }
}

TEST_CASE("both families are linear in the input") {
  const HashFamily mx = HashFamily::matrix(5, 3);
  const HashFamily gf = HashFamily::gf_mult(6, 4);
  RngStream rng(2024, 8);
  for (int t = 0; t < 500; ++t) {
    const Word k = rng.next_u64();
    const Word x1 = rng.bits(6);
    const Word x2 = rng.bits(6);
    CHECK(mx.eval(k, (x1 ^ x2) & word_mask(5)) ==
          (mx.eval(k, x1) ^ mx.eval(k, x2)));
    CHECK(gf.eval(k, x1 ^ x2) == (gf.eval(k, x1) ^ gf.eval(k, x2)));
  }
}

TEST_CASE("field multiplication is linear in the key too") {
  const HashFamily gf = HashFamily::gf_mult(6, 4);
  RngStream rng(2024, 9);
  for (int t = 0; t < 500; ++t) {
    const Word k1 = rng.bits(6);
    const Word k2 = rng.bits(6);
    const Word x = rng.bits(6);
    CHECK(gf.eval(k1 ^ k2, x) == (gf.eval(k1, x) ^ gf.eval(k2, x)));
  }
}

TEST_CASE("full-width field multiplication is a field product") {
  const HashFamily g = HashFamily::gf_mult(4, 4);
  const std::size_t n = 16;
  for (Word a = 0; a < n; ++a) {
    CHECK(g.eval(a, 0) == 0);
    CHECK(g.eval(0, a) == 0);
    CHECK(g.eval(1, a) == a);
    for (Word b = 0; b < n; ++b) {
      CHECK(g.eval(a, b) == g.eval(b, a));
      if (a != 0 && b != 0) CHECK(g.eval(a, b) != 0);  // no zero divisors
      for (Word c = 0; c < n; ++c) {
        CHECK(g.eval(a, g.eval(b, c)) == g.eval(g.eval(a, b), c));
      }
    }
  }
}

TEST_CASE("truncated field hash is the projection of the full product") {
  const HashFamily full = HashFamily::gf_mult(4, 4);
  const HashFamily trunc = HashFamily::gf_mult(4, 2);
  for (Word k = 0; k < 16; ++k) {
    for (Word x = 0; x < 16; ++x) {
      CHECK(trunc.eval(k, x) == low_bits(full.eval(k, x), 2));
    }
  }
}

TEST_CASE("every distinct input pair collides with probability exactly 2^-m") {
  const std::vector<HashFamily> fams = {
      HashFamily::matrix(2, 2), HashFamily::matrix(3, 1),
      HashFamily::matrix(3, 2), HashFamily::matrix(4, 2),
      HashFamily::gf_mult(3, 1), HashFamily::gf_mult(3, 2),
      HashFamily::gf_mult(4, 2), HashFamily::gf_mult(4, 4),
      HashFamily::gf_mult(6, 2)};
  for (const auto& fam : fams) {
    CAPTURE(fam.describe());
    const double expect = std::ldexp(1.0, -fam.output_bits());
    const Word n = Word{1} << fam.input_bits();
    for (Word x1 = 0; x1 < n; ++x1) {
      for (Word x2 = x1 + 1; x2 < n; ++x2) {
        CHECK(collision_prob(fam, x1, x2) == expect);
      }
    }
    CHECK(max_collision_prob(fam) == expect);
  }
}

TEST_CASE("collision probability rejects equal inputs and huge key spaces") {
  CHECK_THROWS_AS(collision_prob(HashFamily::matrix(3, 2), 5, 5), Error);
  CHECK_THROWS_AS(collision_prob(HashFamily::gf_mult(30, 1), 0, 1),
                  SizeCapError);
  CHECK_THROWS_AS(max_collision_prob(HashFamily::gf_mult(30, 1)),
                  SizeCapError);
}

TEST_CASE("matrix kernel size is exactly 2^(h-m) for nonzero inputs") {
  const HashFamily f = HashFamily::matrix(3, 2);
  for (Word x = 1; x < 8; ++x) {
    std::size_t zeros = 0;
    for (Word k = 0; k < (Word{1} << f.key_bits()); ++k) {
      if (f.eval(k, x) == 0) ++zeros;
    }
    CHECK(zeros == (std::size_t{1} << (f.key_bits() - f.output_bits())));
  }
}

TEST_CASE("modulus table matches an independent minimal-polynomial search") {
  for (int d = 1; d <= 14; ++d) {
    CAPTURE(d);
    CHECK(lowest_irreducible_poly_low(d) == first_irreducible_low(d));
  }
  // Known low-weight minimal moduli at the power-of-two degrees.
  CHECK(lowest_irreducible_poly_low(8) == 0x1b);
  CHECK(lowest_irreducible_poly_low(16) == 0x2b);
  CHECK(lowest_irreducible_poly_low(32) == 0x8d);
  CHECK(lowest_irreducible_poly_low(64) == 0x1b);
  for (int d = 1; d <= 64; ++d) CHECK_NOTHROW(lowest_irreducible_poly_low(d));
  CHECK_THROWS_AS(lowest_irreducible_poly_low(0), Error);
  CHECK_THROWS_AS(lowest_irreducible_poly_low(65), Error);
}

TEST_CASE("privacy amplification bound values") {
  CHECK(lhl_bound(2, std::ldexp(1.0, -10)) == 0.03125);
  CHECK(lhl_bound(0, 1.0) == 0.5);
  CHECK(lhl_bound(3, 0.0) == 0.0);
  CHECK_THROWS_AS(lhl_bound(-1, 0.5), Error);
  CHECK_THROWS_AS(lhl_bound(2, 1.5), Error);
  CHECK_THROWS_AS(lhl_bound(2, -0.1), Error);
}

TEST_CASE("exact extraction distance never exceeds the bound") {
  const std::vector<int> us = {4, 6};
  const std::vector<int> ms = {1, 2};
  for (int u : us) {
    const std::vector<Dist> priors = {Dist::uniform_bits(u), skewed_dist(u)};
    const std::vector<Channel> sides = {
        Channel::constant(u), Channel::bsc(0.25, u),
        Channel::parallel(Channel::identity(1), Channel::constant(u - 1))};
    for (int m : ms) {
      const std::vector<HashFamily> fams = {HashFamily::matrix(u, m),
                                            HashFamily::gf_mult(u, m)};
      for (const auto& fam : fams) {
        for (const auto& prior : priors) {
          for (const auto& side : sides) {
            CAPTURE(fam.describe());
            CAPTURE(side.describe());
            const double gp =
                avg_guessing_prob(joint_from_channel(prior, side));
            const double sd = lhl_exact_sd(fam, prior, side);
            CHECK(sd <= lhl_bound(m, gp) + 1e-12);
            CHECK(sd >= 0.0);
          }
        }
      }
    }
  }
}

TEST_CASE("a fully revealing side channel forces distance 1 - 2^-m") {
  for (int m : {1, 2, 3}) {
    const HashFamily mx = HashFamily::matrix(4, m);
    const HashFamily gf = HashFamily::gf_mult(4, m);
    const double expect = 1.0 - std::ldexp(1.0, -m);
    const Channel id = Channel::identity(4);
    CHECK(lhl_exact_sd(mx, Dist::uniform_bits(4), id) ==
          doctest::Approx(expect).epsilon(1e-12));
    CHECK(lhl_exact_sd(gf, skewed_dist(4), id) ==
          doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("full-width field hash of a uniform input: only the zero key leaks") {
  for (int u : {3, 4}) {
    const HashFamily g = HashFamily::gf_mult(u, u);
    const double expect =
        (1.0 - std::ldexp(1.0, -u)) * std::ldexp(1.0, -u);
    const double sd =
        lhl_exact_sd(g, Dist::uniform_bits(u), Channel::constant(u));
    CHECK(sd == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("extraction distance rejects mismatched widths") {
  const HashFamily f = HashFamily::matrix(4, 2);
  CHECK_THROWS_AS(lhl_exact_sd(f, Dist::uniform_bits(3), Channel::constant(4)),
                  Error);
  CHECK_THROWS_AS(lhl_exact_sd(f, Dist::uniform_bits(4), Channel::constant(3)),
                  Error);
}

TEST_CASE("vector file runs clean") {
  const HashVectorReport r =
      run_hash_test_vectors(std::string(WIRETAP_TEST_DATA_DIR) +
                            "/hash_vectors.txt");
  CHECK(r.checked == 20);
  CHECK(r.mismatched == 0);
  CHECK(r.first_mismatch.empty());
}

TEST_CASE("vector file parser flags mismatches and malformed input") {
  const std::string good = "/tmp/wiretap_hash_vec_good.txt";
  {
    std::ofstream out(good);
    out << "# comment only\n\n";
    out << "mx 2 2 9 2 2\n";
    out << "gf 2 2 2 3 2   # wrong on purpose\n";
  }
  const HashVectorReport r = run_hash_test_vectors(good);
  CHECK(r.checked == 2);
  CHECK(r.mismatched == 1);
  CHECK(r.first_mismatch == "line 4");

  const std::string bad = "/tmp/wiretap_hash_vec_bad.txt";
  {
    std::ofstream out(bad);
    out << "mx 2 2 9\n";
  }
  CHECK_THROWS_AS(run_hash_test_vectors(bad), ParseError);

  const std::string unknown = "/tmp/wiretap_hash_vec_kind.txt";
  {
    std::ofstream out(unknown);
    out << "xx 2 2 9 2 2\n";
  }
  CHECK_THROWS_AS(run_hash_test_vectors(unknown), ParseError);
  CHECK_THROWS_AS(run_hash_test_vectors("/tmp/wiretap_no_such_file.txt"),
                  ParseError);
  std::remove(good.c_str());
  std::remove(bad.c_str());
  std::remove(unknown.c_str());
}
