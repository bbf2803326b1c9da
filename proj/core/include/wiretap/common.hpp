#pragma once

#include <atomic>
#include <bit>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

// Conventions used throughout the library:
//  - A bitstring of width w lives in the low w bits of a Word. The string's
//    first bit is the most significant of those w bits, so lexicographic
//    order on equal-width strings coincides with numeric order.
//  - concat(a, wa, b, wb) places a in the high bits: (a << wb) | b.
//  - Widths are limited to 63 bits so any concatenation fits in a Word.

namespace wiretap {

using Word = std::uint64_t;

inline constexpr Word word_mask(int width) {
  return width >= 64 ? ~Word{0} : (Word{1} << width) - 1;
}

inline constexpr Word concat_bits(Word hi, Word lo, int lo_width) {
  return (hi << lo_width) | (lo & word_mask(lo_width));
}

inline constexpr Word high_bits(Word x, int total_width, int take) {
  return (x >> (total_width - take)) & word_mask(take);
}

inline constexpr Word low_bits(Word x, int take) { return x & word_mask(take); }

inline constexpr int hamming(Word a, Word b) { return std::popcount(a ^ b); }

inline constexpr int parity64(Word x) { return std::popcount(x) & 1; }

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exact enumeration was asked for on a state space beyond the configured cap.
class SizeCapError : public Error {
 public:
  using Error::Error;
};

// Exact evaluation requested on an object that only supports sampling.
class ExactModeUnavailable : public Error {
 public:
  using Error::Error;
};

// A guarded implication's hypothesis does not hold; distinct from a failure.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Malformed spec string or data file.
class ParseError : public Error {
 public:
  using Error::Error;
};

// An iterative solver hit its iteration cap before meeting tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Global cap on exact-enumeration state (number of outcomes a single
// enumeration may touch). Overridable via set_enum_cap; the CLI wires the
// WIRETAP_SIZE_CAP environment variable and --cap through here.
inline std::atomic<std::uint64_t>& enum_cap_storage() {
  static std::atomic<std::uint64_t> cap{std::uint64_t{1} << 20};
  return cap;
}

inline std::uint64_t enum_cap() { return enum_cap_storage().load(); }
inline void set_enum_cap(std::uint64_t cap) { enum_cap_storage().store(cap); }

inline void check_enum_cap(std::uint64_t need, const std::string& what) {
  if (need > enum_cap()) {
    throw SizeCapError(what + ": needs " + std::to_string(need) +
                       " states, cap is " + std::to_string(enum_cap()));
  }
}

// Temporarily overrides the enumeration cap (tests use this).
class EnumCapGuard {
 public:
  explicit EnumCapGuard(std::uint64_t cap) : saved_(enum_cap()) {
    set_enum_cap(cap);
  }
  ~EnumCapGuard() { set_enum_cap(saved_); }
  EnumCapGuard(const EnumCapGuard&) = delete;
  EnumCapGuard& operator=(const EnumCapGuard&) = delete;

 private:
  std::uint64_t saved_;
};

// Deterministic random stream. (seed, stream) fully determines the output
// sequence on every platform: mt19937_64's output is standard-mandated and
// all derived draws below avoid implementation-defined distributions.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream),
                      static_cast<std::uint32_t>(stream >> 32)};
    eng_.seed(seq);
  }

  std::uint64_t next_u64() { return eng_(); }

  // Uniform in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  int next_bit() { return static_cast<int>(eng_() >> 63); }

  bool bernoulli(double p) { return next_double() < p; }

  // Uniform in [0, n) by rejection; unbiased.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw Error("RngStream::below: empty range");
    if ((n & (n - 1)) == 0) return eng_() & (n - 1);
    const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % n;
    for (;;) {
      std::uint64_t x = eng_();
      if (x < limit) return x % n;
    }
  }

  Word bits(int width) {
    if (width == 0) return 0;
    return eng_() >> (64 - width);
  }

 private:
  std::mt19937_64 eng_;
};

inline constexpr const char* kLibraryVersion = "0.1.0";

}  // namespace wiretap
