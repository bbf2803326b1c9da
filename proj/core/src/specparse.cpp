#include "wiretap/specparse.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace wiretap {
namespace {

class Cursor {
 public:
  Cursor(const std::string& text, const char* what)
      : text_(text), what_(what) {}

  [[noreturn]] void fail(std::size_t at, const std::string& msg) const {
    throw ParseError(std::string(what_) + ": " + msg + " at position " +
                     std::to_string(at));
  }

  [[noreturn]] void fail_here(const std::string& msg) {
    skip_ws();
    fail(pos_, msg);
  }

  std::size_t save() {
    skip_ws();
    return pos_;
  }

  bool consume(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!consume(c)) fail_here(std::string("expected '") + c + "'");
  }

  std::string ident() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_')) {
      ++pos_;
    }
    if (pos_ == start) fail(start, "expected a name");
    return text_.substr(start, pos_ - start);
  }

  int integer(const char* what, long long lo, long long hi) {
    skip_ws();
    long long value = 0;
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr == first) {
      fail(pos_, std::string("expected an integer ") + what);
    }
    if (value < lo || value > hi) {
      fail(pos_, std::string(what) + " outside " + std::to_string(lo) + ".." +
                     std::to_string(hi));
    }
    pos_ = std::size_t(ptr - text_.data());
    return int(value);
  }

  double real(const char* what) {
    skip_ws();
    double value = 0.0;
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr == first) {
      fail(pos_, std::string("expected a number ") + what);
    }
    pos_ = std::size_t(ptr - text_.data());
    return value;
  }

  // Raw argument running to the next ')', trailing whitespace trimmed.
  std::string path() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != ')') ++pos_;
    if (pos_ == text_.size()) fail(start, "unterminated path, expected ')'");
    std::size_t end = pos_;
    while (end > start &&
           std::isspace(static_cast<unsigned char>(text_[end - 1]))) {
      --end;
    }
    if (end == start) fail(start, "expected a file path");
    return text_.substr(start, end - start);
  }

  void finish() {
    skip_ws();
    if (pos_ != text_.size()) fail(pos_, "unexpected trailing characters");
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  const std::string& text_;
  const char* what_;
  std::size_t pos_ = 0;
};

Channel channel_expr(Cursor& c) {
  const std::size_t at = c.save();
  const std::string name = c.ident();
  if (name == "bsc") {
    c.expect('(');
    const double p = c.real("for the crossover");
    c.expect(')');
    int width = 1;
    if (c.consume('^')) width = c.integer("copy count", 1, 62);
    return Channel::bsc(p, width);
  }
  Channel ch = [&]() -> Channel {
    if (name == "id") {
      c.expect('(');
      const int n = c.integer("width", 0, 62);
      c.expect(')');
      return Channel::identity(n);
    }
    if (name == "const") {
      c.expect('(');
      const int n = c.integer("width", 0, 62);
      c.expect(')');
      return Channel::constant(n);
    }
    if (name == "par") {
      c.expect('(');
      Channel left = channel_expr(c);
      c.expect(',');
      Channel right = channel_expr(c);
      c.expect(')');
      return Channel::parallel(left, right);
    }
    if (name == "comp") {
      c.expect('(');
      Channel outer = channel_expr(c);
      c.expect(',');
      Channel inner = channel_expr(c);
      c.expect(')');
      return Channel::compose(outer, inner);
    }
    if (name == "matrix") {
      c.expect('(');
      const std::string file = c.path();
      c.expect(')');
      return load_channel_matrix(file);
    }
    c.fail(at, "unknown channel '" + name + "'");
  }();
  if (c.consume('^')) {
    const int k = c.integer("copy count", 1, 62);
    Channel folded = ch;
    for (int i = 1; i < k; ++i) folded = Channel::parallel(folded, ch);
    return folded;
  }
  return ch;
}

CodeFn code_expr(Cursor& c) {
  const std::size_t at = c.save();
  const std::string name = c.ident();
  if (name == "rep") {
    c.expect('(');
    const int n = c.integer("repetition count", 1, 62);
    if (c.consume(',')) {
      const int w = c.integer("width", 1, 62);
      c.expect(')');
      return block_repetition_code(n, w);
    }
    c.expect(')');
    return repetition_code(n);
  }
  if (name == "id") {
    c.expect('(');
    const int n = c.integer("width", 1, 62);
    c.expect(')');
    return identity_code(n);
  }
  if (name == "sys") {
    c.expect('(');
    const std::size_t kind_at = c.save();
    const std::string kind = c.ident();
    if (kind != "parity") {
      c.fail(kind_at, "unknown redundancy '" + kind + "' (only parity)");
    }
    c.expect(',');
    const int u = c.integer("width", 1, 61);
    c.expect(')');
    return make_systematic(
               u, 1, [](Word x) { return Word(parity64(x)); },
               "sys(parity," + std::to_string(u) + ")")
        .code();
  }
  if (name == "genmatrix") {
    c.expect('(');
    const std::string file = c.path();
    c.expect(')');
    return load_generator_matrix(file);
  }
  c.fail(at, "unknown code '" + name + "'");
}

HashFamily hash_expr(Cursor& c) {
  const std::size_t at = c.save();
  const std::string name = c.ident();
  const bool is_matrix = name == "mx";
  if (!is_matrix && name != "gf") {
    c.fail(at, "unknown hash family '" + name + "'");
  }
  c.expect('(');
  const int u = c.integer("input width", 1, 62);
  c.expect(',');
  const int m = c.integer("output width", 1, 62);
  c.expect(')');
  return is_matrix ? HashFamily::matrix(u, m) : HashFamily::gf_mult(u, m);
}

}  // namespace

Channel parse_channel(const std::string& text) {
  Cursor c(text, "channel spec");
  Channel ch = channel_expr(c);
  c.finish();
  return ch;
}

CodeFn parse_code(const std::string& text) {
  Cursor c(text, "code spec");
  CodeFn code = code_expr(c);
  c.finish();
  return code;
}

HashFamily parse_hash(const std::string& text) {
  Cursor c(text, "hash spec");
  HashFamily fam = hash_expr(c);
  c.finish();
  return fam;
}

XtXScheme parse_scheme(const std::string& text) {
  Cursor c(text, "scheme spec");
  const std::size_t at = c.save();
  const std::string name = c.ident();
  if (name != "xtx") c.fail(at, "unknown scheme '" + name + "'");
  c.expect('(');
  std::optional<HashFamily> fam;
  std::optional<CodeFn> en1;
  std::optional<CodeFn> en2;
  do {
    const std::size_t key_at = c.save();
    const std::string key = c.ident();
    c.expect('=');
    if (key == "hash") {
      if (fam) c.fail(key_at, "duplicate key 'hash'");
      fam = hash_expr(c);
    } else if (key == "en1") {
      if (en1) c.fail(key_at, "duplicate key 'en1'");
      en1 = code_expr(c);
    } else if (key == "en2") {
      if (en2) c.fail(key_at, "duplicate key 'en2'");
      en2 = code_expr(c);
    } else {
      c.fail(key_at, "unknown key '" + key + "' (expected hash, en1, en2)");
    }
  } while (c.consume(','));
  c.expect(')');
  c.finish();
  if (!fam) throw ParseError("scheme spec: missing key 'hash'");
  if (!en1) throw ParseError("scheme spec: missing key 'en1'");
  if (!en2) throw ParseError("scheme spec: missing key 'en2'");
  return build_xtx(*fam, *en1, *en2);
}

Channel load_channel_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("matrix file '" + path + "': cannot open");
  long long rows = 0, cols = 0;
  int in_width = 0, out_width = 0;
  if (!(in >> rows >> cols >> in_width >> out_width)) {
    throw ParseError("matrix file '" + path +
                     "': header must be rows cols in_width out_width");
  }
  if (in_width < 0 || in_width > 20 || out_width < 0 || out_width > 20) {
    throw ParseError("matrix file '" + path + "': widths outside 0..20");
  }
  if (rows != (1LL << in_width) || cols != (1LL << out_width)) {
    throw ParseError("matrix file '" + path +
                     "': rows/cols must be 2^in_width and 2^out_width");
  }
  std::vector<double> entries(std::size_t(rows * cols));
  for (auto& x : entries) {
    if (!(in >> x)) {
      throw ParseError("matrix file '" + path + "': expected " +
                       std::to_string(entries.size()) + " probabilities");
    }
    if (!(x >= 0.0) || x > 1.0) {
      throw ParseError("matrix file '" + path +
                       "': entries must lie in [0, 1]");
    }
  }
  std::string extra;
  if (in >> extra) {
    throw ParseError("matrix file '" + path + "': unexpected trailing data");
  }
  for (long long r = 0; r < rows; ++r) {
    double total = 0.0;
    for (long long k = 0; k < cols; ++k) total += entries[r * cols + k];
    if (std::abs(total - 1.0) > 1e-9) {
      throw ParseError("matrix file '" + path + "': row " + std::to_string(r) +
                       " sums to " + std::to_string(total));
    }
  }
  return Channel::matrix(in_width, out_width, std::move(entries),
                         "matrix(" + path + ")");
}

CodeFn load_generator_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("generator file '" + path + "': cannot open");
  long long rows = 0, cols = 0;
  if (!(in >> rows >> cols)) {
    throw ParseError("generator file '" + path +
                     "': header must be rows cols");
  }
  if (rows < 1 || cols < 1 || rows > 62 || cols > 62 || rows > cols) {
    throw ParseError("generator file '" + path +
                     "': need 1 <= rows <= cols <= 62");
  }
  std::vector<Word> words;
  words.reserve(std::size_t(rows));
  for (long long r = 0; r < rows; ++r) {
    std::string bits;
    if (!(in >> bits)) {
      throw ParseError("generator file '" + path + "': expected " +
                       std::to_string(rows) + " rows");
    }
    if (static_cast<long long>(bits.size()) != cols) {
      throw ParseError("generator file '" + path + "': row " +
                       std::to_string(r) + " must have " +
                       std::to_string(cols) + " bits");
    }
    Word w = 0;
    for (char ch : bits) {
      if (ch != '0' && ch != '1') {
        throw ParseError("generator file '" + path + "': row " +
                         std::to_string(r) + " has a character besides 0/1");
      }
      w = (w << 1) | Word(ch - '0');
    }
    words.push_back(w);
  }
  std::string extra;
  if (in >> extra) {
    throw ParseError("generator file '" + path +
                     "': unexpected trailing data");
  }
  return generator_matrix_code(int(rows), int(cols), words,
                               "genmatrix(" + path + ")");
}

}  // namespace wiretap
