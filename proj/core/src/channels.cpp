#include "wiretap/channels.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace wiretap {

struct Channel::Impl {
  int in_w = 0;
  int out_w = 0;
  bool exact = true;
  std::string desc;

  virtual ~Impl() = default;
  virtual void accumulate_row(Word x, double weight, double* acc) const = 0;
  virtual double transition_prob(Word x, Word y) const;
  virtual Word sample(Word x, RngStream& rng) const = 0;
};

namespace {

void require_exact(const Channel::Impl& impl, const char* op) {
  if (!impl.exact) {
    throw ExactModeUnavailable(std::string(op) +
                               ": channel is sampler-only (" + impl.desc + ")");
  }
}

struct BscImpl final : Channel::Impl {
  double p;

  void accumulate_row(Word x, double weight, double* acc) const override {
    // W[x, y] depends only on the Hamming distance; one table per call.
    double pw[65], qw[65];
    pw[0] = qw[0] = 1.0;
    for (int d = 1; d <= out_w; ++d) {
      pw[d] = pw[d - 1] * p;
      qw[d] = qw[d - 1] * (1.0 - p);
    }
    double tab[65];
    for (int d = 0; d <= out_w; ++d) tab[d] = weight * pw[d] * qw[out_w - d];
    const std::size_t n = std::size_t{1} << out_w;
    for (std::size_t y = 0; y < n; ++y) {
      acc[y] += tab[hamming(x, y)];
    }
  }

  double transition_prob(Word x, Word y) const override {
    const int d = hamming(low_bits(x, in_w), low_bits(y, out_w));
    double v = 1.0;
    for (int i = 0; i < d; ++i) v *= p;
    for (int i = d; i < out_w; ++i) v *= (1.0 - p);
    return v;
  }

  Word sample(Word x, RngStream& rng) const override {
    Word e = 0;
    for (int i = 0; i < out_w; ++i) {
      e = (e << 1) | Word(rng.bernoulli(p) ? 1 : 0);
    }
    return x ^ e;
  }
};

struct IdentityImpl final : Channel::Impl {
  void accumulate_row(Word x, double weight, double* acc) const override {
    acc[x] += weight;
  }
  double transition_prob(Word x, Word y) const override {
    return x == y ? 1.0 : 0.0;
  }
  Word sample(Word x, RngStream&) const override { return x; }
};

struct MatrixImpl final : Channel::Impl {
  std::vector<double> w;  // row-major, 2^in_w rows of 2^out_w

  void accumulate_row(Word x, double weight, double* acc) const override {
    const std::size_t n = std::size_t{1} << out_w;
    const double* row = w.data() + x * n;
    for (std::size_t y = 0; y < n; ++y) acc[y] += weight * row[y];
  }
  double transition_prob(Word x, Word y) const override {
    return w[(x << out_w) | y];
  }
  Word sample(Word x, RngStream& rng) const override {
    const std::size_t n = std::size_t{1} << out_w;
    const double* row = w.data() + x * n;
    double u = rng.next_double();
    double cum = 0.0;
    for (std::size_t y = 0; y < n; ++y) {
      cum += row[y];
      if (u < cum) return y;
    }
    return n - 1;  // guard against accumulated rounding
  }
};

struct ParallelImpl final : Channel::Impl {
  Channel left, right;

  ParallelImpl(Channel l, Channel r) : left(std::move(l)), right(std::move(r)) {}

  void accumulate_row(Word x, double weight, double* acc) const override {
    const Word xl = x >> right.in_width();
    const Word xr = low_bits(x, right.in_width());
    const std::vector<double> rl = left.row(xl);
    const std::vector<double> rr = right.row(xr);
    const int wr = right.out_width();
    for (std::size_t yl = 0; yl < rl.size(); ++yl) {
      if (rl[yl] == 0.0) continue;
      const double v = weight * rl[yl];
      double* slice = acc + (yl << wr);
      for (std::size_t yr = 0; yr < rr.size(); ++yr) slice[yr] += v * rr[yr];
    }
  }
  double transition_prob(Word x, Word y) const override {
    const Word xl = x >> right.in_width();
    const Word xr = low_bits(x, right.in_width());
    const Word yl = y >> right.out_width();
    const Word yr = low_bits(y, right.out_width());
    return left.transition_prob(xl, yl) * right.transition_prob(xr, yr);
  }
  Word sample(Word x, RngStream& rng) const override {
    const Word xl = x >> right.in_width();
    const Word xr = low_bits(x, right.in_width());
    return concat_bits(left.sample(xl, rng), right.sample(xr, rng),
                       right.out_width());
  }
};

struct ComposedImpl final : Channel::Impl {
  Channel outer, inner;

  ComposedImpl(Channel o, Channel i) : outer(std::move(o)), inner(std::move(i)) {}

  void accumulate_row(Word x, double weight, double* acc) const override {
    const std::vector<double> mid = inner.row(x);
    for (std::size_t y = 0; y < mid.size(); ++y) {
      if (mid[y] == 0.0) continue;
      outer.accumulate_row(y, weight * mid[y], acc);
    }
  }
  double transition_prob(Word x, Word z) const override {
    // Costs a full output row of the outer channel per query.
    const std::vector<double> mid = inner.row(x);
    double s = 0.0;
    for (std::size_t y = 0; y < mid.size(); ++y) {
      if (mid[y] == 0.0) continue;
      s += mid[y] * outer.transition_prob(y, z);
    }
    return s;
  }
  Word sample(Word x, RngStream& rng) const override {
    return outer.sample(inner.sample(x, rng), rng);
  }
};

struct SamplerImpl final : Channel::Impl {
  std::function<Word(Word, RngStream&)> fn;

  void accumulate_row(Word, double, double*) const override {
    require_exact(*this, "accumulate_row");
  }
  double transition_prob(Word, Word) const override {
    require_exact(*this, "transition_prob");
    return 0.0;
  }
  Word sample(Word x, RngStream& rng) const override {
    return low_bits(fn(low_bits(x, in_w), rng), out_w);
  }
};

void check_width(int w, const char* what) {
  if (w < 0 || w > 62) throw PreconditionError(std::string(what) + ": width out of range");
}

}  // namespace

double Channel::Impl::transition_prob(Word x, Word y) const {
  // Default: read one entry off an accumulated row.
  std::vector<double> acc(std::size_t{1} << out_w, 0.0);
  accumulate_row(x, 1.0, acc.data());
  return acc[y];
}

Channel Channel::bsc(double p, int width) {
  if (!(p >= 0.0 && p <= 0.5)) {
    throw PreconditionError("bsc: crossover must lie in [0, 1/2]");
  }
  if (width < 1) throw PreconditionError("bsc: width must be positive");
  check_width(width, "bsc");
  auto impl = std::make_shared<BscImpl>();
  impl->in_w = impl->out_w = width;
  impl->p = p;
  std::ostringstream label;  // default precision trims trailing zeros
  label << "bsc(" << p << ")^" << width;
  impl->desc = label.str();
  return Channel(impl);
}

Channel Channel::identity(int width) {
  check_width(width, "identity");
  auto impl = std::make_shared<IdentityImpl>();
  impl->in_w = impl->out_w = width;
  impl->desc = "id(" + std::to_string(width) + ")";
  return Channel(impl);
}

Channel Channel::matrix(int in_width, int out_width, std::vector<double> rows,
                        std::string desc) {
  check_width(in_width, "matrix");
  check_width(out_width, "matrix");
  const std::size_t nin = std::size_t{1} << in_width;
  const std::size_t nout = std::size_t{1} << out_width;
  check_enum_cap(nin * nout, "matrix channel");
  if (rows.size() != nin * nout) throw PreconditionError("matrix: size mismatch");
  for (std::size_t i = 0; i < nin; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < nout; ++j) {
      const double v = rows[i * nout + j];
      if (!(v >= 0.0)) throw PreconditionError("matrix: negative or NaN entry");
      s += v;
    }
    if (std::abs(s - 1.0) > kNormalizationTol) {
      throw PreconditionError("matrix: row " + std::to_string(i) + " sums to " +
                  std::to_string(s));
    }
  }
  auto impl = std::make_shared<MatrixImpl>();
  impl->in_w = in_width;
  impl->out_w = out_width;
  impl->w = std::move(rows);
  impl->desc = desc.empty() ? "matrix(2^" + std::to_string(in_width) + "x2^" +
                                  std::to_string(out_width) + ")"
                            : std::move(desc);
  return Channel(impl);
}

Channel Channel::parallel(const Channel& left, const Channel& right) {
  const int in_w = left.in_width() + right.in_width();
  const int out_w = left.out_width() + right.out_width();
  check_width(in_w, "parallel");
  check_width(out_w, "parallel");
  auto impl = std::make_shared<ParallelImpl>(left, right);
  impl->in_w = in_w;
  impl->out_w = out_w;
  impl->exact = left.exact() && right.exact();
  impl->desc = "par(" + left.describe() + "," + right.describe() + ")";
  return Channel(impl);
}

Channel Channel::compose(const Channel& outer, const Channel& inner) {
  if (inner.out_width() != outer.in_width()) {
    throw PreconditionError("compose: inner output width " +
                std::to_string(inner.out_width()) +
                " does not feed outer input width " +
                std::to_string(outer.in_width()));
  }
  auto impl = std::make_shared<ComposedImpl>(outer, inner);
  impl->in_w = inner.in_width();
  impl->out_w = outer.out_width();
  impl->exact = outer.exact() && inner.exact();
  impl->desc = "comp(" + outer.describe() + "," + inner.describe() + ")";
  return Channel(impl);
}

Channel Channel::additive_noise(const Dist& noise) {
  if (noise.width < 0) throw PreconditionError("additive_noise: noise needs a bit width");
  const int w = noise.width;
  const std::size_t n = std::size_t{1} << w;
  check_enum_cap(n * n, "additive_noise");
  std::vector<double> rows(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) rows[(x << w) | y] = noise.p[x ^ y];
  }
  return matrix(w, w, std::move(rows), "xor-noise(" + std::to_string(w) + ")");
}

Channel Channel::constant(int in_width) {
  check_width(in_width, "constant");
  const std::size_t n = std::size_t{1} << in_width;
  check_enum_cap(n, "constant");
  return matrix(in_width, 0, std::vector<double>(n, 1.0),
                "const(" + std::to_string(in_width) + ")");
}

Channel Channel::sampler(int in_width, int out_width,
                         std::function<Word(Word, RngStream&)> fn,
                         std::string desc) {
  check_width(in_width, "sampler");
  check_width(out_width, "sampler");
  auto impl = std::make_shared<SamplerImpl>();
  impl->in_w = in_width;
  impl->out_w = out_width;
  impl->exact = false;
  impl->fn = std::move(fn);
  impl->desc = desc.empty() ? "sampler(" + std::to_string(in_width) + "->" +
                                  std::to_string(out_width) + ")"
                            : std::move(desc);
  return Channel(impl);
}

int Channel::in_width() const { return impl_->in_w; }
int Channel::out_width() const { return impl_->out_w; }
bool Channel::exact() const { return impl_->exact; }
std::string Channel::describe() const { return impl_->desc; }

double Channel::transition_prob(Word x, Word y) const {
  require_exact(*impl_, "transition_prob");
  if (x >= in_size() || y >= out_size()) {
    throw Error("transition_prob: symbol outside alphabet");
  }
  return impl_->transition_prob(x, y);
}

void Channel::accumulate_row(Word x, double weight, double* acc) const {
  require_exact(*impl_, "accumulate_row");
  if (x >= in_size()) throw Error("accumulate_row: symbol outside alphabet");
  impl_->accumulate_row(x, weight, acc);
}

std::vector<double> Channel::row(Word x) const {
  check_enum_cap(out_size(), "channel row");
  std::vector<double> acc(out_size(), 0.0);
  accumulate_row(x, 1.0, acc.data());
  return acc;
}

Dist Channel::output_dist_given(Word x) const {
  return Dist::bitstrings(out_width(), row(x));
}

Word Channel::sample(Word x, RngStream& rng) const {
  if (x >= in_size()) throw Error("sample: symbol outside alphabet");
  return impl_->sample(x, rng);
}

std::vector<double> Channel::to_matrix() const {
  require_exact(*impl_, "to_matrix");
  check_enum_cap(in_size() * out_size(), "to_matrix");
  std::vector<double> m(in_size() * out_size(), 0.0);
  for (std::size_t x = 0; x < in_size(); ++x) {
    impl_->accumulate_row(x, 1.0, m.data() + x * out_size());
  }
  return m;
}

bool Channel::is_symmetric() const {
  const std::vector<double> m = to_matrix();
  const std::size_t rows = in_size();
  const std::size_t cols = out_size();

  // Columns quantized onto a 1e-9 grid; keys are the sorted column vectors.
  auto grid = [](double v) {
    return static_cast<std::int64_t>(std::llround(v * 1e9));
  };
  std::map<std::vector<std::int64_t>, std::vector<std::size_t>> classes;
  for (std::size_t j = 0; j < cols; ++j) {
    std::vector<std::int64_t> key(rows);
    for (std::size_t i = 0; i < rows; ++i) key[i] = grid(m[i * cols + j]);
    std::vector<std::int64_t> sorted = key;
    std::sort(sorted.begin(), sorted.end());
    classes[sorted].push_back(j);
  }
  // Any valid partition refines these classes (columns of a common part must
  // be permutations of one another), and the row condition transfers between
  // a class and any refinement of it, so checking the coarsest classes
  // decides the question.
  for (const auto& [key, members] : classes) {
    (void)key;
    std::vector<std::int64_t> first;
    for (std::size_t i = 0; i < rows; ++i) {
      std::vector<std::int64_t> slice(members.size());
      for (std::size_t k = 0; k < members.size(); ++k) {
        slice[k] = grid(m[i * cols + members[k]]);
      }
      std::sort(slice.begin(), slice.end());
      if (i == 0) {
        first = std::move(slice);
      } else if (slice != first) {
        return false;
      }
    }
  }
  return true;
}

JointDist joint_from_channel(const Dist& prior, const Channel& ch) {
  if (prior.width != ch.in_width()) {
    throw Error("joint_from_channel: prior width does not match channel input");
  }
  check_enum_cap(prior.size() * ch.out_size(), "joint_from_channel");
  std::vector<double> j(prior.size() * ch.out_size(), 0.0);
  for (std::size_t x = 0; x < prior.size(); ++x) {
    if (prior.p[x] == 0.0) continue;
    ch.accumulate_row(x, prior.p[x], j.data() + x * ch.out_size());
  }
  return JointDist::make(prior.width, ch.out_width(), prior.size(),
                         ch.out_size(), std::move(j));
}

}  // namespace wiretap
