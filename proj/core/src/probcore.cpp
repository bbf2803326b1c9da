#include "wiretap/probcore.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace wiretap {

namespace {

void check_compatible(const Dist& a, const Dist& b, const char* op) {
  if (a.width != b.width && a.width != kOpaqueLabels &&
      b.width != kOpaqueLabels) {
    throw Error(std::string(op) + ": label spaces differ");
  }
  if (a.width >= 0 && b.width >= 0 && a.width != b.width) {
    throw Error(std::string(op) + ": widths differ");
  }
}

}  // namespace

Dist Dist::bitstrings(int width, std::vector<double> probs) {
  if (width < 0 || width > 62) throw Error("Dist: width out of range");
  if (probs.size() != (std::size_t{1} << width)) {
    throw Error("Dist: probability vector does not cover the width");
  }
  Dist d;
  d.width = width;
  d.p = std::move(probs);
  d.validate();
  return d;
}

Dist Dist::opaque(std::vector<double> probs) {
  if (probs.empty()) throw Error("Dist: empty support");
  Dist d;
  d.width = kOpaqueLabels;
  d.p = std::move(probs);
  d.validate();
  return d;
}

Dist Dist::uniform_bits(int width) {
  if (width < 0 || width > 62) throw Error("Dist: width out of range");
  const std::size_t n = std::size_t{1} << width;
  check_enum_cap(n, "uniform_bits");
  Dist d;
  d.width = width;
  d.p.assign(n, 1.0 / static_cast<double>(n));
  return d;
}

Dist Dist::point_mass(int width, Word x) {
  if (width < 0 || width > 62) throw Error("Dist: width out of range");
  const std::size_t n = std::size_t{1} << width;
  check_enum_cap(n, "point_mass");
  if (x >= n) throw Error("Dist: point outside label space");
  Dist d;
  d.width = width;
  d.p.assign(n, 0.0);
  d.p[x] = 1.0;
  return d;
}

std::size_t Dist::support_size() const {
  return static_cast<std::size_t>(
      std::count_if(p.begin(), p.end(), [](double x) { return x > 0.0; }));
}

void Dist::validate() const {
  double total = 0.0;
  for (double x : p) {
    if (!(x >= 0.0)) throw Error("Dist: negative or NaN mass");
    total += x;
  }
  if (std::abs(total - 1.0) > kNormalizationTol) {
    throw Error("Dist: mass sums to " + std::to_string(total));
  }
}

JointDist JointDist::make(int row_width, int col_width, std::size_t rows,
                          std::size_t cols, std::vector<double> probs) {
  if (rows == 0 || cols == 0) throw Error("JointDist: empty axis");
  if (probs.size() != rows * cols) throw Error("JointDist: size mismatch");
  if (row_width >= 0 && (std::size_t{1} << row_width) != rows) {
    throw Error("JointDist: row width does not match row count");
  }
  if (col_width >= 0 && (std::size_t{1} << col_width) != cols) {
    throw Error("JointDist: col width does not match col count");
  }
  JointDist j;
  j.row_width = row_width;
  j.col_width = col_width;
  j.rows = rows;
  j.cols = cols;
  j.p = std::move(probs);
  j.validate();
  return j;
}

void JointDist::validate() const {
  double total = 0.0;
  for (double x : p) {
    if (!(x >= 0.0)) throw Error("JointDist: negative or NaN mass");
    total += x;
  }
  if (std::abs(total - 1.0) > kNormalizationTol) {
    throw Error("JointDist: mass sums to " + std::to_string(total));
  }
}

Dist JointDist::row_marginal() const {
  Dist d;
  d.width = row_width;
  d.p.assign(rows, 0.0);
  for (std::size_t i = 0; i < rows; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < cols; ++j) s += at(i, j);
    d.p[i] = s;
  }
  return d;
}

Dist JointDist::col_marginal() const {
  Dist d;
  d.width = col_width;
  d.p.assign(cols, 0.0);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) d.p[j] += at(i, j);
  }
  return d;
}

Dist JointDist::as_pair_dist() const {
  Dist d;
  d.width = kOpaqueLabels;
  d.p = p;
  return d;
}

JointDist JointDist::transposed() const {
  JointDist t;
  t.row_width = col_width;
  t.col_width = row_width;
  t.rows = cols;
  t.cols = rows;
  t.p.assign(p.size(), 0.0);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) t.p[j * rows + i] = at(i, j);
  }
  return t;
}

double entropy_term(double x) {
  if (x < 0.0) throw Error("entropy_term: negative argument");
  if (x == 0.0) return 0.0;
  return -x * std::log2(x);
}

double entropy(const Dist& d) {
  double h = 0.0;
  for (double x : d.p) h += entropy_term(x);
  return h;
}

double binary_entropy(double p) {
  if (p < 0.0 || p > 1.0) throw Error("binary_entropy: p outside [0,1]");
  return entropy_term(p) + entropy_term(1.0 - p);
}

double conditional_entropy(const JointDist& joint) {
  // H(X|Y) = H(X,Y) - H(Y); computed directly as sum_y sum_x p(x,y) lg(p(y)/p(x,y)).
  const Dist py = joint.col_marginal();
  double h = 0.0;
  for (std::size_t j = 0; j < joint.cols; ++j) {
    if (py.p[j] == 0.0) continue;
    for (std::size_t i = 0; i < joint.rows; ++i) {
      const double pij = joint.at(i, j);
      if (pij == 0.0) continue;
      h += pij * std::log2(py.p[j] / pij);
    }
  }
  return h;
}

double mutual_information(const JointDist& joint) {
  return entropy(joint.row_marginal()) - conditional_entropy(joint);
}

double statistical_distance(const Dist& a, const Dist& b) {
  check_compatible(a, b, "statistical_distance");
  const std::size_t n = std::max(a.size(), b.size());
  if (a.width >= 0 && a.size() != b.size()) {
    throw Error("statistical_distance: widths differ");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double pa = i < a.size() ? a.p[i] : 0.0;
    const double pb = i < b.size() ? b.p[i] : 0.0;
    s += std::abs(pa - pb);
  }
  return 0.5 * s;
}

double kl_divergence(const Dist& a, const Dist& b) {
  check_compatible(a, b, "kl_divergence");
  const std::size_t n = std::max(a.size(), b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double pa = i < a.size() ? a.p[i] : 0.0;
    const double pb = i < b.size() ? b.p[i] : 0.0;
    if (pa == 0.0) continue;
    if (pb == 0.0) return kInfiniteDivergence;
    s += pa * std::log2(pa / pb);
  }
  return s;
}

double guessing_prob(const Dist& d) {
  return *std::max_element(d.p.begin(), d.p.end());
}

double min_entropy(const Dist& d) { return -std::log2(guessing_prob(d)); }

double avg_guessing_prob(const JointDist& joint) {
  double s = 0.0;
  for (std::size_t j = 0; j < joint.cols; ++j) {
    double best = 0.0;
    for (std::size_t i = 0; i < joint.rows; ++i) {
      best = std::max(best, joint.at(i, j));
    }
    s += best;
  }
  return s;
}

JointDist product_of_marginals(const JointDist& joint) {
  const Dist px = joint.row_marginal();
  const Dist py = joint.col_marginal();
  JointDist out = joint;
  for (std::size_t i = 0; i < joint.rows; ++i) {
    for (std::size_t j = 0; j < joint.cols; ++j) {
      out.cell(i, j) = px.p[i] * py.p[j];
    }
  }
  return out;
}

double entropy_gap_bound(std::uint64_t n_support, double eps) {
  if (n_support == 0) throw Error("entropy_gap_bound: empty support");
  if (eps < 0.0 || eps > 1.0) throw Error("entropy_gap_bound: eps outside [0,1]");
  if (eps == 0.0) return 0.0;
  return 2.0 * eps * std::log2(static_cast<double>(n_support) / eps);
}

std::pair<Dist, Dist> entropy_gap_tight_pair(int n, int k) {
  if (n <= 0 || k <= 0 || k > n) {
    throw Error("entropy_gap_tight_pair: need 0 < k <= n");
  }
  // N = 1 + 2^(n-k) support points; eps = 2^-k.
  if (n - k > 62) throw Error("entropy_gap_tight_pair: support too large");
  const std::uint64_t extra = std::uint64_t{1} << (n - k);
  check_enum_cap(extra + 1, "entropy_gap_tight_pair");
  const double eps = std::ldexp(1.0, -k);
  const double cell = std::ldexp(1.0, -n);
  std::vector<double> pv(extra + 1, cell);
  pv[0] = 1.0 - eps;
  std::vector<double> qv(extra + 1, 0.0);
  qv[0] = 1.0;
  return {Dist::opaque(std::move(pv)), Dist::opaque(std::move(qv))};
}

}  // namespace wiretap
