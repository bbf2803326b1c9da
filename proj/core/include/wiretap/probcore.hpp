#pragma once

#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "wiretap/common.hpp"

// Finite probability distributions and the information-theoretic quantities
// the security metrics are built from. Entropies and divergences are in bits.
//
// A Dist is dense: index i carries the probability of label i. Labels are
// either the bitstrings of a fixed width (canonically ordered, so index =
// numeric value) or opaque integers 0..N-1 when the support is not a power
// of two. Sparse supports are represented with explicit zeros.

namespace wiretap {

inline constexpr int kOpaqueLabels = -1;

inline constexpr double kNormalizationTol = 1e-9;

// kl_divergence returns this when absolute continuity fails.
inline constexpr double kInfiniteDivergence =
    std::numeric_limits<double>::infinity();

struct Dist {
  int width = kOpaqueLabels;
  std::vector<double> p;

  static Dist bitstrings(int width, std::vector<double> probs);
  static Dist opaque(std::vector<double> probs);
  static Dist uniform_bits(int width);
  static Dist point_mass(int width, Word x);

  std::size_t size() const { return p.size(); }
  double at(std::size_t i) const { return p[i]; }
  std::size_t support_size() const;
  void validate() const;  // throws Error on negative mass or bad total
};

struct JointDist {
  int row_width = kOpaqueLabels;
  int col_width = kOpaqueLabels;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> p;  // row-major

  static JointDist make(int row_width, int col_width, std::size_t rows,
                        std::size_t cols, std::vector<double> probs);

  double at(std::size_t i, std::size_t j) const { return p[i * cols + j]; }
  double& cell(std::size_t i, std::size_t j) { return p[i * cols + j]; }

  Dist row_marginal() const;
  Dist col_marginal() const;
  // The joint viewed as a distribution over pair labels i*cols + j.
  Dist as_pair_dist() const;
  JointDist transposed() const;
  void validate() const;
};

// h(x) = -x lg x, the single-term entropy function; h(0) = 0.
double entropy_term(double x);

double entropy(const Dist& d);

// Binary entropy -p lg p - (1-p) lg (1-p); domain [0, 1].
double binary_entropy(double p);

// H(X | Y) for (X, Y) ~ joint, X the row variable.
double conditional_entropy(const JointDist& joint);

// I(X; Y) = H(X) - H(X | Y).
double mutual_information(const JointDist& joint);

// Half L1 distance. Supports must be compatible: equal widths, or both
// opaque (the shorter is padded with zeros).
double statistical_distance(const Dist& a, const Dist& b);

// KL(a || b) in bits; kInfiniteDivergence when supp(a) is not within supp(b).
double kl_divergence(const Dist& a, const Dist& b);

// Probability of the best blind guess: max_x P(x).
double guessing_prob(const Dist& d);

double min_entropy(const Dist& d);

// GP(X | Y) = sum_y max_x P(x, y): success of the best guess of the row
// variable after seeing the column variable.
double avg_guessing_prob(const JointDist& joint);

JointDist product_of_marginals(const JointDist& joint);

// Upper bound 2 eps lg(n_support / eps) on |H(P) - H(Q)| for distributions
// with SD(P, Q) = eps on a union support of n_support points; 0 at eps = 0.
double entropy_gap_bound(std::uint64_t n_support, double eps);

// Near-tight pair for the entropy gap bound: on {0..N-1} with eps = 2^-k,
// N = 1 + eps 2^n, P puts 1-eps on 0 and 2^-n elsewhere, Q is the point
// mass at 0. SD(P, Q) = eps exactly and H(P) - H(Q) = eps n + h(1 - eps).
std::pair<Dist, Dist> entropy_gap_tight_pair(int n, int k);

}  // namespace wiretap
