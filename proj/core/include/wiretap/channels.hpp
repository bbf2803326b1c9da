#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "wiretap/common.hpp"
#include "wiretap/probcore.hpp"

// Discrete memoryless channels on bitstring alphabets. A Channel is an
// immutable value; composition builds trees whose exact transition
// probabilities are computed on demand (nothing is materialized until a
// caller asks for a full matrix, and that path is enumeration-capped).
//
// Representations: binary symmetric product, identity, explicit matrix,
// parallel application to the two halves of the input, serial composition,
// and sampler-only (no exact queries, only simulation).

namespace wiretap {

class Channel {
 public:
  // Crossover probabilities are restricted to [0, 1/2]; wider values would
  // silently flip the nearest-input decoding convention used elsewhere.
  static Channel bsc(double p, int width);
  static Channel identity(int width);
  static Channel matrix(int in_width, int out_width, std::vector<double> rows,
                        std::string desc = "");
  static Channel parallel(const Channel& left, const Channel& right);
  static Channel compose(const Channel& outer, const Channel& inner);
  // Output = input XOR E with E ~ noise; materialized as an explicit matrix.
  static Channel additive_noise(const Dist& noise);
  // Maps every input to the empty string (output width 0).
  static Channel constant(int in_width);
  static Channel sampler(int in_width, int out_width,
                         std::function<Word(Word, RngStream&)> fn,
                         std::string desc = "");

  int in_width() const;
  int out_width() const;
  std::size_t in_size() const { return std::size_t{1} << in_width(); }
  std::size_t out_size() const { return std::size_t{1} << out_width(); }

  // False anywhere a sampler-only node appears in the tree.
  bool exact() const;

  double transition_prob(Word x, Word y) const;

  // acc[y] += weight * W[x, y] for all y; acc must have out_size() entries.
  void accumulate_row(Word x, double weight, double* acc) const;

  std::vector<double> row(Word x) const;
  Dist output_dist_given(Word x) const;

  Word sample(Word x, RngStream& rng) const;

  // Full transition matrix, row-major; enumeration-capped.
  std::vector<double> to_matrix() const;

  // Partition test: groups output columns into classes whose column vectors
  // are permutations of one another (entries rounded to a 1e-9 grid), then
  // requires the rows restricted to each class to be permutations of each
  // other. All-zero columns form their own class and pass trivially.
  bool is_symmetric() const;

  std::string describe() const;

  struct Impl;

 private:
  explicit Channel(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

// Convenience for metrics code: the joint law of (X, Ch(X)) for X ~ prior.
JointDist joint_from_channel(const Dist& prior, const Channel& ch);

}  // namespace wiretap
