#include "wiretap/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "wiretap/channels.hpp"
#include "wiretap/coding.hpp"
#include "wiretap/hashing.hpp"
#include "wiretap/metrics.hpp"
#include "wiretap/probcore.hpp"
#include "wiretap/xtx.hpp"

namespace wiretap {
namespace {

constexpr std::uint64_t kSuiteSeed = 20260818;

// Folds a randomized family into its tightest member. "Tightest" means
// minimal slack, so a failing member is always the one reported.
class WorstSlack {
 public:
  WorstSlack(std::string relation, double tol)
      : relation_(std::move(relation)), tol_(tol) {}

  void consider(const std::string& instance, double lhs, double rhs) {
    ++count_;
    const double slack = rhs - lhs;
    if (!any_ || slack < best_slack_) {
      any_ = true;
      best_slack_ = slack;
      lhs_ = lhs;
      rhs_ = rhs;
      instance_ = instance;
    }
  }

  RelationCheck record() const {
    return make_relation_check(
        relation_,
        std::to_string(count_) + " instances, tightest: " + instance_, lhs_,
        rhs_, tol_);
  }

 private:
  std::string relation_;
  double tol_;
  bool any_ = false;
  std::size_t count_ = 0;
  double best_slack_ = 0.0;
  double lhs_ = 0.0;
  double rhs_ = 0.0;
  std::string instance_;
};

Dist random_dist(RngStream& rng, std::size_t n, bool allow_zeros) {
  std::vector<double> v(n);
  double total = 0.0;
  for (auto& x : v) {
    x = -std::log(1.0 - rng.next_double());
    if (allow_zeros && rng.bernoulli(0.25)) x = 0.0;
    total += x;
  }
  if (total == 0.0) {
    v[0] = 1.0;
    total = 1.0;
  }
  for (auto& x : v) x /= total;
  return Dist::opaque(std::move(v));
}

JointDist random_joint(RngStream& rng, std::size_t rows, std::size_t cols,
                       bool allow_zeros) {
  std::vector<double> v(rows * cols);
  double total = 0.0;
  for (auto& x : v) {
    x = -std::log(1.0 - rng.next_double());
    if (allow_zeros && rng.bernoulli(0.25)) x = 0.0;
    total += x;
  }
  for (auto& x : v) x /= total;
  return JointDist::make(kOpaqueLabels, kOpaqueLabels, rows, cols,
                         std::move(v));
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

std::string shape_label(int t, std::size_t rows, std::size_t cols) {
  return "#" + std::to_string(t) + " " + std::to_string(rows) + "x" +
         std::to_string(cols);
}

EncryptionFn one_time_pad(int w) {
  return EncryptionFn(
      w, w, w, [](Word coins, Word message) { return coins ^ message; },
      "otp(" + std::to_string(w) + ")");
}

EncryptionFn random_encryption(int r, int m, int c, std::uint64_t stream) {
  RngStream rng(kSuiteSeed, stream);
  auto table = std::make_shared<std::vector<Word>>(std::size_t{1} << (r + m));
  for (auto& w : *table) w = rng.bits(c);
  return EncryptionFn(
      r, m, c,
      [table, r](Word coins, Word message) {
        return (*table)[(message << r) | coins];
      },
      "rand(" + std::to_string(r) + "," + std::to_string(m) + "," +
          std::to_string(c) + ")#" + std::to_string(stream));
}

// Uniform-message leakage of the flag-prefix scheme over a one-time-pad
// base: the base contributes nothing, so the mutual information collapses
// to the prefix mixture term 2^(1-m) (H(mix) - n h(p)) where mix is the
// equal blend of the all-zero and all-one prefix laws through bsc(p).
double separation_misr_closed_form(int m, int n, double p) {
  Channel prefix = Channel::bsc(p, n);
  std::vector<double> mix(prefix.out_size(), 0.0);
  prefix.accumulate_row(0, 0.5, mix.data());
  prefix.accumulate_row(word_mask(n), 0.5, mix.data());
  const double h_mix = entropy(Dist::bitstrings(n, std::move(mix)));
  return std::ldexp(h_mix - double(n) * binary_entropy(p), 1 - m);
}

Dist conditional_row(const JointDist& j, std::size_t i, double mass) {
  std::vector<double> v(j.cols);
  for (std::size_t k = 0; k < j.cols; ++k) v[k] = j.at(i, k) / mass;
  return Dist::opaque(std::move(v));
}

}  // namespace

std::vector<RelationCheck> verify_probcore() {
  std::vector<RelationCheck> out;

  {
    // Mutual information is the divergence from independence, and it is
    // symmetric in its arguments.
    RngStream rng(kSuiteSeed, 1);
    WorstSlack eq("mi==kl(joint;product)", 1e-10);
    WorstSlack sym("mi(x;y)==mi(y;x)", 1e-10);
    for (int t = 0; t < 200; ++t) {
      const std::size_t rows = 2 + rng.below(15);
      const std::size_t cols = 2 + rng.below(15);
      JointDist j = random_joint(rng, rows, cols, true);
      const std::string inst = shape_label(t, rows, cols);
      const double mi = mutual_information(j);
      const double kl = kl_divergence(j.as_pair_dist(),
                                      product_of_marginals(j).as_pair_dist());
      eq.consider(inst, std::abs(mi - kl), 0.0);
      sym.consider(inst, std::abs(mi - mutual_information(j.transposed())),
                   0.0);
    }
    out.push_back(eq.record());
    out.push_back(sym.record());
  }

  {
    // For a uniform two-point message, the distance between the joint
    // (message, observation) law and its independent version is half the
    // distance between the two observation laws.
    RngStream rng(kSuiteSeed, 2);
    WorstSlack w("sd(joint;indep)==sd(laws)/2", 1e-10);
    for (int t = 0; t < 100; ++t) {
      EncryptionFn e = random_encryption(1, 2, 3, 200 + t);
      Channel chA = Channel::bsc(0.05 + 0.4 * rng.next_double(), 3);
      Channel ind = induced_channel(e, chA);
      Word m0 = rng.bits(2);
      Word m1 = rng.bits(2);
      while (m1 == m0) m1 = rng.bits(2);
      const std::vector<double> r0 = ind.row(m0);
      const std::vector<double> r1 = ind.row(m1);
      std::vector<double> cells;
      cells.reserve(2 * r0.size());
      for (double x : r0) cells.push_back(0.5 * x);
      for (double x : r1) cells.push_back(0.5 * x);
      JointDist j = JointDist::make(kOpaqueLabels, 3, 2, r0.size(),
                                    std::move(cells));
      const double d_joint = statistical_distance(
          j.as_pair_dist(), product_of_marginals(j).as_pair_dist());
      const double d_laws = statistical_distance(Dist::bitstrings(3, r0),
                                                 Dist::bitstrings(3, r1));
      w.consider("#" + std::to_string(t) + " " + e.describe(),
                 std::abs(d_joint - 0.5 * d_laws), 0.0);
    }
    out.push_back(w.record());
  }

  {
    // Divergence dominates twice the squared statistical distance.
    RngStream rng(kSuiteSeed, 3);
    WorstSlack w("2sd^2<=kl", 1e-12);
    for (int t = 0; t < 600; ++t) {
      const std::size_t n = 2 + rng.below(11);
      Dist a = random_dist(rng, n, true);
      Dist b = random_dist(rng, n, false);  // full support keeps kl finite
      const double sd = statistical_distance(a, b);
      w.consider(shape_label(t, n, 1), 2.0 * sd * sd, kl_divergence(a, b));
    }
    out.push_back(w.record());
  }

  {
    // Entropies of close laws are close: |H(P) - H(Q)| <= 2 eps lg(N/eps).
    RngStream rng(kSuiteSeed, 4);
    WorstSlack w("|H(P)-H(Q)|<=2eps*lg(N/eps)", 1e-12);
    for (int t = 0; t < 600; ++t) {
      const std::size_t n = 2 + rng.below(15);
      Dist a = random_dist(rng, n, true);
      Dist b = random_dist(rng, n, true);
      const double eps = statistical_distance(a, b);
      w.consider(shape_label(t, n, 1), std::abs(entropy(a) - entropy(b)),
                 entropy_gap_bound(n, eps));
    }
    out.push_back(w.record());
  }

  {
    // The single-term entropy function moves by at most h(x) under a shift
    // of x, for p, x in [0, 1/2] with p + x <= 1/2.
    RngStream rng(kSuiteSeed, 5);
    WorstSlack w("|h(p+x)-h(p)|<=h(x)", 1e-12);
    for (int t = 0; t < 1000; ++t) {
      const double p = 0.5 * rng.next_double();
      const double x = (0.5 - p) * rng.next_double();
      w.consider("#" + std::to_string(t),
                 std::abs(entropy_term(p + x) - entropy_term(p)),
                 entropy_term(x));
    }
    out.push_back(w.record());
  }

  {
    // No conditional observation law strays from the prior observation law
    // by more than the maximal pairwise conditional distance.
    RngStream rng(kSuiteSeed, 6);
    WorstSlack w("sd(marginal;row)<=psd", 1e-12);
    for (int t = 0; t < 500; ++t) {
      const std::size_t rows = 2 + rng.below(7);
      const std::size_t cols = 2 + rng.below(7);
      JointDist j = random_joint(rng, rows, cols, true);
      const Dist prior = j.col_marginal();
      double worst = 0.0;
      for (std::size_t i = 0; i < rows; ++i) {
        double mass = 0.0;
        for (std::size_t k = 0; k < cols; ++k) mass += j.at(i, k);
        if (mass <= 0.0) continue;
        worst = std::max(
            worst, statistical_distance(prior, conditional_row(j, i, mass)));
      }
      w.consider(shape_label(t, rows, cols), worst, psd(j));
    }
    out.push_back(w.record());
  }

  {
    // Post-processing through a channel never increases statistical
    // distance.
    RngStream rng(kSuiteSeed, 7);
    WorstSlack w("sd(ch(P);ch(Q))<=sd(P;Q)", 1e-12);
    for (int t = 0; t < 600; ++t) {
      const int in_w = 1 + int(rng.below(3));
      const int out_w = 1 + int(rng.below(3));
      const std::size_t ins = std::size_t{1} << in_w;
      const std::size_t outs = std::size_t{1} << out_w;
      std::vector<double> rows(ins * outs);
      for (std::size_t i = 0; i < ins; ++i) {
        double total = 0.0;
        for (std::size_t k = 0; k < outs; ++k) {
          rows[i * outs + k] = -std::log(1.0 - rng.next_double());
          total += rows[i * outs + k];
        }
        for (std::size_t k = 0; k < outs; ++k) rows[i * outs + k] /= total;
      }
      Channel ch = Channel::matrix(in_w, out_w, std::move(rows));
      std::vector<double> pv(ins), qv(ins);
      double pt = 0.0, qt = 0.0;
      for (std::size_t i = 0; i < ins; ++i) {
        pv[i] = -std::log(1.0 - rng.next_double());
        qv[i] = -std::log(1.0 - rng.next_double());
        pt += pv[i];
        qt += qv[i];
      }
      for (std::size_t i = 0; i < ins; ++i) {
        pv[i] /= pt;
        qv[i] /= qt;
      }
      std::vector<double> tp(outs, 0.0), tq(outs, 0.0);
      for (std::size_t i = 0; i < ins; ++i) {
        ch.accumulate_row(Word(i), pv[i], tp.data());
        ch.accumulate_row(Word(i), qv[i], tq.data());
      }
      const double before = statistical_distance(Dist::bitstrings(in_w, pv),
                                                 Dist::bitstrings(in_w, qv));
      const double after = statistical_distance(
          Dist::bitstrings(out_w, std::move(tp)),
          Dist::bitstrings(out_w, std::move(tq)));
      w.consider(shape_label(t, ins, outs), after, before);
    }
    out.push_back(w.record());
  }

  {
    // Extra side information taking at most N values boosts the guessing
    // probability by at most a factor of N.
    RngStream rng(kSuiteSeed, 8);
    WorstSlack w("gp(X|Z,R)<=N*gp(X|Z)", 1e-12);
    for (int t = 0; t < 500; ++t) {
      const std::size_t nx = 2 + rng.below(5);
      const std::size_t nz = 2 + rng.below(5);
      const std::size_t nr = 1 + rng.below(4);
      JointDist fine = random_joint(rng, nx, nz * nr, true);
      std::vector<double> coarse(nx * nz, 0.0);
      for (std::size_t i = 0; i < nx; ++i) {
        for (std::size_t z = 0; z < nz; ++z) {
          for (std::size_t r = 0; r < nr; ++r) {
            coarse[i * nz + z] += fine.at(i, z * nr + r);
          }
        }
      }
      JointDist cj = JointDist::make(kOpaqueLabels, kOpaqueLabels, nx, nz,
                                     std::move(coarse));
      w.consider(shape_label(t, nx, nz * nr) + " N=" + std::to_string(nr),
                 avg_guessing_prob(fine),
                 double(nr) * avg_guessing_prob(cj));
    }
    out.push_back(w.record());
  }

  {
    // Distance is a metric on laws: triangle inequality.
    RngStream rng(kSuiteSeed, 9);
    WorstSlack w("sd(a;c)<=sd(a;b)+sd(b;c)", 1e-12);
    for (int t = 0; t < 300; ++t) {
      const std::size_t n = 2 + rng.below(11);
      Dist a = random_dist(rng, n, true);
      Dist b = random_dist(rng, n, true);
      Dist c = random_dist(rng, n, true);
      w.consider(shape_label(t, n, 1), statistical_distance(a, c),
                 statistical_distance(a, b) + statistical_distance(b, c));
    }
    out.push_back(w.record());
  }

  for (const auto& [n, k] : std::vector<std::pair<int, int>>{{4, 2}, {6, 3}}) {
    const auto [p_dist, q_dist] = entropy_gap_tight_pair(n, k);
    const std::string inst =
        "(n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")";
    const double eps = statistical_distance(p_dist, q_dist);
    out.push_back(make_relation_check("tight-pair sd==2^-k", inst,
                                      std::abs(eps - std::ldexp(1.0, -k)),
                                      0.0, 0.0));
    const double n_support = double(p_dist.support_size());
    out.push_back(make_relation_check(
        "tight-pair gap>=eps/2*lg(N/eps)", inst,
        0.5 * eps * std::log2(n_support / eps),
        entropy(p_dist) - entropy(q_dist), 1e-12));
  }

  return out;
}

std::vector<RelationCheck> verify_relations() {
  std::vector<RelationCheck> out;

  {
    // The implication ladder between the advantage notions, over a ledger
    // of small schemes: named fixtures plus seeded random tables.
    struct Inst {
      EncryptionFn e;
      Channel chA;
    };
    std::vector<Inst> ledger;
    ledger.push_back({one_time_pad(2), Channel::bsc(0.3, 2)});
    ledger.push_back({EncryptionFn(
                          0, 2, 2, [](Word, Word m) { return m; },
                          "verbatim(2)"),
                      Channel::identity(2)});
    ledger.push_back({EncryptionFn(
                          2, 2, 4,
                          [](Word r, Word m) { return concat_bits(m, r, 2); },
                          "tag(m||r)"),
                      Channel::identity(4)});
    ledger.push_back(
        {xor_linear_scheme(repetition_code(3), 1), Channel::bsc(0.2, 3)});
    ledger.push_back({build_xtx(HashFamily::gf_mult(4, 1), identity_code(4),
                                identity_code(5))
                          .encryption(),
                      Channel::bsc(0.25, 9)});
    const int shapes[5][3] = {
        {1, 1, 3}, {1, 2, 3}, {2, 2, 4}, {2, 1, 4}, {1, 2, 4}};
    for (int i = 0; i < 20; ++i) {
      const auto& s = shapes[i % 5];
      EncryptionFn e = random_encryption(s[0], s[1], s[2], 40 + i);
      Channel chA = (i % 4 == 3)
                        ? Channel::identity(s[2])
                        : Channel::bsc(0.15 + 0.1 * double(i % 4), s[2]);
      ledger.push_back({std::move(e), std::move(chA)});
    }

    WorstSlack lower("ss<=ds", 1e-10);
    WorstSlack upper("ds<=2ss", 1e-10);
    WorstSlack pinsker("ds<=sqrt(2mis)", 1e-8);
    WorstSlack fano("mis<=2ds*lg(2^c/ds)", 1e-8);
    for (const auto& inst : ledger) {
      const auto [lo, hi] = check_ds_ss(inst.e, inst.chA);
      lower.consider(lo.instance, lo.lhs, lo.rhs);
      upper.consider(hi.instance, hi.lhs, hi.rhs);
      const RelationCheck p = check_mis_to_ds(inst.e, inst.chA);
      pinsker.consider(p.instance, p.lhs, p.rhs);
      const RelationCheck f = check_ds_to_mis(inst.e, inst.chA);
      fano.consider(f.instance, f.lhs, f.rhs);
    }
    out.push_back(lower.record());
    out.push_back(upper.record());
    out.push_back(pinsker.record());
    out.push_back(fano.record());
  }

  {
    // Flag-prefix separation at a forced short prefix: distinguishing
    // advantage on the special pair is the exact majority-vote edge, well
    // above one half, while the base scheme leaks nothing.
    SeparationScheme sep =
        build_prop411_counterexample(one_time_pad(2), 0.25, 5);
    Channel chA = Channel::bsc(0.25, 7);
    const double ds = adv_ds_exact(sep.scheme, chA).value;
    out.push_back(make_relation_check(
        "separation ds>=1/2", sep.scheme.describe() + " | " + chA.describe(),
        0.5, ds, 0.0));
    out.push_back(make_relation_check(
        "separation ds==majority edge",
        sep.scheme.describe() + " n=5 p=0.25",
        std::abs(ds - sep.attack_advantage), 0.0, 1e-12));
  }

  {
    // The closed form for the uniform-message leakage of the flag-prefix
    // scheme matches the joint-law computation, and at a 10-bit message the
    // leakage increase over the base stays under 1/50.
    SeparationScheme sep =
        build_prop411_counterexample(one_time_pad(3), 0.25, 5);
    const double exact = adv_mis_r(sep.scheme, Channel::bsc(0.25, 8)).value;
    const double closed = separation_misr_closed_form(3, 5, 0.25);
    out.push_back(make_relation_check("separation misr closed-form==joint",
                                      sep.scheme.describe() + " m=3",
                                      std::abs(closed - exact), 0.0, 1e-9));
    out.push_back(make_relation_check("separation misr increase<=0.02",
                                      "flag-prefix(otp(10),5) p=0.25",
                                      separation_misr_closed_form(10, 5, 0.25),
                                      0.02, 0.0));
  }

  {
    // Monte-Carlo majority vote at the derived prefix length: the
    // empirical edge brackets the exact one and certifies ds >= 1/2.
    SeparationScheme sep = build_prop411_counterexample(one_time_pad(2), 0.25);
    Channel noisy = Channel::bsc(0.25, sep.scheme.cipher_bits());
    const int n = sep.prefix_len;
    const int base_c = sep.scheme.cipher_bits() - n;
    RngStream rng(kSuiteSeed, 77);
    const std::uint64_t trials = 100000;
    auto vote_rate = [&](Word message, int expect) {
      std::uint64_t hits = 0;
      for (std::uint64_t t = 0; t < trials; ++t) {
        const Word ct =
            sep.scheme.encrypt(rng.bits(sep.scheme.coin_bits()), message);
        const Word obs = noisy.sample(ct, rng);
        const int ones = std::popcount(obs >> base_c);
        const int guess = (2 * ones > n) ? 1 : 0;
        if (guess == expect) ++hits;
      }
      return double(hits) / double(trials);
    };
    const double q1 = vote_rate(sep.message_ones, 1);
    const double q0 = vote_rate(sep.message_zero, 0);
    const double est = q1 + q0 - 1.0;
    const double sigma = std::sqrt(q1 * (1.0 - q1) / double(trials) +
                                   q0 * (1.0 - q0) / double(trials));
    const std::string inst = sep.scheme.describe() + " n=" +
                             std::to_string(n) + " trials=" +
                             std::to_string(trials) + " seed=" +
                             std::to_string(kSuiteSeed);
    out.push_back(make_relation_check("separation mc edge within 3sigma",
                                      inst, std::abs(est - sep.attack_advantage),
                                      3.0 * sigma, 0.0));
    out.push_back(make_relation_check("separation mc edge>=1/2", inst, 0.5,
                                      est - 3.0 * sigma, 0.0));
  }

  {
    // Uniform-message leakage dominates optimized leakage for separable,
    // message-linear schemes through per-bit symmetric noise, in both the
    // repeated-bit-channel and additive-noise forms; a non-separable scheme
    // is declined rather than judged.
    CodeFn hamming = generator_matrix_code(
        4, 7, {0x46, 0x25, 0x13, 0x0f}, "gen(4->7)");
    EncryptionFn xl = xor_linear_scheme(hamming, 3);
    out.push_back(check_misr_to_mis(xl, Channel::bsc(0.2, 1)));

    std::vector<double> noise(std::size_t{1} << 7);
    double total = 0.0;
    for (std::size_t e = 0; e < noise.size(); ++e) {
      noise[e] = std::ldexp(1.0, -2 * std::popcount(e));
      total += noise[e];
    }
    for (auto& x : noise) x /= total;
    out.push_back(check_misr_to_mis(xl, Dist::bitstrings(7, std::move(noise))));

    EncryptionFn and_pad(
        2, 2, 4,
        [](Word r, Word m) { return concat_bits(m & r, r, 2); },
        "and-pad(2)");
    out.push_back(check_misr_to_mis(and_pad, Channel::bsc(0.2, 1)));
  }

  return out;
}

std::vector<RelationCheck> verify_xtx() {
  std::vector<RelationCheck> out;

  {
    // Limiting rates at the display precision used throughout.
    const std::vector<double> ps = {0.5, 0.4, 0.3, 0.2, 0.1};
    const double want_rate[] = {0.50, 0.42, 0.34, 0.24, 0.13};
    const double want_rate2[] = {1.00, 0.74, 0.51, 0.32, 0.15};
    const std::vector<RateRow> rows = rate_table(ps);
    int mismatches = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (round2_half_up(rows[i].rate_limit) != want_rate[i]) ++mismatches;
      if (round2_half_up(rows[i].rate2_limit) != want_rate2[i]) ++mismatches;
    }
    out.push_back(make_relation_check("rate-table rounds to targets",
                                      "p=0.5,0.4,0.3,0.2,0.1",
                                      double(mismatches), 0.0, 0.0));
  }

  {
    // Recovering an uncoded uniform source through per-bit noise succeeds
    // with probability exactly (1-p)^u.
    WorstSlack w("rsr(id;bsc^u)==(1-p)^u", 1e-12);
    for (int u = 1; u <= 10; ++u) {
      for (double p : {0.1, 0.25, 0.4}) {
        const double exact =
            adv_rs_r_exact(identity_code(u), Channel::bsc(p, u)).value;
        w.consider("u=" + std::to_string(u) + " p=" + num(p),
                   std::abs(exact - std::pow(1.0 - p, u)), 0.0);
      }
    }
    out.push_back(w.record());
  }

  {
    // Exact distinguishing advantage of the assembled scheme sits under the
    // recovery-based bound across the identity-code grid.
    WorstSlack w("xtx ds<=sqrt(2^m(1-p)^u)", 1e-12);
    for (int u : {4, 6}) {
      for (int m : {1, 2}) {
        XtXScheme scheme = build_xtx(HashFamily::gf_mult(u, m),
                                     identity_code(u), identity_code(u + m));
        for (double p : {0.1, 0.25, 0.4}) {
          Channel chA = Channel::bsc(p, scheme.cipher_bits());
          const double ds = adv_ds_exact(scheme.encryption(), chA).value;
          w.consider("u=" + std::to_string(u) + " m=" + std::to_string(m) +
                         " p=" + num(p),
                     ds, ds_bound_bsc_noiseless_receiver(m, u, p));
        }
      }
    }
    out.push_back(w.record());
  }

  {
    // Decryption error of the assembled scheme splits across the blocks.
    WorstSlack w("de(xtx)<=de(en1)+de(en2)", 1e-12);
    CodeFn en1 = block_repetition_code(3, 2);
    CodeFn en2 = block_repetition_code(3, 3);
    XtXScheme scheme = build_xtx(HashFamily::matrix(2, 1), en1, en2);
    for (double p : {0.05, 0.3}) {
      Channel chR = Channel::bsc(p, scheme.cipher_bits());
      const double whole =
          decryption_error_exact(
              scheme.encryption(),
              [&scheme](Word received) { return xtx_decrypt(scheme, received); },
              chR)
              .value;
      const double first =
          decryption_error_exact(en1, Channel::bsc(p, en1.out_bits())).value;
      const double second =
          decryption_error_exact(en2, Channel::bsc(p, en2.out_bits())).value;
      w.consider(scheme.describe() + " p=" + num(p), whole,
                 first + second);
    }
    out.push_back(w.record());
  }

  {
    // Recovery through a systematic code obeys both the reduction to the
    // bare source and the per-bit closed form.
    WorstSlack reduction("rsr(sys)<=2^r*rsr(id)", 1e-12);
    WorstSlack closed("rsr(sys)<=2^r(1-p)^(u+r)", 1e-12);
    for (int u : {4, 6, 8}) {
      SystematicCode sys = make_systematic(
          u, 1, [](Word x) { return Word(parity64(x)); },
          "sys(parity," + std::to_string(u) + ")");
      for (double p : {0.1, 0.25, 0.4}) {
        const double exact =
            adv_rs_r_exact(sys.code(), Channel::bsc(p, u + 1)).value;
        const double rsr_id =
            adv_rs_r_exact(identity_code(u), Channel::bsc(p, u)).value;
        const std::string inst =
            "u=" + std::to_string(u) + " p=" + num(p);
        reduction.consider(inst, exact, rsr_systematic_reduction(1, rsr_id));
        closed.consider(inst, exact,
                        std::ldexp(std::pow(1.0 - p, u + 1), 1));
      }
    }
    out.push_back(reduction.record());
    out.push_back(closed.record());
  }

  {
    // Decrypt inverts encrypt on every coin/message pair.
    std::uint64_t failures = 0;
    std::vector<XtXScheme> schemes;
    schemes.push_back(build_xtx(HashFamily::gf_mult(3, 2), identity_code(3),
                                identity_code(5)));
    schemes.push_back(build_xtx(HashFamily::matrix(2, 1),
                                block_repetition_code(3, 2),
                                block_repetition_code(3, 3)));
    for (const XtXScheme& scheme : schemes) {
      const EncryptionFn& e = scheme.encryption();
      const Word coins_end = Word{1} << e.coin_bits();
      const Word msgs_end = Word{1} << e.message_bits();
      for (Word coins = 0; coins < coins_end; ++coins) {
        for (Word m = 0; m < msgs_end; ++m) {
          if (xtx_decrypt(scheme, e.encrypt(coins, m)) != m) ++failures;
        }
      }
    }
    out.push_back(make_relation_check("xtx decrypt inverts encrypt",
                                      "gf(3,2)+id, mx(2,1)+rep3, all inputs",
                                      double(failures), 0.0, 0.0));
  }

  {
    // The advantage bound only sees the first block: adding noise on the
    // second block can only shrink the exact advantage, and both variants
    // sit under the bound computed from the first block alone.
    XtXScheme scheme = build_xtx(HashFamily::gf_mult(4, 1), identity_code(4),
                                 identity_code(5));
    Channel first = Channel::bsc(0.25, 4);
    const double ds_noisy =
        adv_ds_exact(scheme.encryption(),
                     Channel::parallel(first, Channel::bsc(0.25, 5)))
            .value;
    const double ds_clear =
        adv_ds_exact(scheme.encryption(),
                     Channel::parallel(first, Channel::identity(5)))
            .value;
    const double bound = ds_bound_generic(
        1, adv_rs_r_exact(identity_code(4), first).value);
    out.push_back(make_relation_check("xtx ds monotone in second-block noise",
                                      "gf(4,1) p=0.25", ds_noisy, ds_clear,
                                      1e-12));
    out.push_back(make_relation_check("xtx ds<=bound(first block)",
                                      "gf(4,1) p=0.25",
                                      std::max(ds_noisy, ds_clear), bound,
                                      1e-12));
  }

  {
    // Seed sizing: the chosen source width meets the target and is the
    // smallest width that does.
    WorstSlack meets("design bound<=2^-s", 0.0);
    WorstSlack minimal("design u minimal", 0.0);
    for (int m : {1, 64, 128}) {
      for (int s : {40, 128}) {
        for (double p : {0.1, 0.3}) {
          const DesignSpec d = design_u(m, s, p);
          const std::string inst = "m=" + std::to_string(m) + " s=" +
                                   std::to_string(s) + " p=" + num(p);
          meets.consider(inst, d.bound_ds, std::ldexp(1.0, -s));
          minimal.consider(inst, std::ldexp(1.0, -s),
                           ds_bound_bsc_noiseless_receiver(m, d.u - 1, p));
        }
      }
    }
    out.push_back(meets.record());
    out.push_back(minimal.record());
    out.push_back(make_relation_check(
        "design(128,128,0.3) picks u=747", "m=128 s=128 p=0.3",
        std::abs(double(design_u(128, 128, 0.3).u) - 747.0), 0.0, 0.0));
  }

  return out;
}

std::vector<RelationCheck> verify_hash() {
  std::vector<RelationCheck> out;

  {
    // Universality by exhaustion: no distinct input pair collides with
    // probability above 2^-m in either family.
    WorstSlack w("max collision prob<=2^-m", 0.0);
    std::vector<HashFamily> fams;
    fams.push_back(HashFamily::matrix(2, 2));
    fams.push_back(HashFamily::matrix(3, 2));
    fams.push_back(HashFamily::matrix(4, 2));
    fams.push_back(HashFamily::matrix(4, 4));
    fams.push_back(HashFamily::gf_mult(4, 2));
    fams.push_back(HashFamily::gf_mult(6, 2));
    fams.push_back(HashFamily::gf_mult(6, 3));
    fams.push_back(HashFamily::gf_mult(8, 4));
    for (const HashFamily& fam : fams) {
      w.consider(fam.describe(), max_collision_prob(fam),
                 std::ldexp(1.0, -fam.output_bits()));
    }
    out.push_back(w.record());
  }

  {
    // Privacy amplification: the exact joint distance sits under the
    // guessing-probability bound across families, side channels and source
    // laws.
    WorstSlack w("lhl sd<=bound", 1e-12);
    std::vector<HashFamily> fams;
    fams.push_back(HashFamily::gf_mult(4, 1));
    fams.push_back(HashFamily::gf_mult(4, 2));
    fams.push_back(HashFamily::matrix(4, 1));
    fams.push_back(HashFamily::matrix(4, 2));
    fams.push_back(HashFamily::gf_mult(6, 1));
    fams.push_back(HashFamily::gf_mult(6, 2));
    for (const HashFamily& fam : fams) {
      const int u = fam.input_bits();
      std::vector<double> skew(std::size_t{1} << u);
      double total = 0.0;
      for (std::size_t i = 0; i < skew.size(); ++i) {
        skew[i] = std::ldexp(1.0, -int(i % 7));
        total += skew[i];
      }
      for (auto& x : skew) x /= total;
      const std::vector<Dist> priors = {Dist::uniform_bits(u),
                                        Dist::bitstrings(u, std::move(skew))};
      const std::vector<Channel> sides = {Channel::constant(u),
                                          Channel::bsc(0.25, u),
                                          Channel::identity(u)};
      for (std::size_t pi = 0; pi < priors.size(); ++pi) {
        for (const Channel& side : sides) {
          const double gp =
              avg_guessing_prob(joint_from_channel(priors[pi], side));
          w.consider(fam.describe() + " | " + side.describe() +
                         (pi == 0 ? " uniform" : " skewed"),
                     lhl_exact_sd(fam, priors[pi], side),
                     lhl_bound(fam.output_bits(), gp));
        }
      }
    }
    out.push_back(w.record());
  }

  {
    // A fully revealing side channel pins the joint distance at 1 - 2^-m.
    WorstSlack w("lhl sd==1-2^-m at identity side", 1e-12);
    std::vector<HashFamily> fams;
    fams.push_back(HashFamily::gf_mult(4, 1));
    fams.push_back(HashFamily::matrix(4, 2));
    for (const HashFamily& fam : fams) {
      const int u = fam.input_bits();
      const double sd =
          lhl_exact_sd(fam, Dist::uniform_bits(u), Channel::identity(u));
      w.consider(fam.describe(),
                 std::abs(sd - (1.0 - std::ldexp(1.0, -fam.output_bits()))),
                 0.0);
    }
    out.push_back(w.record());
  }

  return out;
}

std::vector<RelationCheck> verify_suite(const std::string& name) {
  if (name == "probcore") return verify_probcore();
  if (name == "relations") return verify_relations();
  if (name == "xtx") return verify_xtx();
  if (name == "hash") return verify_hash();
  if (name == "all") {
    std::vector<RelationCheck> all = verify_probcore();
    for (auto* suite : {&verify_relations, &verify_xtx, &verify_hash}) {
      std::vector<RelationCheck> part = (*suite)();
      all.insert(all.end(), std::make_move_iterator(part.begin()),
                 std::make_move_iterator(part.end()));
    }
    return all;
  }
  throw ParseError("verify: unknown suite '" + name +
                   "' (expected probcore, relations, xtx, hash or all)");
}

bool suite_passed(const std::vector<RelationCheck>& checks) {
  return std::none_of(checks.begin(), checks.end(), [](const RelationCheck& c) {
    return c.status == CheckStatus::kFail;
  });
}

}  // namespace wiretap
