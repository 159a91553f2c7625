#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "psmanip/types.hpp"

namespace psmanip {

/// Reproducible seed with pure sub-seed derivation: sub(c) depends only on
/// (value, c), so work distributed across threads by index draws the same
/// randomness regardless of scheduling.
class Seed {
 public:
  explicit Seed(std::uint64_t value) : value_(value) {}

  std::uint64_t value() const { return value_; }
  Seed sub(std::uint64_t counter) const;

 private:
  std::uint64_t value_ = 0;
};

/// Deterministic uniform sampling on top of mt19937_64. The bounded draw
/// and the shuffle are implemented here (rejection sampling, Fisher-Yates)
/// rather than through std distributions, whose output is
/// implementation-defined; this keeps artifacts byte-identical across
/// standard libraries.
class Rng {
 public:
  explicit Rng(Seed seed) : gen_(seed.value()) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Unbiased draw from {0, ..., bound-1}.
  std::uint64_t below(std::uint64_t bound);

  /// Inclusive on both ends.
  int int_in(int lo, int hi);

  template <typename T>
  void shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(values[i - 1], values[j]);
    }
  }

 private:
  std::mt19937_64 gen_;
};

/// n independent uniform random permutations of {0..m-1}.
OrdinalProfile random_profile(int n, int m, Seed seed);

/// Interested set = the top-k prefix of the agent's truthful ordering.
DichotomousValuation dichotomous_for(const OrdinalProfile& profile, int agent, int k,
                                     Rational epsilon = Rational(1, 1000000000));

/// Family on which the 3/2 bound is approached. Agents 0 and 1 rank the
/// items in index order; everyone else ranks item 0 last. The manipulator
/// (agent 0) is interested in the first n/2-1 items, and `strategy` demotes
/// item 0 below the rest of the interested block. Requires even n >= 6
/// (below that the interested set degenerates to a single item).
struct TightInstance {
  OrdinalProfile profile;
  DichotomousValuation valuation;
  std::vector<int> strategy;
};
TightInstance tight_instance(int n);

/// The classic 3x3 instance showing the mechanism is manipulable: items
/// a=0, b=1, c=2; agent 0 ranks b>a>c with utilities (9/10, 1, 0), and
/// gains by misreporting a>b>c.
struct WorkedExample {
  OrdinalProfile profile;
  CardinalUtilities utilities;
  std::vector<int> misreport;
};
WorkedExample worked_example();

/// Collapses a strictly decreasing utility vector to a near-dichotomous one
/// without lowering the manipulation gain. Inputs are indexed by position
/// along the agent's preference order: `truthful` and `manipulated` are the
/// times spent eating each item in the two runs. k is the first maximizer
/// of the prefix-sum ratios, c_max the achieved maximum, and b the strict
/// vector 1-(j-1)*eps on the first k positions and (m-j)*eps after.
struct DichotomizeResult {
  std::size_t k = 0;  // 1-based prefix length
  CardinalUtilities b;
  Rational c_max;
};
DichotomizeResult dichotomize(const CardinalUtilities& utilities,
                              std::span<const Rational> truthful,
                              std::span<const Rational> manipulated, const Rational& epsilon);

}  // namespace psmanip
