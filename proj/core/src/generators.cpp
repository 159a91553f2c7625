#include "psmanip/generators.hpp"

#include <numeric>
#include <stdexcept>

namespace psmanip {

namespace {

// splitmix64 output function.
std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

Seed Seed::sub(std::uint64_t counter) const {
  return Seed(mix64(value_ + (counter + 1) * 0x9E3779B97F4A7C15ull));
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) {
    throw std::invalid_argument("Rng::below: zero bound");
  }
  const std::uint64_t limit = ~0ull - ~0ull % bound;
  std::uint64_t draw;
  do {
    draw = gen_();
  } while (draw >= limit);
  return draw % bound;
}

int Rng::int_in(int lo, int hi) {
  if (lo > hi) {
    throw std::invalid_argument("Rng::int_in: inverted range");
  }
  return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

OrdinalProfile random_profile(int n, int m, Seed seed) {
  if (n < 1 || m < 1) {
    throw std::invalid_argument("random_profile: need n >= 1 and m >= 1");
  }
  Rng rng(seed);
  OrdinalProfile profile;
  profile.n = n;
  profile.m = m;
  profile.prefs.resize(static_cast<std::size_t>(n));
  for (auto& row : profile.prefs) {
    row.resize(static_cast<std::size_t>(m));
    std::iota(row.begin(), row.end(), 0);
    rng.shuffle(row);
  }
  return profile;
}

DichotomousValuation dichotomous_for(const OrdinalProfile& profile, int agent, int k,
                                     Rational epsilon) {
  require_valid_profile(profile);
  if (agent < 0 || agent >= profile.n) {
    throw std::invalid_argument("dichotomous_for: agent out of range");
  }
  if (k < 1 || k > profile.m) {
    throw std::invalid_argument("dichotomous_for: k must be in [1, m]");
  }
  DichotomousValuation valuation;
  valuation.agent = agent;
  const std::vector<int>& order = profile.prefs[static_cast<std::size_t>(agent)];
  valuation.interested.assign(order.begin(), order.begin() + k);
  valuation.epsilon = std::move(epsilon);
  return valuation;
}

TightInstance tight_instance(int n) {
  if (n < 6 || n % 2 != 0) {
    throw std::invalid_argument("tight_instance: need even n >= 6");
  }
  TightInstance out;
  out.profile.n = n;
  out.profile.m = n;
  out.profile.prefs.resize(static_cast<std::size_t>(n));

  std::vector<int> index_order(static_cast<std::size_t>(n));
  std::iota(index_order.begin(), index_order.end(), 0);
  out.profile.prefs[0] = index_order;
  out.profile.prefs[1] = index_order;

  std::vector<int> zero_last(index_order.begin() + 1, index_order.end());
  zero_last.push_back(0);
  for (int agent = 2; agent < n; ++agent) {
    out.profile.prefs[static_cast<std::size_t>(agent)] = zero_last;
  }

  const int k = n / 2 - 1;
  out.valuation = dichotomous_for(out.profile, 0, k);

  // Items 1..k-1 first, then item 0, then the uninteresting tail.
  out.strategy.reserve(static_cast<std::size_t>(n));
  for (int item = 1; item < k; ++item) {
    out.strategy.push_back(item);
  }
  out.strategy.push_back(0);
  for (int item = k; item < n; ++item) {
    out.strategy.push_back(item);
  }
  return out;
}

WorkedExample worked_example() {
  WorkedExample out;
  out.profile.n = 3;
  out.profile.m = 3;
  out.profile.prefs = {{1, 0, 2}, {0, 1, 2}, {0, 2, 1}};
  out.utilities.agent = 0;
  out.utilities.values = {Rational(9, 10), Rational(1), Rational(0)};
  out.misreport = {0, 1, 2};
  return out;
}

DichotomizeResult dichotomize(const CardinalUtilities& utilities,
                              std::span<const Rational> truthful,
                              std::span<const Rational> manipulated, const Rational& epsilon) {
  const std::size_t m = utilities.values.size();
  if (m == 0 || truthful.size() != m || manipulated.size() != m) {
    throw std::invalid_argument("dichotomize: length mismatch");
  }
  if (!(epsilon > Rational(0))) {
    throw std::invalid_argument("dichotomize: epsilon must be positive");
  }
  for (std::size_t j = 0; j < m; ++j) {
    if (utilities.values[j] < Rational(0) || utilities.values[j] > Rational(1)) {
      throw std::invalid_argument("dichotomize: utilities must lie in [0, 1]");
    }
    if (j + 1 < m && !(utilities.values[j] > utilities.values[j + 1])) {
      throw std::invalid_argument("dichotomize: utilities must strictly decrease");
    }
    if (truthful[j] < Rational(0) || manipulated[j] < Rational(0)) {
      throw std::invalid_argument("dichotomize: durations must be nonnegative");
    }
  }

  Rational prefix_truthful;
  Rational prefix_manipulated;
  std::size_t best_k = 0;
  Rational c_max;
  for (std::size_t j = 0; j < m; ++j) {
    prefix_truthful += truthful[j];
    prefix_manipulated += manipulated[j];
    if (prefix_truthful.is_zero()) {
      if (!prefix_manipulated.is_zero()) {
        throw std::invalid_argument(
            "dichotomize: manipulated prefix is positive where the truthful prefix is zero "
            "(the prefix ratio is unbounded)");
      }
      continue;  // 0/0 prefix carries no weight
    }
    const Rational ratio = prefix_manipulated / prefix_truthful;
    if (best_k == 0 || ratio > c_max) {
      best_k = j + 1;
      c_max = ratio;
    }
  }
  if (best_k == 0) {
    throw std::invalid_argument("dichotomize: all-zero truthful durations");
  }

  DichotomizeResult out;
  out.k = best_k;
  out.c_max = std::move(c_max);
  out.b.agent = utilities.agent;
  out.b.values.resize(m);
  for (std::size_t j = 1; j <= m; ++j) {
    out.b.values[j - 1] = (j <= best_k)
                              ? Rational(1) - Rational(static_cast<long>(j - 1)) * epsilon
                              : Rational(static_cast<long>(m - j)) * epsilon;
  }
  return out;
}

}  // namespace psmanip
