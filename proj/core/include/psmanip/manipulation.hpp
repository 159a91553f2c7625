#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "psmanip/types.hpp"

namespace psmanip {

/// Candidate report space for a single manipulator.
///
/// FullPermutations enumerates all m! orderings (brute-force ground truth;
/// guarded by a cap since each candidate costs one engine run).
/// InterestedFirst enumerates the k! orderings of the interested items
/// placed first, with the remaining items appended in the manipulator's
/// truthful relative order.
struct SearchSpace {
  enum class Kind { kFullPermutations, kInterestedFirst };

  Kind kind = Kind::kFullPermutations;
  std::vector<int> interested;       // InterestedFirst only
  int full_permutation_cap = 8;      // FullPermutations guardrail, overridable

  static SearchSpace full(int cap = 8);
  static SearchSpace interested_first(std::vector<int> interested);
};

/// Streams candidate reports in deterministic lexicographic order.
class ReportEnumerator {
 public:
  ReportEnumerator(const SearchSpace& space, const std::vector<int>& truthful);

  /// Writes the next report into `out`; returns false when exhausted.
  bool next(std::vector<int>& out);

  /// k! or m!.
  std::uint64_t total() const;

 private:
  std::vector<int> head_;
  std::vector<int> tail_;
  bool first_ = true;
  bool done_ = false;
};

/// Materializes the whole stream. Intended for small spaces and tests.
std::vector<std::vector<int>> enumerate_reports(const SearchSpace& space,
                                                const std::vector<int>& truthful);

struct ManipulationResult {
  Rational truthful_utility;
  std::vector<int> best_report;
  Rational best_utility;
  /// best/truthful; exactly 1 when both utilities are 0; absent when the
  /// truthful utility is 0 but a report gains positive utility (unbounded).
  std::optional<Rational> ratio;
  std::uint64_t reports_evaluated = 0;
};

/// Evaluates every candidate report with all other agents fixed and returns
/// the exact maximizer. Ties go to the first candidate in enumeration
/// order; the truthful report only wins when the whole stream does strictly
/// worse (it is part of the stream whenever the interested set is a
/// truthful prefix, which the dichotomous valuations guarantee).
ManipulationResult best_response(const OrdinalProfile& profile, int agent,
                                 const AgentValuation& valuation, const SearchSpace& space);

/// The per-instance incentive ratio: best attainable utility over truthful
/// utility. Absent means unbounded (zero truthful utility improved upon);
/// that cannot happen for dichotomous valuations with a nonempty interested
/// set, since the manipulator eats its top interested item from time 0.
std::optional<Rational> incentive_ratio_instance(const OrdinalProfile& profile, int agent,
                                                 const AgentValuation& valuation,
                                                 const SearchSpace& space);

std::uint64_t factorial(int value);

}  // namespace psmanip
