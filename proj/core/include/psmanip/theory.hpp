#pragma once

#include <optional>
#include <string>
#include <vector>

#include "psmanip/generators.hpp"
#include "psmanip/manipulation.hpp"
#include "psmanip/types.hpp"

namespace psmanip {

// Executable checks of the structural facts the 3/2 incentive bound rests
// on. Every comparison in this module is an exact rational comparison; a
// counterexample from any of these checks means an engine bug, not noise.

/// Completion times of an interested item set: truthful run vs the run with
/// the manipulator eliminated (paused forever). Eliminating is a pause, so
/// completion can only be delayed: completion_eliminated >= completion_truthful.
struct EliminationReport {
  Rational completion_truthful;
  Rational completion_eliminated;
  Rational ratio;
};

EliminationReport elimination_ratio(const OrdinalProfile& profile, int agent,
                                    const std::vector<int>& interested);

struct PauseCounterexample {
  int item = 0;
  Rational time;
  Rational normal_remaining;
  Rational pause_remaining;
};

/// Checks that pausing agents never makes any item deplete sooner: at every
/// merged segment breakpoint up to the item's pause-scenario depletion,
/// remaining(pause) >= remaining(normal). Both remainders are piecewise
/// linear, so breakpoint checks imply the continuous claim. Returns the
/// first violation, absent on pass.
std::optional<PauseCounterexample> pause_monotonicity_check(const OrdinalProfile& profile,
                                                            const PausePlan& plan);

enum class RegimeOutcome { kPass, kSkip, kViolation };

struct RegimeReport {
  RegimeOutcome outcome = RegimeOutcome::kSkip;
  EliminationReport elimination;
};

/// In the early-completion regime (truthful completion < 1/2), elimination
/// can stretch the completion time by at most 3/2. Instances outside the
/// regime are skipped.
RegimeReport theorem1_regime_check(const OrdinalProfile& profile, int agent,
                                   const std::vector<int>& interested);

struct BoundCheckReport {
  bool within_hypothesis = true;  // n >= m; the bound is only claimed there
  ManipulationResult result;
  bool violated = false;  // ratio > 3/2 (or unbounded)
};

/// Brute-force verification of the 3/2 incentive-ratio bound: full m!
/// best response with a dichotomous top-k valuation. Runs even when n < m,
/// but tags the report as outside the n >= m hypothesis.
BoundCheckReport global_bound_check(const OrdinalProfile& profile, int agent, int k,
                                    int full_permutation_cap = 8);

/// Bulk property verification used by the `verify` subcommand. Instance i
/// draws its randomness from seed.sub(i), so reports are identical for any
/// worker count.
struct VerifyConfig {
  bool lemma_pause = true;
  bool regime = true;
  bool global_bound = true;
  int seeds = 100;
  Seed seed{0};
  int jobs = 1;

  int pause_max_agents = 10;
  int pause_max_items = 10;
  int regime_agents = 10;   // n = m
  int regime_k = 2;
  int bound_agents = 4;     // n = m
};

struct VerifyCounterexample {
  std::string check;
  std::uint64_t instance = 0;
  std::string detail;
};

struct VerifyReport {
  std::uint64_t pause_checked = 0;
  std::uint64_t regime_checked = 0;
  std::uint64_t regime_skipped = 0;
  std::uint64_t bound_checked = 0;
  std::vector<VerifyCounterexample> counterexamples;

  bool ok() const { return counterexamples.empty(); }
};

VerifyReport run_verification(const VerifyConfig& config);

}  // namespace psmanip
