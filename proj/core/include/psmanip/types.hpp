#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "psmanip/rational.hpp"

namespace psmanip {

// Agents and items are 0-indexed integers throughout. Named labels are a
// serialization concern only. All types here are immutable after
// construction and safe to share across threads.

/// One strict preference permutation per agent over the m items.
struct OrdinalProfile {
  int n = 0;
  int m = 0;
  std::vector<std::vector<int>> prefs;
};

enum class ProfileDefect {
  kDuplicateItem,
  kMissingItem,
  kItemOutOfRange,
};

struct ProfileViolation {
  int agent = 0;
  ProfileDefect defect = ProfileDefect::kDuplicateItem;
  int item = 0;
};

std::string describe(const ProfileViolation& violation);

/// Checks that every row is a permutation of {0..m-1}. Returns one
/// violation per offending agent (the first defect found in that row);
/// empty means the profile is well formed.
std::vector<ProfileViolation> validate_profile(const OrdinalProfile& profile);

/// Throws std::invalid_argument describing the first defect, if any.
void require_valid_profile(const OrdinalProfile& profile);

/// Per-item utilities of one agent, each in [0, 1].
struct CardinalUtilities {
  int agent = 0;
  std::vector<Rational> values;
};

/// True when the values strictly decrease along the given preference order
/// (ties are rejected; the mechanism assumes strict preferences).
bool compatible_with(const CardinalUtilities& utilities, const std::vector<int>& ordering);

/// Exact inner product of an allocation row with the utility vector.
Rational expected_utility(std::span<const Rational> row, const CardinalUtilities& utilities);

/// Interested-set valuation: utility of a row is the sum of the fractions
/// of interested items received. `interested` must be the top-|interested|
/// prefix of the agent's truthful ordering, kept in that order. `epsilon`
/// only matters when materializing a strict cardinal vector; exact utility
/// evaluation drops the epsilon terms.
struct DichotomousValuation {
  int agent = 0;
  std::vector<int> interested;
  Rational epsilon = Rational(1, 1000000000);
};

Rational dichotomous_utility(std::span<const Rational> row, const DichotomousValuation& valuation);

/// Materializes the strict cardinal vector induced by a dichotomous
/// valuation: along the agent's truthful ordering, position j (1-based)
/// gets 1 - (j-1)*eps while interested and (m-j)*eps after that. The result
/// is compatible with the agent's ordering for any sufficiently small eps.
CardinalUtilities materialize(const DichotomousValuation& valuation, const OrdinalProfile& profile);

using AgentValuation = std::variant<CardinalUtilities, DichotomousValuation>;

int valuation_agent(const AgentValuation& valuation);
Rational valuation_utility(const AgentValuation& valuation, std::span<const Rational> row);

/// Rejects valuations that do not fit the profile: cardinal values must
/// strictly decrease along the agent's ordering, dichotomous interested
/// sets must be a truthful-prefix. Throws std::invalid_argument.
void require_compatible(const AgentValuation& valuation, const OrdinalProfile& profile);

/// Half-open interval [start, end) during which an agent does not eat.
/// An absent end means the pause never lifts.
struct PauseInterval {
  Rational start;
  std::optional<Rational> end;
};

/// Per-agent disjoint, sorted pause intervals. Eliminating an agent from
/// the eating process is the single interval [0, unbounded).
class PausePlan {
 public:
  explicit PausePlan(int n_agents);

  static PausePlan none(int n_agents) { return PausePlan(n_agents); }
  static PausePlan eliminate(int n_agents, int agent);

  void add_pause(int agent, Rational start, std::optional<Rational> end);

  int n_agents() const { return static_cast<int>(by_agent_.size()); }
  const std::vector<PauseInterval>& intervals(int agent) const;
  bool empty() const;

  bool paused_at(int agent, const Rational& time) const;

  /// All finite interval endpoints, sorted and deduplicated.
  std::vector<Rational> boundaries() const;

  /// Throws std::invalid_argument on overlapping or inverted intervals or
  /// negative starts.
  void validate() const;

 private:
  std::vector<std::vector<PauseInterval>> by_agent_;
};

inline constexpr int kIdle = -1;

/// One constant-assignment stretch of an eating run: within [start, end)
/// each agent eats the recorded item (or kIdle).
struct Segment {
  Rational start;
  Rational end;
  std::vector<int> eating;
};

/// Full record of a simultaneous-eating run. Segments are contiguous from
/// time 0; items that are never depleted (possible only when the agents
/// that could eat them are paused forever) carry an absent depletion time.
/// Eating speed is 1, so the fraction of an item an agent receives equals
/// the time spent eating it.
class EatingTrace {
 public:
  int n() const { return n_; }
  int m() const { return m_; }

  const std::vector<Segment>& segments() const { return segments_; }

  const std::optional<Rational>& depletion_time(int item) const;
  const std::vector<std::optional<Rational>>& depletion_times() const { return depletion_; }

  /// x[i][j]: fraction of item j assigned to agent i.
  const std::vector<std::vector<Rational>>& allocation() const { return allocation_; }

  /// Time agent i spent eating item j. Identical to allocation() at unit
  /// eating speed.
  const std::vector<std::vector<Rational>>& durations() const { return allocation_; }

  /// 1 minus the consumption of the item up to `time`, integrated exactly
  /// over the segments (piecewise linear).
  Rational remaining_at(int item, const Rational& time) const;

  /// Latest depletion time over a nonempty item set; absent if any member
  /// is never depleted. Throws std::invalid_argument on an empty set.
  std::optional<Rational> completion_time(const std::vector<int>& items) const;

  /// End of the last finite segment (0 when the trace is empty).
  Rational end_time() const;

 private:
  friend EatingTrace run_with_pauses(const OrdinalProfile& profile, const PausePlan& plan);

  EatingTrace(int n, int m);

  int n_ = 0;
  int m_ = 0;
  std::vector<Segment> segments_;
  std::vector<std::optional<Rational>> depletion_;
  std::vector<std::vector<Rational>> allocation_;
};

/// Composite instance as read from / written to JSON.
struct Instance {
  OrdinalProfile profile;
  std::optional<AgentValuation> valuation;
  std::optional<PausePlan> pauses;
};

}  // namespace psmanip
