#include "psmanip/types.hpp"

#include <algorithm>
#include <stdexcept>

namespace psmanip {

std::string describe(const ProfileViolation& violation) {
  std::string what = "agent " + std::to_string(violation.agent) + ": ";
  switch (violation.defect) {
    case ProfileDefect::kDuplicateItem:
      what += "duplicate item " + std::to_string(violation.item);
      break;
    case ProfileDefect::kMissingItem:
      what += "missing item " + std::to_string(violation.item);
      break;
    case ProfileDefect::kItemOutOfRange:
      what += "item " + std::to_string(violation.item) + " out of range";
      break;
  }
  return what;
}

std::vector<ProfileViolation> validate_profile(const OrdinalProfile& profile) {
  std::vector<ProfileViolation> violations;
  if (profile.n < 1 || profile.m < 1 || static_cast<int>(profile.prefs.size()) != profile.n) {
    violations.push_back({0, ProfileDefect::kMissingItem, 0});
    return violations;
  }
  std::vector<char> seen(static_cast<std::size_t>(profile.m));
  for (int agent = 0; agent < profile.n; ++agent) {
    std::fill(seen.begin(), seen.end(), 0);
    std::optional<ProfileViolation> found;
    for (int item : profile.prefs[agent]) {
      if (item < 0 || item >= profile.m) {
        found = ProfileViolation{agent, ProfileDefect::kItemOutOfRange, item};
        break;
      }
      if (seen[static_cast<std::size_t>(item)]) {
        found = ProfileViolation{agent, ProfileDefect::kDuplicateItem, item};
        break;
      }
      seen[static_cast<std::size_t>(item)] = 1;
    }
    if (!found) {
      for (int item = 0; item < profile.m; ++item) {
        if (!seen[static_cast<std::size_t>(item)]) {
          found = ProfileViolation{agent, ProfileDefect::kMissingItem, item};
          break;
        }
      }
    }
    if (found) {
      violations.push_back(*found);
    }
  }
  return violations;
}

void require_valid_profile(const OrdinalProfile& profile) {
  const auto violations = validate_profile(profile);
  if (!violations.empty()) {
    throw std::invalid_argument("invalid profile: " + describe(violations.front()));
  }
}

bool compatible_with(const CardinalUtilities& utilities, const std::vector<int>& ordering) {
  if (utilities.values.size() != ordering.size()) {
    return false;
  }
  for (const Rational& value : utilities.values) {
    if (value < Rational(0) || value > Rational(1)) {
      return false;
    }
  }
  for (std::size_t pos = 1; pos < ordering.size(); ++pos) {
    const Rational& prev = utilities.values[static_cast<std::size_t>(ordering[pos - 1])];
    const Rational& cur = utilities.values[static_cast<std::size_t>(ordering[pos])];
    if (!(prev > cur)) {
      return false;
    }
  }
  return true;
}

Rational expected_utility(std::span<const Rational> row, const CardinalUtilities& utilities) {
  if (row.size() != utilities.values.size()) {
    throw std::invalid_argument("expected_utility: row length does not match utility vector");
  }
  Rational total;
  for (std::size_t j = 0; j < row.size(); ++j) {
    total += utilities.values[j] * row[j];
  }
  return total;
}

Rational dichotomous_utility(std::span<const Rational> row, const DichotomousValuation& valuation) {
  Rational total;
  for (int item : valuation.interested) {
    if (item < 0 || static_cast<std::size_t>(item) >= row.size()) {
      throw std::invalid_argument("dichotomous_utility: interested item out of range");
    }
    total += row[static_cast<std::size_t>(item)];
  }
  return total;
}

CardinalUtilities materialize(const DichotomousValuation& valuation, const OrdinalProfile& profile) {
  if (valuation.agent < 0 || valuation.agent >= profile.n) {
    throw std::invalid_argument("materialize: agent out of range");
  }
  if (!(valuation.epsilon > Rational(0))) {
    throw std::invalid_argument("materialize: epsilon must be positive");
  }
  const std::vector<int>& order = profile.prefs[static_cast<std::size_t>(valuation.agent)];
  const int m = profile.m;
  const int k = static_cast<int>(valuation.interested.size());

  CardinalUtilities out;
  out.agent = valuation.agent;
  out.values.assign(static_cast<std::size_t>(m), Rational(0));
  for (int pos = 0; pos < m; ++pos) {
    const int item = order[static_cast<std::size_t>(pos)];
    const int j = pos + 1;  // 1-based position along the ordering
    if (j <= k) {
      out.values[static_cast<std::size_t>(item)] = Rational(1) - Rational(j - 1) * valuation.epsilon;
    } else {
      out.values[static_cast<std::size_t>(item)] = Rational(m - j) * valuation.epsilon;
    }
  }
  return out;
}

int valuation_agent(const AgentValuation& valuation) {
  return std::visit([](const auto& v) { return v.agent; }, valuation);
}

Rational valuation_utility(const AgentValuation& valuation, std::span<const Rational> row) {
  if (const auto* cardinal = std::get_if<CardinalUtilities>(&valuation)) {
    return expected_utility(row, *cardinal);
  }
  return dichotomous_utility(row, std::get<DichotomousValuation>(valuation));
}

void require_compatible(const AgentValuation& valuation, const OrdinalProfile& profile) {
  const int agent = valuation_agent(valuation);
  if (agent < 0 || agent >= profile.n) {
    throw std::invalid_argument("valuation agent out of range");
  }
  const std::vector<int>& order = profile.prefs[static_cast<std::size_t>(agent)];
  if (const auto* cardinal = std::get_if<CardinalUtilities>(&valuation)) {
    if (!compatible_with(*cardinal, order)) {
      throw std::invalid_argument(
          "cardinal utilities are not compatible with the agent's ordering "
          "(values must lie in [0,1] and strictly decrease along it)");
    }
    return;
  }
  const auto& dich = std::get<DichotomousValuation>(valuation);
  if (dich.interested.empty() || dich.interested.size() > order.size()) {
    throw std::invalid_argument("dichotomous interested set must have size in [1, m]");
  }
  if (!(dich.epsilon > Rational(0))) {
    throw std::invalid_argument("dichotomous epsilon must be positive");
  }
  for (std::size_t pos = 0; pos < dich.interested.size(); ++pos) {
    if (dich.interested[pos] != order[pos]) {
      throw std::invalid_argument(
          "dichotomous interested set must be the top prefix of the agent's truthful ordering");
    }
  }
}

PausePlan::PausePlan(int n_agents) {
  if (n_agents < 1) {
    throw std::invalid_argument("PausePlan: need at least one agent");
  }
  by_agent_.resize(static_cast<std::size_t>(n_agents));
}

PausePlan PausePlan::eliminate(int n_agents, int agent) {
  PausePlan plan(n_agents);
  plan.add_pause(agent, Rational(0), std::nullopt);
  return plan;
}

void PausePlan::add_pause(int agent, Rational start, std::optional<Rational> end) {
  if (agent < 0 || agent >= n_agents()) {
    throw std::invalid_argument("PausePlan: agent out of range");
  }
  auto& list = by_agent_[static_cast<std::size_t>(agent)];
  PauseInterval interval{std::move(start), std::move(end)};
  const auto pos = std::find_if(list.begin(), list.end(), [&](const PauseInterval& other) {
    return interval.start < other.start;
  });
  list.insert(pos, std::move(interval));
}

const std::vector<PauseInterval>& PausePlan::intervals(int agent) const {
  if (agent < 0 || agent >= n_agents()) {
    throw std::invalid_argument("PausePlan: agent out of range");
  }
  return by_agent_[static_cast<std::size_t>(agent)];
}

bool PausePlan::empty() const {
  return std::all_of(by_agent_.begin(), by_agent_.end(),
                     [](const auto& list) { return list.empty(); });
}

bool PausePlan::paused_at(int agent, const Rational& time) const {
  for (const PauseInterval& interval : intervals(agent)) {
    if (time < interval.start) {
      return false;  // sorted, nothing later can cover `time`
    }
    if (!interval.end || time < *interval.end) {
      return true;
    }
  }
  return false;
}

std::vector<Rational> PausePlan::boundaries() const {
  std::vector<Rational> out;
  for (const auto& list : by_agent_) {
    for (const PauseInterval& interval : list) {
      out.push_back(interval.start);
      if (interval.end) {
        out.push_back(*interval.end);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void PausePlan::validate() const {
  for (std::size_t agent = 0; agent < by_agent_.size(); ++agent) {
    const auto& list = by_agent_[agent];
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (list[i].start < Rational(0)) {
        throw std::invalid_argument("PausePlan: negative start for agent " + std::to_string(agent));
      }
      if (list[i].end && !(list[i].start < *list[i].end)) {
        throw std::invalid_argument("PausePlan: empty or inverted interval for agent " +
                                    std::to_string(agent));
      }
      if (i + 1 < list.size()) {
        if (!list[i].end || !(*list[i].end <= list[i + 1].start)) {
          throw std::invalid_argument("PausePlan: overlapping intervals for agent " +
                                      std::to_string(agent));
        }
      }
    }
  }
}

EatingTrace::EatingTrace(int n, int m) : n_(n), m_(m) {
  depletion_.resize(static_cast<std::size_t>(m));
  allocation_.assign(static_cast<std::size_t>(n),
                     std::vector<Rational>(static_cast<std::size_t>(m), Rational(0)));
}

const std::optional<Rational>& EatingTrace::depletion_time(int item) const {
  if (item < 0 || item >= m_) {
    throw std::invalid_argument("depletion_time: item out of range");
  }
  return depletion_[static_cast<std::size_t>(item)];
}

Rational EatingTrace::remaining_at(int item, const Rational& time) const {
  if (item < 0 || item >= m_) {
    throw std::invalid_argument("remaining_at: item out of range");
  }
  if (time < Rational(0)) {
    throw std::invalid_argument("remaining_at: negative time");
  }
  Rational consumed;
  for (const Segment& segment : segments_) {
    if (!(segment.start < time)) {
      break;
    }
    const Rational upto = std::min(segment.end, time);
    int eaters = 0;
    for (int assigned : segment.eating) {
      if (assigned == item) {
        ++eaters;
      }
    }
    if (eaters > 0) {
      consumed += Rational(eaters) * (upto - segment.start);
    }
  }
  return Rational(1) - consumed;
}

std::optional<Rational> EatingTrace::completion_time(const std::vector<int>& items) const {
  if (items.empty()) {
    throw std::invalid_argument("completion_time: empty item set");
  }
  std::optional<Rational> latest;
  for (int item : items) {
    const std::optional<Rational>& dep = depletion_time(item);
    if (!dep) {
      return std::nullopt;
    }
    if (!latest || *latest < *dep) {
      latest = *dep;
    }
  }
  return latest;
}

Rational EatingTrace::end_time() const {
  return segments_.empty() ? Rational(0) : segments_.back().end;
}

}  // namespace psmanip
