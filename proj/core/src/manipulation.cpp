#include "psmanip/manipulation.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "psmanip/engine.hpp"

namespace psmanip {

std::uint64_t factorial(int value) {
  if (value < 0 || value > 20) {
    throw std::invalid_argument("factorial: out of uint64 range");
  }
  std::uint64_t out = 1;
  for (int i = 2; i <= value; ++i) {
    out *= static_cast<std::uint64_t>(i);
  }
  return out;
}

SearchSpace SearchSpace::full(int cap) {
  SearchSpace space;
  space.kind = Kind::kFullPermutations;
  space.full_permutation_cap = cap;
  return space;
}

SearchSpace SearchSpace::interested_first(std::vector<int> interested) {
  SearchSpace space;
  space.kind = Kind::kInterestedFirst;
  space.interested = std::move(interested);
  return space;
}

ReportEnumerator::ReportEnumerator(const SearchSpace& space, const std::vector<int>& truthful) {
  const int m = static_cast<int>(truthful.size());
  if (space.kind == SearchSpace::Kind::kFullPermutations) {
    if (m > space.full_permutation_cap) {
      throw std::invalid_argument(
          "FullPermutations: m=" + std::to_string(m) + " exceeds the cap of " +
          std::to_string(space.full_permutation_cap) +
          " (" + std::to_string(m) + "! engine runs per instance); raise the cap to override");
    }
    head_.resize(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) {
      head_[static_cast<std::size_t>(j)] = j;
    }
    return;
  }

  if (space.interested.empty() || space.interested.size() > truthful.size()) {
    throw std::invalid_argument("InterestedFirst: interested set must have size in [1, m]");
  }
  head_ = space.interested;
  std::sort(head_.begin(), head_.end());
  if (std::adjacent_find(head_.begin(), head_.end()) != head_.end()) {
    throw std::invalid_argument("InterestedFirst: duplicate interested item");
  }
  std::vector<char> is_interested(truthful.size(), 0);
  for (int item : head_) {
    if (item < 0 || item >= m) {
      throw std::invalid_argument("InterestedFirst: interested item out of range");
    }
    is_interested[static_cast<std::size_t>(item)] = 1;
  }
  for (int item : truthful) {
    if (!is_interested[static_cast<std::size_t>(item)]) {
      tail_.push_back(item);
    }
  }
}

bool ReportEnumerator::next(std::vector<int>& out) {
  if (done_) {
    return false;
  }
  if (first_) {
    first_ = false;
  } else if (!std::next_permutation(head_.begin(), head_.end())) {
    done_ = true;
    return false;
  }
  out.clear();
  out.reserve(head_.size() + tail_.size());
  out.insert(out.end(), head_.begin(), head_.end());
  out.insert(out.end(), tail_.begin(), tail_.end());
  return true;
}

std::uint64_t ReportEnumerator::total() const {
  return factorial(static_cast<int>(head_.size()));
}

std::vector<std::vector<int>> enumerate_reports(const SearchSpace& space,
                                                const std::vector<int>& truthful) {
  ReportEnumerator stream(space, truthful);
  std::vector<std::vector<int>> out;
  std::vector<int> report;
  while (stream.next(report)) {
    out.push_back(report);
  }
  return out;
}

ManipulationResult best_response(const OrdinalProfile& profile, int agent,
                                 const AgentValuation& valuation, const SearchSpace& space) {
  require_valid_profile(profile);
  if (agent < 0 || agent >= profile.n) {
    throw std::invalid_argument("best_response: agent out of range");
  }
  if (valuation_agent(valuation) != agent) {
    throw std::invalid_argument("best_response: valuation belongs to a different agent");
  }
  require_compatible(valuation, profile);

  const std::vector<int>& truthful = profile.prefs[static_cast<std::size_t>(agent)];
  const EatingTrace truthful_trace = run_ps(profile);
  const Rational truthful_utility =
      valuation_utility(valuation, truthful_trace.allocation()[static_cast<std::size_t>(agent)]);

  ManipulationResult result;
  result.truthful_utility = truthful_utility;

  OrdinalProfile work = profile;
  ReportEnumerator stream(space, truthful);
  std::vector<int> report;
  bool have_best = false;
  while (stream.next(report)) {
    Rational utility;
    if (report == truthful) {
      utility = truthful_utility;
    } else {
      work.prefs[static_cast<std::size_t>(agent)] = report;
      const EatingTrace trace = run_ps(work);
      utility = valuation_utility(valuation, trace.allocation()[static_cast<std::size_t>(agent)]);
    }
    ++result.reports_evaluated;
    if (!have_best || utility > result.best_utility) {
      have_best = true;
      result.best_utility = utility;
      result.best_report = report;
    }
  }

  // The truthful report is the floor; it only decides the result when the
  // stream does not contain it (cardinal valuation with a custom space).
  if (!have_best || result.best_utility < truthful_utility) {
    result.best_utility = truthful_utility;
    result.best_report = truthful;
  }

  if (truthful_utility > Rational(0)) {
    result.ratio = result.best_utility / truthful_utility;
  } else if (result.best_utility.is_zero()) {
    result.ratio = Rational(1);
  }  // else: unbounded, ratio stays absent
  return result;
}

std::optional<Rational> incentive_ratio_instance(const OrdinalProfile& profile, int agent,
                                                 const AgentValuation& valuation,
                                                 const SearchSpace& space) {
  return best_response(profile, agent, valuation, space).ratio;
}

}  // namespace psmanip
