#include "psmanip/theory.hpp"

#include <algorithm>
#include <stdexcept>

#include "psmanip/engine.hpp"
#include "psmanip/parallel.hpp"

namespace psmanip {

namespace {

void require_interested(const OrdinalProfile& profile, const std::vector<int>& interested) {
  if (interested.empty()) {
    throw std::invalid_argument("interested item set must be nonempty");
  }
  std::vector<char> seen(static_cast<std::size_t>(profile.m), 0);
  for (int item : interested) {
    if (item < 0 || item >= profile.m) {
      throw std::invalid_argument("interested item out of range");
    }
    if (seen[static_cast<std::size_t>(item)]) {
      throw std::invalid_argument("interested item listed twice");
    }
    seen[static_cast<std::size_t>(item)] = 1;
  }
}

std::vector<std::vector<int>> eater_counts(const EatingTrace& trace) {
  std::vector<std::vector<int>> counts(trace.segments().size(),
                                       std::vector<int>(static_cast<std::size_t>(trace.m()), 0));
  for (std::size_t s = 0; s < trace.segments().size(); ++s) {
    for (int assigned : trace.segments()[s].eating) {
      if (assigned != kIdle) {
        ++counts[s][static_cast<std::size_t>(assigned)];
      }
    }
  }
  return counts;
}

/// Walks one item's consumption along ascending query times.
class ConsumptionWalker {
 public:
  ConsumptionWalker(const EatingTrace& trace, const std::vector<std::vector<int>>& counts, int item)
      : trace_(trace), counts_(counts), item_(static_cast<std::size_t>(item)) {}

  Rational remaining(const Rational& time) {
    const auto& segments = trace_.segments();
    while (next_ < segments.size() && segments[next_].end <= time) {
      consumed_ += Rational(counts_[next_][item_]) * (segments[next_].end - segments[next_].start);
      ++next_;
    }
    Rational consumed = consumed_;
    if (next_ < segments.size() && segments[next_].start < time) {
      consumed += Rational(counts_[next_][item_]) * (time - segments[next_].start);
    }
    return Rational(1) - consumed;
  }

 private:
  const EatingTrace& trace_;
  const std::vector<std::vector<int>>& counts_;
  std::size_t item_;
  std::size_t next_ = 0;
  Rational consumed_;
};

}  // namespace

EliminationReport elimination_ratio(const OrdinalProfile& profile, int agent,
                                    const std::vector<int>& interested) {
  require_valid_profile(profile);
  if (agent < 0 || agent >= profile.n) {
    throw std::invalid_argument("elimination_ratio: agent out of range");
  }
  require_interested(profile, interested);
  if (profile.n < profile.m) {
    throw std::invalid_argument("elimination_ratio: requires n >= m");
  }

  const EatingTrace truthful = run_ps(profile);
  const std::optional<Rational> completion = truthful.completion_time(interested);

  const EatingTrace eliminated =
      run_with_pauses(profile, PausePlan::eliminate(profile.n, agent));
  const std::optional<Rational> completion_eliminated = eliminated.completion_time(interested);
  if (!completion_eliminated) {
    throw std::runtime_error(
        "elimination_ratio: some interested item is never depleted once agent " +
        std::to_string(agent) + " is eliminated");
  }

  EliminationReport report;
  report.completion_truthful = *completion;
  report.completion_eliminated = *completion_eliminated;
  report.ratio = report.completion_eliminated / report.completion_truthful;
  return report;
}

std::optional<PauseCounterexample> pause_monotonicity_check(const OrdinalProfile& profile,
                                                            const PausePlan& plan) {
  const EatingTrace normal = run_ps(profile);
  const EatingTrace paused = run_with_pauses(profile, plan);

  std::vector<Rational> points;
  points.push_back(Rational(0));
  for (const EatingTrace* trace : {&normal, &paused}) {
    for (const Segment& segment : trace->segments()) {
      points.push_back(segment.start);
      points.push_back(segment.end);
    }
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  const auto counts_normal = eater_counts(normal);
  const auto counts_paused = eater_counts(paused);

  for (int item = 0; item < profile.m; ++item) {
    const std::optional<Rational>& depletion = paused.depletion_time(item);
    ConsumptionWalker walk_normal(normal, counts_normal, item);
    ConsumptionWalker walk_paused(paused, counts_paused, item);
    for (const Rational& time : points) {
      if (depletion && *depletion < time) {
        break;
      }
      Rational remaining_normal = walk_normal.remaining(time);
      Rational remaining_paused = walk_paused.remaining(time);
      if (remaining_paused < remaining_normal) {
        return PauseCounterexample{item, time, std::move(remaining_normal),
                                   std::move(remaining_paused)};
      }
    }
  }
  return std::nullopt;
}

RegimeReport theorem1_regime_check(const OrdinalProfile& profile, int agent,
                                   const std::vector<int>& interested) {
  RegimeReport report;
  report.elimination = elimination_ratio(profile, agent, interested);
  if (!(report.elimination.completion_truthful < Rational(1, 2))) {
    report.outcome = RegimeOutcome::kSkip;
    return report;
  }
  const bool ok = report.elimination.completion_eliminated <=
                  Rational(3, 2) * report.elimination.completion_truthful;
  report.outcome = ok ? RegimeOutcome::kPass : RegimeOutcome::kViolation;
  return report;
}

BoundCheckReport global_bound_check(const OrdinalProfile& profile, int agent, int k,
                                    int full_permutation_cap) {
  BoundCheckReport report;
  report.within_hypothesis = profile.n >= profile.m;
  const DichotomousValuation valuation = dichotomous_for(profile, agent, k);
  report.result =
      best_response(profile, agent, valuation, SearchSpace::full(full_permutation_cap));
  report.violated = !report.result.ratio.has_value() || *report.result.ratio > Rational(3, 2);
  return report;
}

namespace {

PausePlan random_pause_plan(int n, Rng& rng) {
  PausePlan plan(n);
  for (int agent = 0; agent < n; ++agent) {
    if (rng.below(4) == 0) {
      continue;  // no pauses for this agent
    }
    if (rng.below(6) == 0) {
      plan.add_pause(agent, Rational(0), std::nullopt);  // eliminated
      continue;
    }
    Rational cursor(rng.int_in(0, 4), rng.int_in(1, 4));
    const int intervals = rng.int_in(1, 2);
    for (int i = 0; i < intervals; ++i) {
      const Rational start = cursor;
      if (rng.below(8) == 0) {
        plan.add_pause(agent, start, std::nullopt);
        break;
      }
      const Rational length(rng.int_in(1, 6), rng.int_in(1, 4));
      plan.add_pause(agent, start, start + length);
      cursor = start + length + Rational(rng.int_in(0, 3), rng.int_in(1, 3));
    }
  }
  return plan;
}

std::string describe(const PauseCounterexample& ce) {
  return "item " + std::to_string(ce.item) + " at t=" + ce.time.str() +
         ": pause remaining " + ce.pause_remaining.str() + " < normal remaining " +
         ce.normal_remaining.str();
}

}  // namespace

VerifyReport run_verification(const VerifyConfig& config) {
  if (config.seeds < 0) {
    throw std::invalid_argument("run_verification: negative seed count");
  }
  const auto count = static_cast<std::uint64_t>(config.seeds);
  VerifyReport report;

  if (config.lemma_pause) {
    const Seed stream = config.seed.sub(0);
    std::vector<std::optional<PauseCounterexample>> slots(count);
    parallel_for_index(count, config.jobs, [&](std::uint64_t i) {
      const Seed instance_seed = stream.sub(i);
      Rng rng(instance_seed);
      const int n = rng.int_in(1, config.pause_max_agents);
      const int m = rng.int_in(1, config.pause_max_items);
      const OrdinalProfile profile = random_profile(n, m, instance_seed.sub(1));
      const PausePlan plan = random_pause_plan(n, rng);
      slots[i] = pause_monotonicity_check(profile, plan);
    });
    for (std::uint64_t i = 0; i < count; ++i) {
      ++report.pause_checked;
      if (slots[i]) {
        report.counterexamples.push_back({"pause_monotonicity", i, describe(*slots[i])});
      }
    }
  }

  if (config.regime) {
    const Seed stream = config.seed.sub(1);
    std::vector<RegimeOutcome> slots(count, RegimeOutcome::kSkip);
    std::vector<Rational> completions(count);
    std::vector<Rational> eliminated(count);
    parallel_for_index(count, config.jobs, [&](std::uint64_t i) {
      const Seed instance_seed = stream.sub(i);
      const OrdinalProfile profile =
          random_profile(config.regime_agents, config.regime_agents, instance_seed);
      const DichotomousValuation valuation = dichotomous_for(profile, 0, config.regime_k);
      const RegimeReport regime = theorem1_regime_check(profile, 0, valuation.interested);
      slots[i] = regime.outcome;
      completions[i] = regime.elimination.completion_truthful;
      eliminated[i] = regime.elimination.completion_eliminated;
    });
    for (std::uint64_t i = 0; i < count; ++i) {
      switch (slots[i]) {
        case RegimeOutcome::kPass:
          ++report.regime_checked;
          break;
        case RegimeOutcome::kSkip:
          ++report.regime_skipped;
          break;
        case RegimeOutcome::kViolation:
          ++report.regime_checked;
          report.counterexamples.push_back(
              {"elimination_regime", i,
               "completion " + completions[i].str() + " but eliminated completion " +
                   eliminated[i].str() + " exceeds 3/2 of it"});
          break;
      }
    }
  }

  if (config.global_bound) {
    const Seed stream = config.seed.sub(2);
    std::vector<std::optional<Rational>> ratios(count);
    std::vector<bool> violated(count, false);
    parallel_for_index(count, config.jobs, [&](std::uint64_t i) {
      const Seed instance_seed = stream.sub(i);
      Rng rng(instance_seed);
      const int n = config.bound_agents;
      const int k = rng.int_in(1, n);
      const OrdinalProfile profile = random_profile(n, n, instance_seed.sub(1));
      const BoundCheckReport bound = global_bound_check(profile, 0, k);
      ratios[i] = bound.result.ratio;
      violated[i] = bound.violated;
    });
    for (std::uint64_t i = 0; i < count; ++i) {
      ++report.bound_checked;
      if (violated[i]) {
        report.counterexamples.push_back(
            {"global_bound", i,
             ratios[i] ? "ratio " + ratios[i]->str() + " exceeds 3/2" : "unbounded ratio"});
      }
    }
  }

  return report;
}

}  // namespace psmanip
