#include "psmanip/engine.hpp"

#include <algorithm>
#include <stdexcept>

namespace psmanip {

EatingTrace run_ps(const OrdinalProfile& profile) {
  return run_with_pauses(profile, PausePlan::none(std::max(profile.n, 1)));
}

EatingTrace run_with_pauses(const OrdinalProfile& profile, const PausePlan& plan) {
  require_valid_profile(profile);
  plan.validate();
  if (plan.n_agents() != profile.n) {
    throw std::invalid_argument("run_with_pauses: plan agent count does not match profile");
  }

  const int n = profile.n;
  const int m = profile.m;

  EatingTrace trace(n, m);
  std::vector<Rational> remaining(static_cast<std::size_t>(m), Rational(1));
  std::vector<char> depleted(static_cast<std::size_t>(m), 0);
  std::vector<int> cursor(static_cast<std::size_t>(n), 0);

  const std::vector<Rational> bounds = plan.boundaries();
  std::size_t bound_idx = 0;

  std::vector<int> eating(static_cast<std::size_t>(n), kIdle);
  std::vector<int> eaters(static_cast<std::size_t>(m), 0);

  Rational now(0);
  int depleted_count = 0;

  while (depleted_count < m) {
    // Who eats what at `now`. Cursors only ever move forward, so the scan
    // over each preference list is amortized O(m) per run.
    std::fill(eaters.begin(), eaters.end(), 0);
    bool any_eater = false;
    for (int i = 0; i < n; ++i) {
      eating[static_cast<std::size_t>(i)] = kIdle;
      if (plan.paused_at(i, now)) {
        continue;
      }
      const std::vector<int>& prefs = profile.prefs[static_cast<std::size_t>(i)];
      int& cur = cursor[static_cast<std::size_t>(i)];
      while (cur < m && depleted[static_cast<std::size_t>(prefs[static_cast<std::size_t>(cur)])]) {
        ++cur;
      }
      if (cur < m) {
        const int item = prefs[static_cast<std::size_t>(cur)];
        eating[static_cast<std::size_t>(i)] = item;
        ++eaters[static_cast<std::size_t>(item)];
        any_eater = true;
      }
    }

    while (bound_idx < bounds.size() && bounds[bound_idx] <= now) {
      ++bound_idx;
    }
    const bool have_bound = bound_idx < bounds.size();

    if (!any_eater && !have_bound) {
      // Everyone who could still eat is paused forever; leftover items keep
      // an absent depletion time and the trace ends here.
      break;
    }

    std::optional<Rational> next_depletion;
    for (int j = 0; j < m; ++j) {
      if (eaters[static_cast<std::size_t>(j)] > 0) {
        Rational candidate =
            now + remaining[static_cast<std::size_t>(j)] / Rational(eaters[static_cast<std::size_t>(j)]);
        if (!next_depletion || candidate < *next_depletion) {
          next_depletion = std::move(candidate);
        }
      }
    }

    Rational next = next_depletion ? *next_depletion : bounds[bound_idx];
    if (next_depletion && have_bound && bounds[bound_idx] < next) {
      next = bounds[bound_idx];
    }

    const Rational dt = next - now;
    for (int i = 0; i < n; ++i) {
      const int item = eating[static_cast<std::size_t>(i)];
      if (item != kIdle) {
        trace.allocation_[static_cast<std::size_t>(i)][static_cast<std::size_t>(item)] += dt;
      }
    }
    for (int j = 0; j < m; ++j) {
      const int count = eaters[static_cast<std::size_t>(j)];
      if (count > 0) {
        remaining[static_cast<std::size_t>(j)] -= Rational(count) * dt;
        if (remaining[static_cast<std::size_t>(j)].is_zero()) {
          depleted[static_cast<std::size_t>(j)] = 1;
          trace.depletion_[static_cast<std::size_t>(j)] = next;
          ++depleted_count;
        }
      }
    }
    trace.segments_.push_back(Segment{now, next, eating});
    now = next;
  }

  return trace;
}

}  // namespace psmanip
