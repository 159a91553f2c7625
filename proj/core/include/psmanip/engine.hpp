#pragma once

#include "psmanip/types.hpp"

namespace psmanip {

/// Runs the simultaneous eating algorithm: every agent eats its most
/// preferred remaining item at unit speed, moving on whenever an item is
/// fully eaten. The continuous process is advanced event by event (item
/// depletions), in exact arithmetic, so simultaneous depletions are handled
/// as a single event. With n agents and m items every item is depleted by
/// time m/n.
EatingTrace run_ps(const OrdinalProfile& profile);

/// Same process, but agents do not eat during their pause intervals.
/// Segment boundaries are the item depletion times plus the pause-plan
/// endpoints. When every agent that could still eat is paused forever, the
/// leftover items keep an absent depletion time and the trace ends at the
/// last finite event. Depletions at a boundary are processed before agents
/// re-select, so an agent resuming exactly when its current target vanishes
/// picks the next remaining item.
EatingTrace run_with_pauses(const OrdinalProfile& profile, const PausePlan& plan);

}  // namespace psmanip
