#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "psmanip/generators.hpp"
#include "psmanip/manipulation.hpp"
#include "psmanip/version.hpp"

namespace psmanip {

/// Monte Carlo grid over (n, k) cells with n = m: random profiles, a
/// dichotomous top-k manipulator (agent 0), best response in the configured
/// space, exact per-instance ratios.
struct ExperimentConfig {
  std::vector<int> n_values = {8, 10, 12};
  std::vector<int> k_values = {2, 3, 4, 5, 6};
  int instances_per_cell = 1000;
  Seed seed{0};
  SearchSpace::Kind space = SearchSpace::Kind::kInterestedFirst;
  int full_permutation_cap = 8;
  int jobs = 1;
  /// Refuse configurations whose estimated engine-run count exceeds this.
  std::uint64_t run_budget = 1000000000ull;
};

/// Aggregates are exact rationals; decimals appear only at render time.
struct CellStats {
  int n = 0;
  int k = 0;
  int count = 0;
  Rational mean_ratio;
  Rational variance_ratio;  // population variance of the exact ratios
  Rational max_ratio;
  Rational fraction_manipulable;  // instances with ratio > 1

  double std_ratio() const;

  friend bool operator==(const CellStats&, const CellStats&) = default;
};

/// Estimated engine runs for a config (used for the budget guard).
std::uint64_t estimate_engine_runs(const ExperimentConfig& config);

/// One-line rendering of the data-relevant parts of a config (grid, cell
/// size, search space). Worker count is an execution detail and is left
/// out so artifacts stay byte-identical across parallelism levels.
std::string config_summary(const ExperimentConfig& config);

/// Runs every cell. Instance t of cell c draws its profile from
/// seed.sub(c).sub(t), so the table is identical for any worker count.
/// Throws if the estimated engine-run count exceeds the budget, and if any
/// cell with n >= m produces a ratio above 3/2 (which would disprove the
/// bound the whole toolkit is built around).
std::vector<CellStats> run_grid(const ExperimentConfig& config);

/// Non-failing trend screens: for fixed n the mean ratio should not
/// increase in k, for fixed k it should not decrease in n, each up to
/// `slack`. Returns one message per breach.
std::vector<std::string> trend_warnings(const std::vector<CellStats>& table,
                                        const Rational& slack = Rational(1, 200));

/// Reproducibility header: everything needed to re-derive the artifact.
/// `generated_at` is the only field excluded from byte-identity checks.
struct ExperimentMeta {
  std::uint64_t seed = 0;
  std::string config_summary;
  std::string generated_at;
  std::string version = kVersion;
};

enum class EmitFormat { kCsv, kJson };

std::string render_results(const std::vector<CellStats>& table, const ExperimentMeta& meta,
                           EmitFormat format);

/// Writes the rendered table to a file; throws on an unwritable
/// destination or an empty table.
void emit_results(const std::vector<CellStats>& table, const ExperimentMeta& meta,
                  EmitFormat format, const std::string& path);

/// Inverse of the JSON rendering, exact fields included.
std::vector<CellStats> cells_from_json(const std::string& text);

}  // namespace psmanip
