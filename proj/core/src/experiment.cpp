#include "psmanip/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "psmanip/parallel.hpp"

namespace psmanip {

namespace {

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

}  // namespace

double CellStats::std_ratio() const {
  return std::sqrt(variance_ratio.to_double());
}

std::uint64_t estimate_engine_runs(const ExperimentConfig& config) {
  std::uint64_t total = 0;
  for (int n : config.n_values) {
    for (int k : config.k_values) {
      const std::uint64_t candidates = (config.space == SearchSpace::Kind::kInterestedFirst)
                                           ? factorial(k)
                                           : factorial(n);
      total += static_cast<std::uint64_t>(config.instances_per_cell) * (candidates + 1);
    }
  }
  return total;
}

std::string config_summary(const ExperimentConfig& config) {
  std::ostringstream out;
  out << "n=";
  for (std::size_t i = 0; i < config.n_values.size(); ++i) {
    out << (i ? "," : "") << config.n_values[i];
  }
  out << " k=";
  for (std::size_t i = 0; i < config.k_values.size(); ++i) {
    out << (i ? "," : "") << config.k_values[i];
  }
  out << " per_cell=" << config.instances_per_cell << " space="
      << (config.space == SearchSpace::Kind::kInterestedFirst ? "interested-first" : "full");
  return out.str();
}

std::vector<CellStats> run_grid(const ExperimentConfig& config) {
  if (config.n_values.empty() || config.k_values.empty()) {
    throw std::invalid_argument("run_grid: empty grid");
  }
  if (config.instances_per_cell < 1) {
    throw std::invalid_argument("run_grid: need at least one instance per cell");
  }
  const int min_n = *std::min_element(config.n_values.begin(), config.n_values.end());
  for (int n : config.n_values) {
    if (n < 1) {
      throw std::invalid_argument("run_grid: n must be positive");
    }
  }
  for (int k : config.k_values) {
    if (k < 1 || k > min_n) {
      throw std::invalid_argument("run_grid: k values must lie in [1, min(n_values)]");
    }
  }
  const std::uint64_t estimate = estimate_engine_runs(config);
  if (estimate > config.run_budget) {
    throw std::invalid_argument("run_grid: estimated " + std::to_string(estimate) +
                                " engine runs exceed the budget of " +
                                std::to_string(config.run_budget) +
                                "; shrink the grid or raise the budget");
  }

  std::vector<CellStats> table;
  std::uint64_t cell_index = 0;
  for (int n : config.n_values) {
    for (int k : config.k_values) {
      const Seed cell_seed = config.seed.sub(cell_index);
      ++cell_index;
      const auto count = static_cast<std::uint64_t>(config.instances_per_cell);
      std::vector<Rational> ratios(count);

      parallel_for_index(count, config.jobs, [&](std::uint64_t t) {
        const OrdinalProfile profile = random_profile(n, n, cell_seed.sub(t));
        const DichotomousValuation valuation = dichotomous_for(profile, 0, k);
        const SearchSpace space =
            (config.space == SearchSpace::Kind::kInterestedFirst)
                ? SearchSpace::interested_first(valuation.interested)
                : SearchSpace::full(config.full_permutation_cap);
        const ManipulationResult result = best_response(profile, 0, valuation, space);
        if (!result.ratio) {
          throw std::runtime_error("run_grid: unbounded ratio on a dichotomous instance");
        }
        ratios[t] = *result.ratio;
      });

      CellStats stats;
      stats.n = n;
      stats.k = k;
      stats.count = config.instances_per_cell;
      Rational sum;
      Rational sum_sq;
      int manipulable = 0;
      stats.max_ratio = ratios.front();
      for (const Rational& ratio : ratios) {
        sum += ratio;
        sum_sq += ratio * ratio;
        if (stats.max_ratio < ratio) {
          stats.max_ratio = ratio;
        }
        if (ratio > Rational(1)) {
          ++manipulable;
        }
      }
      stats.mean_ratio = sum / Rational(config.instances_per_cell);
      stats.variance_ratio =
          sum_sq / Rational(config.instances_per_cell) - stats.mean_ratio * stats.mean_ratio;
      stats.fraction_manipulable = Rational(manipulable, config.instances_per_cell);

      // n = m in every cell, so the 3/2 bound applies unconditionally.
      if (stats.max_ratio > Rational(3, 2)) {
        throw std::runtime_error("run_grid: cell n=" + std::to_string(n) +
                                 " k=" + std::to_string(k) + " produced ratio " +
                                 stats.max_ratio.str() + " above 3/2");
      }
      table.push_back(std::move(stats));
    }
  }
  return table;
}

std::vector<std::string> trend_warnings(const std::vector<CellStats>& table,
                                        const Rational& slack) {
  std::vector<std::string> warnings;
  std::map<std::pair<int, int>, const CellStats*> cells;
  std::vector<int> n_values;
  std::vector<int> k_values;
  for (const CellStats& cell : table) {
    cells[{cell.n, cell.k}] = &cell;
    n_values.push_back(cell.n);
    k_values.push_back(cell.k);
  }
  auto uniq = [](std::vector<int>& values) {
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
  };
  uniq(n_values);
  uniq(k_values);

  for (int n : n_values) {
    for (std::size_t i = 0; i + 1 < k_values.size(); ++i) {
      const auto lo = cells.find({n, k_values[i]});
      const auto hi = cells.find({n, k_values[i + 1]});
      if (lo == cells.end() || hi == cells.end()) {
        continue;
      }
      if (hi->second->mean_ratio > lo->second->mean_ratio + slack) {
        warnings.push_back("mean ratio at n=" + std::to_string(n) + " rises from k=" +
                           std::to_string(k_values[i]) + " (" +
                           decimal_string(lo->second->mean_ratio, 6) + ") to k=" +
                           std::to_string(k_values[i + 1]) + " (" +
                           decimal_string(hi->second->mean_ratio, 6) + ")");
      }
    }
  }
  for (int k : k_values) {
    for (std::size_t i = 0; i + 1 < n_values.size(); ++i) {
      const auto lo = cells.find({n_values[i], k});
      const auto hi = cells.find({n_values[i + 1], k});
      if (lo == cells.end() || hi == cells.end()) {
        continue;
      }
      if (hi->second->mean_ratio + slack < lo->second->mean_ratio) {
        warnings.push_back("mean ratio at k=" + std::to_string(k) + " falls from n=" +
                           std::to_string(n_values[i]) + " (" +
                           decimal_string(lo->second->mean_ratio, 6) + ") to n=" +
                           std::to_string(n_values[i + 1]) + " (" +
                           decimal_string(hi->second->mean_ratio, 6) + ")");
      }
    }
  }
  return warnings;
}

std::string render_results(const std::vector<CellStats>& table, const ExperimentMeta& meta,
                           EmitFormat format) {
  if (table.empty()) {
    throw std::invalid_argument("render_results: empty table");
  }
  if (format == EmitFormat::kCsv) {
    std::ostringstream out;
    out << "# psmanip " << meta.version << " experiment " << meta.config_summary << "\n";
    out << "# seed=" << meta.seed << "\n";
    out << "# generated_at=" << meta.generated_at << "\n";
    out << "n,k,count,mean_ratio,std_ratio,max_ratio,fraction_manipulable,seed\n";
    for (const CellStats& cell : table) {
      out << cell.n << ',' << cell.k << ',' << cell.count << ','
          << decimal_string(cell.mean_ratio) << ',' << format_double(cell.std_ratio()) << ','
          << cell.max_ratio.str() << ',' << decimal_string(cell.fraction_manipulable) << ','
          << meta.seed << "\n";
    }
    return out.str();
  }

  nlohmann::json doc;
  doc["meta"] = {{"seed", meta.seed},
                 {"config", meta.config_summary},
                 {"generated_at", meta.generated_at},
                 {"version", meta.version}};
  doc["cells"] = nlohmann::json::array();
  for (const CellStats& cell : table) {
    doc["cells"].push_back({{"n", cell.n},
                            {"k", cell.k},
                            {"count", cell.count},
                            {"mean_ratio", cell.mean_ratio.str()},
                            {"mean_ratio_decimal", decimal_string(cell.mean_ratio)},
                            {"variance_ratio", cell.variance_ratio.str()},
                            {"std_ratio", cell.std_ratio()},
                            {"max_ratio", cell.max_ratio.str()},
                            {"fraction_manipulable", cell.fraction_manipulable.str()},
                            {"fraction_manipulable_decimal",
                             decimal_string(cell.fraction_manipulable)}});
  }
  return doc.dump(2) + "\n";
}

void emit_results(const std::vector<CellStats>& table, const ExperimentMeta& meta,
                  EmitFormat format, const std::string& path) {
  const std::string rendered = render_results(table, meta, format);
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("emit_results: cannot open '" + path + "' for writing");
  }
  out << rendered;
  if (!out) {
    throw std::runtime_error("emit_results: write to '" + path + "' failed");
  }
}

std::vector<CellStats> cells_from_json(const std::string& text) {
  const nlohmann::json doc = nlohmann::json::parse(text);
  std::vector<CellStats> table;
  for (const auto& entry : doc.at("cells")) {
    CellStats cell;
    cell.n = entry.at("n").get<int>();
    cell.k = entry.at("k").get<int>();
    cell.count = entry.at("count").get<int>();
    cell.mean_ratio = Rational::from_string(entry.at("mean_ratio").get<std::string>());
    cell.variance_ratio = Rational::from_string(entry.at("variance_ratio").get<std::string>());
    cell.max_ratio = Rational::from_string(entry.at("max_ratio").get<std::string>());
    cell.fraction_manipulable =
        Rational::from_string(entry.at("fraction_manipulable").get<std::string>());
    table.push_back(std::move(cell));
  }
  return table;
}

}  // namespace psmanip
