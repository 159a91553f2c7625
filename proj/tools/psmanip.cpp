// Command-line front end: exact Probabilistic Serial runs, best-response
// search, property verification, instance generation, and the Monte Carlo
// manipulation experiment. Every artifact embeds the seed and flags that
// produced it, so any output can be re-derived exactly.

#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "psmanip/engine.hpp"
#include "psmanip/experiment.hpp"
#include "psmanip/json_io.hpp"
#include "psmanip/theory.hpp"

namespace {

using namespace psmanip;

std::string timestamp_utc() {
  const std::time_t now = std::time(nullptr);
  char buffer[32];
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buffer;
}

int default_jobs() {
  if (const char* env = std::getenv("PSMANIP_JOBS")) {
    const int jobs = std::atoi(env);
    if (jobs >= 1) {
      return jobs;
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::vector<int> parse_range(const std::string& text) {
  // "A..B" or "A..B..STEP"
  std::vector<long> parts;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t next = text.find("..", pos);
    const std::string field = text.substr(pos, next == std::string::npos ? next : next - pos);
    parts.push_back(std::stol(field));
    if (next == std::string::npos) {
      break;
    }
    pos = next + 2;
  }
  if (parts.size() < 2 || parts.size() > 3) {
    throw CLI::ValidationError("range", "expected A..B or A..B..STEP, got '" + text + "'");
  }
  const long lo = parts[0];
  const long hi = parts[1];
  const long step = parts.size() == 3 ? parts[2] : 1;
  if (step < 1 || hi < lo) {
    throw CLI::ValidationError("range", "bad range '" + text + "'");
  }
  std::vector<int> values;
  for (long v = lo; v <= hi; v += step) {
    values.push_back(static_cast<int>(v));
  }
  return values;
}

Rational parse_time_point(const std::string& text) {
  return Rational::from_string(text);
}

void apply_pause_flags(Instance& instance, const std::vector<std::string>& pause_specs) {
  if (pause_specs.empty()) {
    return;
  }
  if (!instance.pauses) {
    instance.pauses = PausePlan(instance.profile.n);
  }
  for (const std::string& spec : pause_specs) {
    const std::size_t colon = spec.find(':');
    const std::size_t dots = spec.find("..", colon == std::string::npos ? 0 : colon);
    if (colon == std::string::npos || dots == std::string::npos) {
      throw CLI::ValidationError("--pause", "expected AGENT:START..END (END may be 'inf'), got '" +
                                                spec + "'");
    }
    const int agent = std::stoi(spec.substr(0, colon));
    const Rational start = parse_time_point(spec.substr(colon + 1, dots - colon - 1));
    const std::string end_text = spec.substr(dots + 2);
    std::optional<Rational> end;
    if (end_text != "inf") {
      end = parse_time_point(end_text);
    }
    instance.pauses->add_pause(agent, start, end);
  }
  instance.pauses->validate();
}

struct InstanceOptions {
  std::string input_path;
  bool use_worked_example = false;
  int tight_n = 0;
  std::vector<int> random_nm;
  int k = 0;
  std::uint64_t seed = 0;
};

void add_instance_options(CLI::App& cmd, InstanceOptions& opts, bool k_required) {
  auto* input = cmd.add_option("--input", opts.input_path,
                               "Instance JSON file ('-' reads standard input)");
  auto* worked = cmd.add_flag("--worked-example", opts.use_worked_example,
                              "Use the built-in 3x3 manipulable example");
  auto* tight = cmd.add_option("--tight", opts.tight_n,
                               "Tight-bound family instance for even n >= 6");
  auto* random = cmd.add_option("--random", opts.random_nm,
                                "Random instance with N agents and M items")
                     ->expected(2);
  cmd.add_option("--seed", opts.seed, "Seed for --random")->default_val(0);
  auto* k_opt = cmd.add_option(
      "--k", opts.k, "Interested-prefix size of agent 0's dichotomous valuation (--random)");
  if (k_required) {
    random->needs(k_opt);
  }
  input->excludes(worked)->excludes(tight)->excludes(random);
  worked->excludes(tight)->excludes(random);
  tight->excludes(random);
}

std::string read_stream(std::istream& in) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Instance build_instance(const InstanceOptions& opts) {
  if (!opts.input_path.empty()) {
    std::string text;
    if (opts.input_path == "-") {
      text = read_stream(std::cin);
    } else {
      std::ifstream file(opts.input_path);
      if (!file) {
        throw CLI::ValidationError("--input", "cannot open '" + opts.input_path + "'");
      }
      text = read_stream(file);
    }
    return instance_from_json(text);
  }
  Instance instance;
  if (opts.use_worked_example) {
    const WorkedExample example = worked_example();
    instance.profile = example.profile;
    instance.valuation = AgentValuation(example.utilities);
    return instance;
  }
  if (opts.tight_n > 0) {
    const TightInstance tight = tight_instance(opts.tight_n);
    instance.profile = tight.profile;
    instance.valuation = AgentValuation(tight.valuation);
    return instance;
  }
  if (opts.random_nm.size() == 2) {
    instance.profile = random_profile(opts.random_nm[0], opts.random_nm[1], Seed(opts.seed));
    if (opts.k > 0) {
      instance.valuation = AgentValuation(dichotomous_for(instance.profile, 0, opts.k));
    }
    return instance;
  }
  throw CLI::ValidationError(
      "instance", "choose one of --input, --worked-example, --tight, --random");
}

std::string rational_cell(const Rational& value) {
  return value.str() + " (" + decimal_string(value, 6) + ")";
}

void print_trace(const EatingTrace& trace, bool timeline) {
  std::cout << "allocation (rows = agents, columns = items):\n";
  for (int i = 0; i < trace.n(); ++i) {
    std::cout << "  agent " << i << ":";
    for (int j = 0; j < trace.m(); ++j) {
      std::cout << "  " << rational_cell(trace.allocation()[i][j]);
    }
    std::cout << "\n";
  }
  std::cout << "depletion times:\n";
  for (int j = 0; j < trace.m(); ++j) {
    const auto& dep = trace.depletion_time(j);
    std::cout << "  item " << j << ": " << (dep ? rational_cell(*dep) : std::string("never"))
              << "\n";
  }
  if (timeline) {
    std::cout << "timeline:\n";
    for (const Segment& segment : trace.segments()) {
      std::cout << "  [" << segment.start.str() << ", " << segment.end.str() << ")";
      for (int i = 0; i < trace.n(); ++i) {
        std::cout << "  " << i << "->";
        if (segment.eating[static_cast<std::size_t>(i)] == kIdle) {
          std::cout << "idle";
        } else {
          std::cout << segment.eating[static_cast<std::size_t>(i)];
        }
      }
      std::cout << "\n";
    }
  }
}

void write_or_print(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open '" + path + "' for writing");
  }
  out << text;
}

int cmd_run(const InstanceOptions& opts, const std::vector<std::string>& pause_specs,
            bool timeline, bool as_json, const std::string& out_path) {
  Instance instance = build_instance(opts);
  apply_pause_flags(instance, pause_specs);
  const EatingTrace trace = instance.pauses
                                ? run_with_pauses(instance.profile, *instance.pauses)
                                : run_ps(instance.profile);
  if (as_json) {
    write_or_print(trace_to_json(trace), out_path);
  } else {
    print_trace(trace, timeline);
    if (instance.valuation) {
      const int agent = valuation_agent(*instance.valuation);
      const Rational utility = valuation_utility(
          *instance.valuation, trace.allocation()[static_cast<std::size_t>(agent)]);
      std::cout << "utility of agent " << agent << ": " << rational_cell(utility) << "\n";
      if (const auto* dich = std::get_if<DichotomousValuation>(&*instance.valuation)) {
        const auto completion = trace.completion_time(dich->interested);
        std::cout << "interested-set completion: "
                  << (completion ? rational_cell(*completion) : std::string("never")) << "\n";
      }
    }
  }
  return 0;
}

int cmd_manipulate(const InstanceOptions& opts, int agent_flag, const std::string& space_name,
                   int cap, bool as_json, const std::string& out_path) {
  const Instance instance = build_instance(opts);
  if (!instance.valuation) {
    throw CLI::ValidationError("manipulate",
                               "the instance has no utilities; add them to the JSON or use --k");
  }
  const AgentValuation& valuation = *instance.valuation;
  const int agent = agent_flag >= 0 ? agent_flag : valuation_agent(valuation);

  SearchSpace space;
  const bool dichotomous = std::holds_alternative<DichotomousValuation>(valuation);
  std::string resolved = space_name;
  if (resolved.empty()) {
    resolved = dichotomous ? "interested-first" : "full";
  }
  if (resolved == "full") {
    space = SearchSpace::full(cap);
  } else if (resolved == "interested-first") {
    if (!dichotomous) {
      throw CLI::ValidationError("--space",
                                 "interested-first needs a dichotomous valuation");
    }
    space = SearchSpace::interested_first(std::get<DichotomousValuation>(valuation).interested);
  } else {
    throw CLI::ValidationError("--space", "expected 'full' or 'interested-first'");
  }

  const ManipulationResult result = best_response(instance.profile, agent, valuation, space);
  if (as_json) {
    write_or_print(manipulation_result_to_json(result), out_path);
  } else {
    std::cout << "truthful utility: " << rational_cell(result.truthful_utility) << "\n";
    std::cout << "best report:";
    for (int item : result.best_report) {
      std::cout << " " << item;
    }
    std::cout << "\nbest utility: " << rational_cell(result.best_utility) << "\n";
    if (result.ratio) {
      std::cout << "incentive ratio: " << rational_cell(*result.ratio) << "\n";
    } else {
      std::cout << "incentive ratio: unbounded (truthful utility is zero)\n";
    }
    std::cout << "reports evaluated: " << result.reports_evaluated << "\n";
  }
  return 0;
}

int cmd_gen(const InstanceOptions& opts, const std::string& out_path) {
  if (opts.random_nm.size() == 2 && opts.k == 0) {
    throw CLI::ValidationError("--random", "gen needs --k for random instances");
  }
  const Instance instance = build_instance(opts);
  write_or_print(instance_to_json(instance), out_path);
  return 0;
}

int cmd_verify(VerifyConfig config, const std::string& out_path) {
  const VerifyReport report = run_verification(config);
  std::cout << "pause_monotonicity: " << report.pause_checked << " checked\n";
  std::cout << "elimination_regime: " << report.regime_checked << " checked, "
            << report.regime_skipped << " outside the early-completion regime\n";
  std::cout << "global_bound: " << report.bound_checked << " checked\n";
  if (!report.ok()) {
    std::cout << report.counterexamples.size() << " counterexample(s) found\n";
  }
  const std::string json = verify_report_to_json(report, config, timestamp_utc());
  if (!out_path.empty()) {
    write_or_print(json, out_path);
  } else if (!report.ok()) {
    std::cout << json;  // dump for reproduction
  }
  return report.ok() ? 0 : 1;
}

int cmd_experiment(ExperimentConfig config, const std::string& format_name,
                   const std::string& out_path, bool warn_as_text) {
  const std::vector<CellStats> table = run_grid(config);
  const ExperimentMeta meta{config.seed.value(), config_summary(config), timestamp_utc()};
  const EmitFormat format = format_name == "json" ? EmitFormat::kJson : EmitFormat::kCsv;
  write_or_print(render_results(table, meta, format), out_path);
  if (warn_as_text) {
    for (const std::string& warning : trend_warnings(table)) {
      std::cerr << "warning: " << warning << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Probabilistic Serial simulator and manipulation analysis toolkit"};
  app.require_subcommand(1);

  // run
  auto* run_cmd = app.add_subcommand("run", "Run the eating process and print the trace");
  InstanceOptions run_opts;
  std::vector<std::string> run_pauses;
  bool run_timeline = false;
  bool run_json = false;
  std::string run_out;
  add_instance_options(*run_cmd, run_opts, /*k_required=*/false);
  run_cmd->add_option("--pause", run_pauses,
                      "Extra pause AGENT:START..END (END may be 'inf'); repeatable");
  run_cmd->add_flag("--timeline", run_timeline, "Print the segment timeline");
  run_cmd->add_flag("--json", run_json, "Emit the trace as JSON");
  run_cmd->add_option("--out", run_out, "Write output to a file instead of stdout");

  // manipulate
  auto* man_cmd = app.add_subcommand("manipulate", "Brute-force the best response of one agent");
  InstanceOptions man_opts;
  int man_agent = -1;
  std::string man_space;
  int man_cap = 8;
  bool man_json = false;
  std::string man_out;
  add_instance_options(*man_cmd, man_opts, /*k_required=*/true);
  man_cmd->add_option("--agent", man_agent, "Manipulating agent (default: the valuation's agent)");
  man_cmd->add_option("--space", man_space, "Search space: full | interested-first");
  man_cmd->add_option("--cap", man_cap, "Item cap for the full-permutation search")
      ->default_val(8);
  man_cmd->add_flag("--json", man_json, "Emit the result as JSON");
  man_cmd->add_option("--out", man_out, "Write output to a file instead of stdout");

  // gen
  auto* gen_cmd = app.add_subcommand("gen", "Emit an instance as JSON");
  InstanceOptions gen_opts;
  std::string gen_out;
  add_instance_options(*gen_cmd, gen_opts, /*k_required=*/true);
  gen_cmd->add_option("--out", gen_out, "Destination file (default stdout)");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Run the executable property checks");
  bool v_lemma2 = false;
  bool v_theorem1 = false;
  bool v_bound = false;
  VerifyConfig verify_config;
  std::uint64_t verify_seed = 0;
  int verify_jobs = default_jobs();
  std::string verify_out;
  verify_cmd->add_flag("--lemma2", v_lemma2, "Pause monotonicity on random pause plans");
  verify_cmd->add_flag("--theorem1", v_theorem1,
                       "Eliminated completion <= 3/2 of truthful when the latter is below 1/2");
  verify_cmd->add_flag("--global-bound", v_bound, "Brute-force 3/2 incentive-ratio bound");
  verify_cmd->add_option("--seeds", verify_config.seeds, "Instances per check")->default_val(100);
  verify_cmd->add_option("--seed", verify_seed, "Master seed")->default_val(0);
  verify_cmd->add_option("--jobs", verify_jobs, "Worker threads (env PSMANIP_JOBS)");
  verify_cmd->add_option("--out", verify_out, "Write the JSON report to a file");

  // experiment
  auto* exp_cmd = app.add_subcommand("experiment", "Monte Carlo manipulation-gain grid");
  std::string exp_n_range = "8..12..2";
  std::string exp_k_range = "2..6";
  ExperimentConfig exp_config;
  std::uint64_t exp_seed = 0;
  int exp_jobs = default_jobs();
  std::string exp_space = "interested-first";
  std::string exp_format = "csv";
  std::string exp_out;
  bool paper_scale = false;
  exp_cmd->add_option("--n-range", exp_n_range, "Agent/item counts A..B or A..B..STEP");
  exp_cmd->add_option("--k-range", exp_k_range, "Interested-set sizes A..B or A..B..STEP");
  exp_cmd->add_option("--per-cell", exp_config.instances_per_cell, "Instances per (n,k) cell")
      ->default_val(1000);
  exp_cmd->add_option("--seed", exp_seed, "Master seed")->default_val(0);
  exp_cmd->add_option("--space", exp_space, "Search space: interested-first | full");
  exp_cmd->add_option("--format", exp_format, "Output format: csv | json");
  exp_cmd->add_option("--out", exp_out, "Destination file (default stdout)");
  exp_cmd->add_option("--jobs", exp_jobs, "Worker threads (env PSMANIP_JOBS)");
  exp_cmd->add_option("--budget", exp_config.run_budget, "Engine-run budget guard");
  exp_cmd->add_flag("--paper-scale", paper_scale,
                    "Full grid: n 8..20, 10000 instances per cell (hours of compute)");

  try {
    app.parse(argc, argv);

    if (run_cmd->parsed()) {
      return cmd_run(run_opts, run_pauses, run_timeline, run_json, run_out);
    }
    if (man_cmd->parsed()) {
      return cmd_manipulate(man_opts, man_agent, man_space, man_cap, man_json, man_out);
    }
    if (gen_cmd->parsed()) {
      return cmd_gen(gen_opts, gen_out);
    }
    if (verify_cmd->parsed()) {
      if (v_lemma2 || v_theorem1 || v_bound) {
        verify_config.lemma_pause = v_lemma2;
        verify_config.regime = v_theorem1;
        verify_config.global_bound = v_bound;
      }
      verify_config.seed = Seed(verify_seed);
      verify_config.jobs = verify_jobs;
      return cmd_verify(verify_config, verify_out);
    }
    if (exp_cmd->parsed()) {
      if (paper_scale) {
        exp_config.n_values = parse_range("8..20");
        exp_config.k_values = parse_range("2..6");
        exp_config.instances_per_cell = 10000;
      } else {
        exp_config.n_values = parse_range(exp_n_range);
        exp_config.k_values = parse_range(exp_k_range);
      }
      if (exp_space == "full") {
        exp_config.space = SearchSpace::Kind::kFullPermutations;
      } else if (exp_space != "interested-first") {
        throw CLI::ValidationError("--space", "expected 'interested-first' or 'full'");
      }
      if (exp_format != "csv" && exp_format != "json") {
        throw CLI::ValidationError("--format", "expected 'csv' or 'json'");
      }
      exp_config.seed = Seed(exp_seed);
      exp_config.jobs = exp_jobs;
      return cmd_experiment(exp_config, exp_format, exp_out, true);
    }
    return 0;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
