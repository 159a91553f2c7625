// Acceptance suite: one binary, one pass/fail line per criterion, exact
// comparisons throughout. Run without arguments for all criteria or pass a
// subset of criterion numbers (e.g. "acceptance 1 4 8").

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "psmanip/engine.hpp"
#include "psmanip/experiment.hpp"
#include "psmanip/json_io.hpp"
#include "psmanip/parallel.hpp"
#include "psmanip/theory.hpp"

namespace {

using namespace psmanip;

int acceptance_jobs() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

struct Failure {
  std::string what;
};

using Failures = std::vector<Failure>;

void expect(Failures& failures, bool condition, const std::string& what) {
  if (!condition) {
    failures.push_back({what});
  }
}

// ---------------------------------------------------------------------------
// 1. Worked-example exactness: both allocation matrices and both utilities.
// ---------------------------------------------------------------------------
Failures criterion1() {
  Failures failures;
  const WorkedExample example = worked_example();

  const EatingTrace truthful = run_ps(example.profile);
  const std::vector<std::vector<Rational>> want_truthful = {
      {Rational(0), Rational(3, 4), Rational(1, 4)},
      {Rational(1, 2), Rational(1, 4), Rational(1, 4)},
      {Rational(1, 2), Rational(0), Rational(1, 2)}};
  expect(failures, truthful.allocation() == want_truthful, "truthful allocation matrix mismatch");

  OrdinalProfile misreported = example.profile;
  misreported.prefs[0] = example.misreport;
  const EatingTrace manipulated = run_ps(misreported);
  const std::vector<std::vector<Rational>> want_manipulated = {
      {Rational(1, 3), Rational(1, 2), Rational(1, 6)},
      {Rational(1, 3), Rational(1, 2), Rational(1, 6)},
      {Rational(1, 3), Rational(0), Rational(2, 3)}};
  expect(failures, manipulated.allocation() == want_manipulated,
         "misreport allocation matrix mismatch");

  expect(failures,
         expected_utility(truthful.allocation()[0], example.utilities) == Rational(3, 4),
         "truthful utility is not 3/4");
  expect(failures,
         expected_utility(manipulated.allocation()[0], example.utilities) == Rational(4, 5),
         "manipulated utility is not 4/5");
  return failures;
}

// ---------------------------------------------------------------------------
// 2. Tight-bound family for even n in {6..40}: truthful utility 1/2 and the
//    demote-the-top strategy worth exactly 3(n-2)/(2(n-1)), strictly
//    increasing, <= 3/2, above 1.45 by n=40. The closed form was verified
//    against the engine before being frozen here.
// ---------------------------------------------------------------------------
Failures criterion2() {
  Failures failures;
  Rational previous(0);
  Rational last;
  for (int n = 6; n <= 40; n += 2) {
    const TightInstance tight = tight_instance(n);
    const EatingTrace truthful = run_ps(tight.profile);
    const Rational truthful_utility =
        dichotomous_utility(truthful.allocation()[0], tight.valuation);
    expect(failures, truthful_utility == Rational(1, 2),
           "n=" + std::to_string(n) + ": truthful utility " + truthful_utility.str());

    OrdinalProfile manipulated = tight.profile;
    manipulated.prefs[0] = tight.strategy;
    const EatingTrace after = run_ps(manipulated);
    const Rational ratio =
        dichotomous_utility(after.allocation()[0], tight.valuation) / truthful_utility;
    const Rational closed_form(3 * (n - 2), 2 * (n - 1));
    expect(failures, ratio == closed_form,
           "n=" + std::to_string(n) + ": ratio " + ratio.str() + " != " + closed_form.str());
    expect(failures, ratio > previous, "n=" + std::to_string(n) + ": ratio not increasing");
    expect(failures, ratio <= Rational(3, 2), "n=" + std::to_string(n) + ": ratio above 3/2");
    previous = ratio;
    last = ratio;
  }
  expect(failures, last > Rational(29, 20), "ratio at n=40 does not exceed 1.45");
  return failures;
}

// ---------------------------------------------------------------------------
// 3. Global 3/2 bound by exhaustive best response: (a) all 216 profiles at
//    n=m=3 for k in {1,2,3}; (b) 1000 seeded random instances at each of
//    n=m in {4,5,6} for every k in {1..m}.
// ---------------------------------------------------------------------------
Failures criterion3() {
  Failures failures;

  std::vector<std::vector<int>> orders;
  std::vector<int> order = {0, 1, 2};
  do {
    orders.push_back(order);
  } while (std::next_permutation(order.begin(), order.end()));

  for (std::size_t a = 0; a < orders.size(); ++a) {
    for (std::size_t b = 0; b < orders.size(); ++b) {
      for (std::size_t c = 0; c < orders.size(); ++c) {
        OrdinalProfile profile;
        profile.n = 3;
        profile.m = 3;
        profile.prefs = {orders[a], orders[b], orders[c]};
        for (int k = 1; k <= 3; ++k) {
          const BoundCheckReport report = global_bound_check(profile, 0, k);
          if (report.violated) {
            failures.push_back({"exhaustive 3x3 violation at profile (" + std::to_string(a) +
                                "," + std::to_string(b) + "," + std::to_string(c) +
                                ") k=" + std::to_string(k)});
          }
        }
      }
    }
  }

  const Seed base(20260811);
  for (int n = 4; n <= 6; ++n) {
    const Seed stream = base.sub(static_cast<std::uint64_t>(n));
    const std::uint64_t instances = 1000;
    std::vector<std::string> bad(instances);
    parallel_for_index(instances, acceptance_jobs(), [&](std::uint64_t i) {
      const OrdinalProfile profile = random_profile(n, n, stream.sub(i));
      for (int k = 1; k <= n; ++k) {
        const BoundCheckReport report = global_bound_check(profile, 0, k);
        if (report.violated) {
          bad[i] = "n=" + std::to_string(n) + " instance " + std::to_string(i) +
                   " k=" + std::to_string(k) + ": ratio " +
                   (report.result.ratio ? report.result.ratio->str() : "unbounded");
        }
      }
    });
    for (const std::string& entry : bad) {
      if (!entry.empty()) {
        failures.push_back({entry});
      }
    }
  }
  return failures;
}

// ---------------------------------------------------------------------------
// 4. Pause monotonicity on 500 seeded random (profile, plan) pairs with
//    n, m <= 10, exact comparisons at every merged breakpoint.
// ---------------------------------------------------------------------------
Failures criterion4() {
  Failures failures;
  VerifyConfig config;
  config.lemma_pause = true;
  config.regime = false;
  config.global_bound = false;
  config.seeds = 500;
  config.seed = Seed(41);
  config.jobs = acceptance_jobs();
  const VerifyReport report = run_verification(config);
  expect(failures, report.pause_checked == 500, "expected 500 checked pairs");
  for (const VerifyCounterexample& ce : report.counterexamples) {
    failures.push_back({ce.check + " instance " + std::to_string(ce.instance) + ": " + ce.detail});
  }
  return failures;
}

// ---------------------------------------------------------------------------
// 5. Dichotomization: over 500 (a, l, l') triples taken from real engine
//    runs (truthful vs a random misreport), the max prefix ratio dominates
//    the cardinal ratio exactly, and the eps-laden vector at eps = 1e-9
//    lands within m*eps*c_max*10 of it.
// ---------------------------------------------------------------------------
Failures criterion5() {
  Failures failures;
  const Seed base(5150);
  const Rational eps(1, 1000000000);
  const std::uint64_t triples = 500;
  std::vector<std::string> bad(triples);

  parallel_for_index(triples, acceptance_jobs(), [&](std::uint64_t i) {
    const Seed instance_seed = base.sub(i);
    Rng rng(instance_seed);
    const int n = rng.int_in(3, 10);
    OrdinalProfile profile = random_profile(n, n, instance_seed.sub(1));
    const std::vector<int> truthful_order = profile.prefs[0];

    const EatingTrace truthful_trace = run_ps(profile);
    rng.shuffle(profile.prefs[0]);
    const EatingTrace manipulated_trace = run_ps(profile);

    std::vector<Rational> truthful_durations;
    std::vector<Rational> manipulated_durations;
    for (int item : truthful_order) {
      truthful_durations.push_back(truthful_trace.durations()[0][static_cast<std::size_t>(item)]);
      manipulated_durations.push_back(
          manipulated_trace.durations()[0][static_cast<std::size_t>(item)]);
    }

    CardinalUtilities utilities;
    int numerator = 5 * n + static_cast<int>(rng.below(11));
    const int scale = 5 * n + 11;
    for (int j = 0; j < n; ++j) {
      utilities.values.push_back(Rational(numerator, scale));
      numerator -= rng.int_in(1, 4);
    }

    const DichotomizeResult result =
        dichotomize(utilities, truthful_durations, manipulated_durations, eps);

    const Rational cardinal_ratio = expected_utility(manipulated_durations, utilities) /
                                    expected_utility(truthful_durations, utilities);
    if (!(result.c_max >= cardinal_ratio)) {
      bad[i] = "dominance failed: c_max " + result.c_max.str() + " < " + cardinal_ratio.str();
      return;
    }

    const Rational eps_ratio = expected_utility(manipulated_durations, result.b) /
                               expected_utility(truthful_durations, result.b);
    const Rational error =
        eps_ratio > result.c_max ? eps_ratio - result.c_max : result.c_max - eps_ratio;
    const Rational tolerance = Rational(n) * eps * result.c_max * Rational(10);
    if (!(error <= tolerance)) {
      bad[i] = "eps construction off by " + error.str() + " > " + tolerance.str();
    }
  });

  for (std::uint64_t i = 0; i < triples; ++i) {
    if (!bad[i].empty()) {
      failures.push_back({"triple " + std::to_string(i) + ": " + bad[i]});
    }
  }
  return failures;
}

// ---------------------------------------------------------------------------
// 6. Early-completion regime: 1000 random n=m=10 instances filtered to
//    truthful completion < 1/2 satisfy eliminated <= 3/2 * truthful.
// ---------------------------------------------------------------------------
Failures criterion6() {
  Failures failures;
  const Seed base(6);
  const std::uint64_t target = 1000;
  const std::uint64_t max_attempts = 100000;
  std::uint64_t checked = 0;
  for (std::uint64_t attempt = 0; attempt < max_attempts && checked < target; ++attempt) {
    const OrdinalProfile profile = random_profile(10, 10, base.sub(attempt));
    const DichotomousValuation valuation = dichotomous_for(profile, 0, 2);
    const RegimeReport report = theorem1_regime_check(profile, 0, valuation.interested);
    if (report.outcome == RegimeOutcome::kSkip) {
      continue;
    }
    ++checked;
    if (report.outcome == RegimeOutcome::kViolation) {
      failures.push_back({"attempt " + std::to_string(attempt) + ": completion " +
                          report.elimination.completion_truthful.str() + ", eliminated " +
                          report.elimination.completion_eliminated.str()});
    }
  }
  expect(failures, checked == target,
         "only " + std::to_string(checked) + " instances fell inside the regime");
  return failures;
}

// ---------------------------------------------------------------------------
// 7. Desk-scale grid: n in {8,10,12}, k in {2..6}, 1000 instances per cell,
//    interested-first space. Means inside [1.00, 1.10], max <= 3/2 exact,
//    monotone trends up to 0.005 slack (breaches warn, never fail).
// ---------------------------------------------------------------------------
Failures criterion7() {
  Failures failures;
  ExperimentConfig config;
  config.n_values = {8, 10, 12};
  config.k_values = {2, 3, 4, 5, 6};
  config.instances_per_cell = 1000;
  config.seed = Seed(0);
  config.jobs = acceptance_jobs();

  const std::vector<CellStats> table = run_grid(config);
  expect(failures, table.size() == 15, "expected 15 cells");
  for (const CellStats& cell : table) {
    const std::string tag = "cell n=" + std::to_string(cell.n) + " k=" + std::to_string(cell.k);
    expect(failures, cell.mean_ratio >= Rational(1), tag + ": mean below 1");
    expect(failures, cell.mean_ratio <= Rational(11, 10),
           tag + ": mean " + decimal_string(cell.mean_ratio, 6) + " above 1.10");
    expect(failures, cell.max_ratio <= Rational(3, 2), tag + ": max above 3/2");
    std::cout << "    " << tag << ": mean " << decimal_string(cell.mean_ratio, 6) << ", max "
              << cell.max_ratio.str() << ", manipulable "
              << decimal_string(cell.fraction_manipulable, 4) << "\n";
  }
  for (const std::string& warning : trend_warnings(table, Rational(1, 200))) {
    std::cout << "    warning: " << warning << "\n";
  }
  return failures;
}

// ---------------------------------------------------------------------------
// 8. Determinism: experiment and verify artifacts are byte-identical across
//    worker counts (timestamps pinned).
// ---------------------------------------------------------------------------
Failures criterion8() {
  Failures failures;

  ExperimentConfig config;
  config.n_values = {8, 10};
  config.k_values = {2, 3};
  config.instances_per_cell = 200;
  config.seed = Seed(11);
  const ExperimentMeta meta{config.seed.value(), config_summary(config), "PINNED"};

  config.jobs = 1;
  const std::vector<CellStats> serial = run_grid(config);
  config.jobs = 4;
  const std::vector<CellStats> parallel = run_grid(config);
  expect(failures, serial == parallel, "experiment tables differ across worker counts");
  expect(failures,
         render_results(serial, meta, EmitFormat::kCsv) ==
             render_results(parallel, meta, EmitFormat::kCsv),
         "experiment csv artifacts differ across worker counts");
  expect(failures,
         render_results(serial, meta, EmitFormat::kJson) ==
             render_results(parallel, meta, EmitFormat::kJson),
         "experiment json artifacts differ across worker counts");

  VerifyConfig verify_config;
  verify_config.seeds = 50;
  verify_config.seed = Seed(8);
  verify_config.jobs = 1;
  const std::string report_serial =
      verify_report_to_json(run_verification(verify_config), verify_config, "PINNED");
  verify_config.jobs = 4;
  const std::string report_parallel =
      verify_report_to_json(run_verification(verify_config), verify_config, "PINNED");
  expect(failures, report_serial == report_parallel,
         "verify reports differ across worker counts");
  return failures;
}

struct Criterion {
  int number;
  const char* description;
  Failures (*run)();
};

const Criterion kCriteria[] = {
    {1, "worked-example allocations and utilities, exact", criterion1},
    {2, "tight-bound family ratios 3(n-2)/(2(n-1)) for n=6..40", criterion2},
    {3, "global 3/2 bound by exhaustive best response", criterion3},
    {4, "pause monotonicity on 500 random pause plans", criterion4},
    {5, "dichotomization dominance and eps-limit on 500 engine triples", criterion5},
    {6, "eliminated completion <= 3/2 truthful below the 1/2 regime", criterion6},
    {7, "desk-scale manipulation grid band and trends", criterion7},
    {8, "byte-identical artifacts across worker counts", criterion8},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> wanted;
  for (int i = 1; i < argc; ++i) {
    wanted.push_back(std::atoi(argv[i]));
  }

  bool all_ok = true;
  for (const Criterion& criterion : kCriteria) {
    if (!wanted.empty() &&
        std::find(wanted.begin(), wanted.end(), criterion.number) == wanted.end()) {
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    Failures failures;
    try {
      failures = criterion.run();
    } catch (const std::exception& e) {
      failures.push_back({std::string("exception: ") + e.what()});
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool ok = failures.empty();
    all_ok = all_ok && ok;
    std::printf("[%s] criterion %d: %s (%.1fs)\n", ok ? "PASS" : "FAIL", criterion.number,
                criterion.description, seconds);
    for (const Failure& failure : failures) {
      std::printf("        %s\n", failure.what.c_str());
    }
  }
  return all_ok ? 0 : 1;
}
