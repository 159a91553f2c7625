#include "psmanip/json_io.hpp"

#include <stdexcept>

#include <nlohmann/json.hpp>

#include "psmanip/version.hpp"

namespace psmanip {

namespace {

using nlohmann::json;

json rational_json(const Rational& value) { return value.str(); }

Rational rational_from(const json& value, const char* field) {
  if (!value.is_string()) {
    throw std::invalid_argument(std::string(field) + ": rationals must be \"p\" or \"p/q\" strings");
  }
  return Rational::from_string(value.get<std::string>());
}

json profile_json(const OrdinalProfile& profile) {
  json out;
  out["n"] = profile.n;
  out["m"] = profile.m;
  out["prefs"] = profile.prefs;
  return out;
}

json valuation_json(const AgentValuation& valuation) {
  json out;
  if (const auto* cardinal = std::get_if<CardinalUtilities>(&valuation)) {
    out["agent"] = cardinal->agent;
    json values = json::array();
    for (const Rational& value : cardinal->values) {
      values.push_back(rational_json(value));
    }
    out["values"] = std::move(values);
    return out;
  }
  const auto& dich = std::get<DichotomousValuation>(valuation);
  out["agent"] = dich.agent;
  out["interested"] = dich.interested;
  out["epsilon"] = rational_json(dich.epsilon);
  return out;
}

AgentValuation valuation_from(const json& node) {
  if (node.contains("values")) {
    CardinalUtilities cardinal;
    cardinal.agent = node.at("agent").get<int>();
    for (const auto& value : node.at("values")) {
      cardinal.values.push_back(rational_from(value, "utilities.values"));
    }
    return cardinal;
  }
  DichotomousValuation dich;
  dich.agent = node.at("agent").get<int>();
  dich.interested = node.at("interested").get<std::vector<int>>();
  if (node.contains("epsilon")) {
    dich.epsilon = rational_from(node.at("epsilon"), "utilities.epsilon");
  }
  return dich;
}

json pauses_json(const PausePlan& plan) {
  json out = json::object();
  for (int agent = 0; agent < plan.n_agents(); ++agent) {
    const auto& intervals = plan.intervals(agent);
    if (intervals.empty()) {
      continue;
    }
    json list = json::array();
    for (const PauseInterval& interval : intervals) {
      list.push_back({rational_json(interval.start),
                      interval.end ? rational_json(*interval.end) : json("inf")});
    }
    out[std::to_string(agent)] = std::move(list);
  }
  return out;
}

PausePlan pauses_from(const json& node, int n_agents) {
  PausePlan plan(n_agents);
  for (const auto& [key, list] : node.items()) {
    const int agent = std::stoi(key);
    for (const auto& pair : list) {
      if (!pair.is_array() || pair.size() != 2) {
        throw std::invalid_argument("pauses: each interval must be [start, end]");
      }
      const Rational start = rational_from(pair[0], "pauses.start");
      std::optional<Rational> end;
      if (!(pair[1].is_string() && pair[1].get<std::string>() == "inf") && !pair[1].is_null()) {
        end = rational_from(pair[1], "pauses.end");
      }
      plan.add_pause(agent, start, end);
    }
  }
  plan.validate();
  return plan;
}

}  // namespace

std::string instance_to_json(const Instance& instance, int indent) {
  json out = profile_json(instance.profile);
  if (instance.valuation) {
    out["utilities"] = valuation_json(*instance.valuation);
  }
  if (instance.pauses && !instance.pauses->empty()) {
    out["pauses"] = pauses_json(*instance.pauses);
  }
  return out.dump(indent) + "\n";
}

Instance instance_from_json(const std::string& text) {
  try {
    const json doc = json::parse(text);
    Instance instance;
    instance.profile.n = doc.at("n").get<int>();
    instance.profile.m = doc.at("m").get<int>();
    instance.profile.prefs = doc.at("prefs").get<std::vector<std::vector<int>>>();
    require_valid_profile(instance.profile);
    if (doc.contains("utilities")) {
      instance.valuation = valuation_from(doc.at("utilities"));
      require_compatible(*instance.valuation, instance.profile);
    }
    if (doc.contains("pauses")) {
      instance.pauses = pauses_from(doc.at("pauses"), instance.profile.n);
    }
    return instance;
  } catch (const json::exception& e) {
    // nlohmann reports byte positions and field names; keep them.
    throw std::invalid_argument(std::string("instance JSON: ") + e.what());
  }
}

std::string trace_to_json(const EatingTrace& trace, int indent) {
  json out;
  out["n"] = trace.n();
  out["m"] = trace.m();
  json segments = json::array();
  for (const Segment& segment : trace.segments()) {
    json eating = json::array();
    for (int item : segment.eating) {
      if (item == kIdle) {
        eating.push_back(nullptr);
      } else {
        eating.push_back(item);
      }
    }
    segments.push_back({{"start", rational_json(segment.start)},
                        {"end", rational_json(segment.end)},
                        {"eating", std::move(eating)}});
  }
  out["segments"] = std::move(segments);
  json depletion = json::array();
  for (int item = 0; item < trace.m(); ++item) {
    const auto& time = trace.depletion_time(item);
    depletion.push_back(time ? json(time->str()) : json("never"));
  }
  out["depletion"] = std::move(depletion);
  json allocation = json::array();
  for (const auto& row : trace.allocation()) {
    json row_json = json::array();
    for (const Rational& value : row) {
      row_json.push_back(rational_json(value));
    }
    allocation.push_back(std::move(row_json));
  }
  out["allocation"] = std::move(allocation);
  return out.dump(indent) + "\n";
}

std::string manipulation_result_to_json(const ManipulationResult& result, int indent) {
  json out;
  out["truthful_utility"] = rational_json(result.truthful_utility);
  out["truthful_utility_decimal"] = decimal_string(result.truthful_utility);
  out["best_report"] = result.best_report;
  out["best_utility"] = rational_json(result.best_utility);
  out["best_utility_decimal"] = decimal_string(result.best_utility);
  out["unbounded"] = !result.ratio.has_value();
  if (result.ratio) {
    out["ratio"] = rational_json(*result.ratio);
    out["ratio_decimal"] = decimal_string(*result.ratio);
  }
  out["reports_evaluated"] = result.reports_evaluated;
  return out.dump(indent) + "\n";
}

std::string verify_report_to_json(const VerifyReport& report, const VerifyConfig& config,
                                  const std::string& generated_at, int indent) {
  json out;
  out["meta"] = {{"seed", config.seed.value()},
                 {"seeds", config.seeds},
                 {"checks",
                  {{"pause_monotonicity", config.lemma_pause},
                   {"elimination_regime", config.regime},
                   {"global_bound", config.global_bound}}},
                 {"generated_at", generated_at},
                 {"version", kVersion}};
  out["pause_checked"] = report.pause_checked;
  out["regime_checked"] = report.regime_checked;
  out["regime_skipped"] = report.regime_skipped;
  out["bound_checked"] = report.bound_checked;
  out["ok"] = report.ok();
  json counterexamples = json::array();
  for (const VerifyCounterexample& ce : report.counterexamples) {
    counterexamples.push_back(
        {{"check", ce.check}, {"instance", ce.instance}, {"detail", ce.detail}});
  }
  out["counterexamples"] = std::move(counterexamples);
  return out.dump(indent) + "\n";
}

}  // namespace psmanip
