#pragma once

#include <string>

#include "psmanip/manipulation.hpp"
#include "psmanip/theory.hpp"
#include "psmanip/types.hpp"

namespace psmanip {

// JSON wire formats. Rationals travel as strings ("p" or "p/q") so nothing
// is lost to floating point; an unbounded pause end is the string "inf" and
// a never-depleted item is "never".
//
// Instance schema:
//   { "n": 3, "m": 3, "prefs": [[1,0,2],[0,1,2],[0,2,1]],
//     "utilities": {"agent":0, "values":["9/10","1","0"]}
//                | {"agent":0, "interested":[1,0], "epsilon":"1/1000000000"},
//     "pauses": {"0": [["0","inf"]], "2": [["1/4","1/2"]]} }

std::string instance_to_json(const Instance& instance, int indent = 2);
Instance instance_from_json(const std::string& text);

std::string trace_to_json(const EatingTrace& trace, int indent = 2);

std::string manipulation_result_to_json(const ManipulationResult& result, int indent = 2);

std::string verify_report_to_json(const VerifyReport& report, const VerifyConfig& config,
                                  const std::string& generated_at, int indent = 2);

}  // namespace psmanip
