#pragma once

#include <initializer_list>
#include <vector>

#include "psmanip/generators.hpp"
#include "psmanip/types.hpp"

namespace psmanip::testing {

inline Rational rat(long num, long den = 1) { return Rational(num, den); }

inline OrdinalProfile profile_of(std::initializer_list<std::vector<int>> rows) {
  OrdinalProfile profile;
  profile.prefs.assign(rows.begin(), rows.end());
  profile.n = static_cast<int>(profile.prefs.size());
  profile.m = profile.prefs.empty() ? 0 : static_cast<int>(profile.prefs.front().size());
  return profile;
}

/// Strictly decreasing utility vector in (0, 1], by position: useful as a
/// generic compatible cardinal vector when only the shape matters.
inline std::vector<Rational> decreasing_values(int m) {
  std::vector<Rational> values;
  for (int j = 0; j < m; ++j) {
    values.push_back(Rational(m - j, m + 1));
  }
  return values;
}

}  // namespace psmanip::testing
