// Copyright 2026 The wva Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <string>
#include <string_view>

#include "wva/core.hpp"

namespace wva {

namespace detail {

inline bool parse_plain_number(std::string_view s, double& out) {
  if (s.empty()) return false;
  const std::string buf(s);
  char* end = nullptr;
  out = std::strtod(buf.c_str(), &end);
  return end == buf.c_str() + buf.size() && std::isfinite(out);
}

}  // namespace detail

/// Parses an angle in radians: a decimal number ("1.4", "-0.5e-1") or a
/// multiple of pi ("pi", "-pi", "pi/2", "2pi/3", "3*pi/4", "0.5*pi").
inline double parse_angle(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  const auto fail = [&]() -> double {
    throw InvalidArgument("cannot parse angle '" + std::string(text) + "'");
  };
  if (s.empty()) return fail();

  double value = 0.0;
  const auto pi_at = s.find("pi");
  if (pi_at == std::string::npos) {
    if (!detail::parse_plain_number(s, value)) return fail();
    return value;
  }

  std::string coef = s.substr(0, pi_at);
  if (!coef.empty() && coef.back() == '*') coef.pop_back();
  double factor = 1.0;
  if (coef.empty() || coef == "+") {
    factor = 1.0;
  } else if (coef == "-") {
    factor = -1.0;
  } else if (!detail::parse_plain_number(coef, factor)) {
    return fail();
  }

  const std::string rest = s.substr(pi_at + 2);
  double divisor = 1.0;
  if (!rest.empty()) {
    if (rest.front() != '/' || !detail::parse_plain_number(rest.substr(1), divisor) ||
        divisor == 0.0)
      return fail();
  }
  return factor * kPi / divisor;
}

}  // namespace wva
