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

// Flat key = value config files. Keys are flag names without the leading
// dashes (underscores are accepted for hyphens); `[state]`, `[meter]` style
// group headers are allowed but only organize the file. Values from the file
// are appended to the command line for every flag the user did not pass, so
// explicit flags always win.

#pragma once

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "wva/core.hpp"

namespace wva::cli {

struct ConfigEntry {
  std::string key;
  std::string value;
  int line = 0;
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace detail

inline std::vector<ConfigEntry> parse_config(std::istream& in) {
  std::vector<ConfigEntry> out;
  std::set<std::string> seen;
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    const std::string t = detail::trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    const std::string where = "config line " + std::to_string(n) + ": ";
    if (t.front() == '[') {
      wva::detail::require(t.back() == ']' && t.size() > 2, where + "malformed group header");
      continue;
    }
    const auto eq = t.find('=');
    wva::detail::require(eq != std::string::npos, where + "expected key = value");
    std::string key = detail::trim(t.substr(0, eq));
    std::string value = detail::trim(t.substr(eq + 1));
    std::replace(key.begin(), key.end(), '_', '-');
    wva::detail::require(!key.empty(), where + "empty key");
    wva::detail::require(key.find_first_of(" \t.") == std::string::npos,
                         where + "nested keys are not supported");
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
      value = value.substr(1, value.size() - 2);
    wva::detail::require(seen.insert(key).second, where + "duplicate key '" + key + "'");
    out.push_back({key, value, n});
  }
  return out;
}

inline std::vector<ConfigEntry> read_config_file(const std::string& path) {
  std::ifstream in(path);
  wva::detail::require(static_cast<bool>(in), "cannot open config file '" + path + "'");
  return parse_config(in);
}

/// Flags that describe the same thing; passing any of them on the command
/// line suppresses the whole group from the file.
inline const std::vector<std::set<std::string>>& exclusive_groups() {
  static const std::vector<std::set<std::string>> groups{
      {"state", "c1", "c2", "c3", "werner-c", "state-json", "scenario-json"},
      {"sigma", "squeeze-r", "meter-json"},
  };
  return groups;
}

/// Flag names (without dashes) present in argv.
inline std::set<std::string> flags_in(const std::vector<std::string>& args) {
  std::set<std::string> out;
  for (const auto& a : args) {
    if (a.size() < 3 || a.compare(0, 2, "--") != 0) continue;
    out.insert(a.substr(2, a.find('=') == std::string::npos ? std::string::npos : a.find('=') - 2));
  }
  return out;
}

/// Value of --config in argv, if any.
inline std::string config_path(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return "";
}

/// Appends config entries for flags absent from `args`. Boolean values
/// true/false become a bare flag or nothing.
inline std::vector<std::string> merge_config(std::vector<std::string> args,
                                             const std::vector<ConfigEntry>& entries) {
  const auto present = flags_in(args);
  std::set<std::string> blocked = present;
  for (const auto& g : exclusive_groups())
    if (std::any_of(g.begin(), g.end(), [&](const auto& k) { return present.count(k) > 0; }))
      blocked.insert(g.begin(), g.end());
  for (const auto& e : entries) {
    wva::detail::require(e.key != "config", "config files cannot include other config files");
    if (blocked.count(e.key)) continue;
    if (e.value == "true") {
      args.push_back("--" + e.key);
    } else if (e.value == "false") {
      continue;
    } else {
      // --key=value keeps values such as "-pi/2" from reading as flags
      args.push_back("--" + e.key + "=" + e.value);
    }
  }
  return args;
}

}  // namespace wva::cli
