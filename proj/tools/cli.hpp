/*
   Copyright 2026 The cogrelay Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cogrelay/scenario.hpp"

namespace cogrelay::cli {

/// Scenario plus the CLI-only fields of a JSON config.
struct Config {
    Scenario scenario;
    std::vector<std::string> profiles{"uniform", "optimized"};
};

/// Parses a JSON config document; unknown keys are rejected.
Config parse_config(const std::string& json_text);
Config load_config(const std::string& path);

struct Sweep {
    std::string variable;
    std::vector<double> values;
};

/// "VAR=START:STOP:STEP" or "VAR=v1,v2,...".
Sweep parse_sweep(const std::string& spec);

/// Applies one sweep value to a copy of the scenario.
Scenario apply_sweep(const Scenario& base, const std::string& variable, double value);

/// Shortest round-trip decimal form, independent of locale.
std::string format_number(double v);

/// Hop lengths for a profile name: uniform | optimized | random:SEED | explicit:d1/d2/...
std::vector<double> profile_hop_lengths(const std::string& profile, const Scenario& s);

/// Runs the command line; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cogrelay::cli
