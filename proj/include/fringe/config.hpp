#pragma once

// Scenario text format: INI-style sections of `key = value unit` lines.
// Every numeric value carries a unit token ("-" for dimensionless); the
// parser converts to SI and rejects unknown sections, keys and units with
// the offending line number. Several named scenarios ship built in.

#include <string>
#include <vector>

#include "fringe/coupling.hpp"

namespace fringe::config {

coupling::Scenario parse_scenario(const std::string& text,
                                  const std::string& origin = "scenario");

// `name_or_path` is first matched against the built-in scenario names,
// then treated as a file path
coupling::Scenario load_scenario(const std::string& name_or_path);

// canonical text form; parse(serialize(sc)) reproduces sc
std::string serialize_scenario(const coupling::Scenario& sc);

std::vector<std::string> builtin_names();
const char* builtin_text(const std::string& name);  // nullptr when absent

// "90s", "1.5h", "10d", "30min" -> seconds
double parse_duration(const std::string& s);

}  // namespace fringe::config
