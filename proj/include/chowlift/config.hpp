#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chowlift/rational.hpp"

namespace chowlift {

// Recursive variety expression: projective_space(n), product(a, b),
// quotient(a, action), blowup(a, num_points, multiplier).
struct VarietySpec {
  enum class Kind { ProjectiveSpace, Product, Quotient, Blowup };

  Kind kind = Kind::ProjectiveSpace;
  int n = 0;
  std::vector<VarietySpec> children;
  std::string action;
  int num_points = 0;
  Rational multiplier;

  int dimension() const;
  std::string str() const;
};

bool operator==(const VarietySpec& a, const VarietySpec& b);

enum class Task {
  VerifyCK,
  Poincare,
  MurreB,
  MurreBprime,
  MurreC,
  MurreD,
  Lift,
  Blowdown,
  Roundtrip,
  OracleFuzz,
};

const std::vector<Task>& all_tasks();
std::string task_name(Task t);
std::optional<Task> task_from_name(const std::string& name);

enum class OutputFormat { Text, Machine };

struct RunConfig {
  VarietySpec variety;
  std::vector<Task> tasks;
  std::uint64_t seed = 0;
  OutputFormat format = OutputFormat::Text;
  int fuzz_cases = 200;
};

// Parses the structured-text schema (key = value lines, recursive variety
// expressions). Throws ConfigError with line/column on parse errors and with
// the offending field path on semantic errors.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

// Canonical serialization used for the report's config echo.
std::string config_echo(const RunConfig& config);

}  // namespace chowlift
