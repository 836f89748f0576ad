#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "busytime/rational.hpp"

namespace busytime {

struct RunReport {
  std::string instance_id;
  std::string algorithm;
  std::string type_system;  // "real" | "virtual"
  std::int64_t n = 0;
  Rational cost;
  std::string baseline_kind = "none";  // exact_opt | adversary_bound | none
  std::optional<Rational> baseline;
  std::optional<Rational> ratio;  // cost / baseline, exact
  double wall_ms = 0.0;
  std::uint64_t seed = 0;
};

// Header plus one row per report; ratio carried both as an exact rational
// string and as a float convenience column.
std::string reports_to_csv(std::span<const RunReport> reports);
void write_reports_csv(const std::filesystem::path& path, std::span<const RunReport> reports);

std::string reports_to_json(std::span<const RunReport> reports);
void write_reports_json(const std::filesystem::path& path, std::span<const RunReport> reports);

}  // namespace busytime
