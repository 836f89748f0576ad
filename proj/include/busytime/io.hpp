#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "busytime/analysis.hpp"
#include "busytime/engine.hpp"
#include "busytime/instance.hpp"
#include "busytime/schedule.hpp"

namespace busytime {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Instance files: {"machine_types":[{"capacity":int,"cost":number|"p/q"}],
//                  "jobs":[{"id":int,"release":int,"deadline":int}]}
// The writer emits keys in that order, jobs sorted by (release, id), and
// non-integer costs as exact "p/q" strings. Readers validate and throw
// ParseError naming the offending field.
Instance parse_instance(std::string_view json_text);
std::string instance_to_json(const Instance& instance);
Instance read_instance(const std::filesystem::path& path);
void write_instance(const std::filesystem::path& path, const Instance& instance);

// Schedule files: {"type_system":"real"|"virtual",
//                  "batches":[{"type":int,"time":int,"jobs":[int,...]}]}
Schedule parse_schedule(std::string_view json_text);
std::string schedule_to_json(const Schedule& schedule);
Schedule read_schedule(const std::filesystem::path& path);
void write_schedule(const std::filesystem::path& path, const Schedule& schedule);

// Trace files: JSON lines, one dispatch per line:
// {"t":int,"type":int,"jobs":[...],"critical":int|null}
std::string trace_to_jsonl(const DispatchTrace& trace);
DispatchTrace parse_trace(std::string_view jsonl_text);
void write_trace(const std::filesystem::path& path, const DispatchTrace& trace);
DispatchTrace read_trace(const std::filesystem::path& path);

// Assignment files: [{"left":int,"right":int,"type":int,"charged":[int,...]}]
std::string assignment_to_json(const IntervalAssignment& assignment);
IntervalAssignment parse_assignment(std::string_view json_text);
void write_assignment(const std::filesystem::path& path, const IntervalAssignment& assignment);
IntervalAssignment read_assignment(const std::filesystem::path& path);

// Credit-audit reports, all totals as exact rational strings.
std::string credit_report_to_json(const CreditReport& report);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace busytime
