#include "busytime/io.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace busytime {

namespace {

using OrderedJson = nlohmann::ordered_json;

std::int64_t require_int(const nlohmann::json& node, const char* field, const std::string& where) {
  if (!node.contains(field) || !node[field].is_number_integer()) {
    throw ParseError(where + "." + field + ": integer required");
  }
  return node[field].get<std::int64_t>();
}

Rational parse_cost(const nlohmann::json& node, const std::string& where) {
  if (!node.contains("cost")) throw ParseError(where + ".cost: missing");
  const auto& cost = node["cost"];
  try {
    if (cost.is_number_integer()) return Rational(cost.get<std::int64_t>());
    if (cost.is_number_float()) return rational_from_double(cost.get<double>());
    if (cost.is_string()) return parse_rational(cost.get<std::string>());
  } catch (const std::invalid_argument& error) {
    throw ParseError(where + ".cost: " + error.what());
  }
  throw ParseError(where + ".cost: number or \"p/q\" string required");
}

OrderedJson cost_to_json(const Rational& cost) {
  const Int den = boost::multiprecision::denominator(cost);
  if (den == 1) {
    const Int num = boost::multiprecision::numerator(cost);
    if (num >= std::numeric_limits<std::int64_t>::min() &&
        num <= std::numeric_limits<std::int64_t>::max()) {
      return OrderedJson(num.convert_to<std::int64_t>());
    }
  }
  return OrderedJson(rational_to_string(cost));
}

nlohmann::json parse_json(std::string_view text, const std::string& what) {
  nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw ParseError(what + ": invalid JSON");
  return doc;
}

}  // namespace

Instance parse_instance(std::string_view json_text) {
  const nlohmann::json doc = parse_json(json_text, "instance");
  if (!doc.is_object()) throw ParseError("instance: object required");
  if (!doc.contains("machine_types") || !doc["machine_types"].is_array()) {
    throw ParseError("machine_types: array required");
  }
  if (!doc.contains("jobs") || !doc["jobs"].is_array()) {
    throw ParseError("jobs: array required");
  }
  Instance instance;
  std::size_t i = 0;
  for (const auto& node : doc["machine_types"]) {
    const std::string where = "machine_types[" + std::to_string(i++) + "]";
    MachineType type;
    type.capacity = require_int(node, "capacity", where);
    type.cost = parse_cost(node, where);
    instance.machine_types.push_back(std::move(type));
  }
  i = 0;
  for (const auto& node : doc["jobs"]) {
    const std::string where = "jobs[" + std::to_string(i++) + "]";
    JobSpec job;
    job.id = require_int(node, "id", where);
    job.release = require_int(node, "release", where);
    job.deadline = require_int(node, "deadline", where);
    instance.jobs.push_back(job);
  }
  try {
    validate_instance(instance);
  } catch (const std::invalid_argument& error) {
    throw ParseError(std::string("instance: ") + error.what());
  }
  return instance;
}

std::string instance_to_json(const Instance& instance) {
  OrderedJson doc;
  doc["machine_types"] = OrderedJson::array();
  for (const auto& type : instance.machine_types) {
    OrderedJson node;
    node["capacity"] = type.capacity;
    node["cost"] = cost_to_json(type.cost);
    doc["machine_types"].push_back(std::move(node));
  }
  std::vector<JobSpec> sorted = instance.jobs;
  std::sort(sorted.begin(), sorted.end(), [](const JobSpec& a, const JobSpec& b) {
    if (a.release != b.release) return a.release < b.release;
    return a.id < b.id;
  });
  doc["jobs"] = OrderedJson::array();
  for (const auto& job : sorted) {
    OrderedJson node;
    node["id"] = job.id;
    node["release"] = job.release;
    node["deadline"] = job.deadline;
    doc["jobs"].push_back(std::move(node));
  }
  return doc.dump(2) + "\n";
}

Schedule parse_schedule(std::string_view json_text) {
  const nlohmann::json doc = parse_json(json_text, "schedule");
  if (!doc.is_object() || !doc.contains("type_system") || !doc["type_system"].is_string()) {
    throw ParseError("type_system: \"real\" or \"virtual\" required");
  }
  Schedule schedule;
  const std::string system = doc["type_system"].get<std::string>();
  if (system == "real") {
    schedule.system = TypeSystem::real;
  } else if (system == "virtual") {
    schedule.system = TypeSystem::virtual_ladder;
  } else {
    throw ParseError("type_system: \"real\" or \"virtual\" required");
  }
  if (!doc.contains("batches") || !doc["batches"].is_array()) {
    throw ParseError("batches: array required");
  }
  std::size_t i = 0;
  for (const auto& node : doc["batches"]) {
    const std::string where = "batches[" + std::to_string(i++) + "]";
    Batch batch;
    batch.type = static_cast<std::int32_t>(require_int(node, "type", where));
    batch.time = require_int(node, "time", where);
    if (!node.contains("jobs") || !node["jobs"].is_array()) {
      throw ParseError(where + ".jobs: array required");
    }
    for (const auto& id : node["jobs"]) {
      if (!id.is_number_integer()) throw ParseError(where + ".jobs: integer ids required");
      batch.jobs.push_back(id.get<JobId>());
    }
    schedule.batches.push_back(std::move(batch));
  }
  return schedule;
}

std::string schedule_to_json(const Schedule& schedule) {
  OrderedJson doc;
  doc["type_system"] = schedule.system == TypeSystem::real ? "real" : "virtual";
  doc["batches"] = OrderedJson::array();
  for (const auto& batch : schedule.batches) {
    OrderedJson node;
    node["type"] = batch.type;
    node["time"] = batch.time;
    node["jobs"] = batch.jobs;
    doc["batches"].push_back(std::move(node));
  }
  return doc.dump(2) + "\n";
}

std::string trace_to_jsonl(const DispatchTrace& trace) {
  std::string out;
  for (const auto& entry : trace) {
    OrderedJson node;
    node["t"] = entry.time;
    node["type"] = entry.type;
    node["jobs"] = entry.jobs;
    if (entry.critical) {
      node["critical"] = *entry.critical;
    } else {
      node["critical"] = nullptr;
    }
    out += node.dump();
    out += "\n";
  }
  return out;
}

DispatchTrace parse_trace(std::string_view jsonl_text) {
  DispatchTrace trace;
  std::size_t line_number = 0;
  std::size_t start = 0;
  while (start < jsonl_text.size()) {
    std::size_t end = jsonl_text.find('\n', start);
    if (end == std::string_view::npos) end = jsonl_text.size();
    const std::string_view line = jsonl_text.substr(start, end - start);
    start = end + 1;
    ++line_number;
    if (line.empty()) continue;
    const std::string where = "trace line " + std::to_string(line_number);
    const nlohmann::json node = parse_json(line, where);
    TraceEntry entry;
    entry.time = require_int(node, "t", where);
    entry.type = static_cast<std::int32_t>(require_int(node, "type", where));
    if (!node.contains("jobs") || !node["jobs"].is_array()) {
      throw ParseError(where + ".jobs: array required");
    }
    for (const auto& id : node["jobs"]) entry.jobs.push_back(id.get<JobId>());
    if (node.contains("critical") && !node["critical"].is_null()) {
      entry.critical = node["critical"].get<JobId>();
    }
    trace.push_back(std::move(entry));
  }
  return trace;
}

std::string assignment_to_json(const IntervalAssignment& assignment) {
  OrderedJson doc = OrderedJson::array();
  for (const auto& tuple : assignment) {
    OrderedJson node;
    node["left"] = tuple.left;
    node["right"] = tuple.right;
    node["type"] = tuple.type;
    node["charged"] = tuple.jobs;
    doc.push_back(std::move(node));
  }
  return doc.dump(2) + "\n";
}

IntervalAssignment parse_assignment(std::string_view json_text) {
  const nlohmann::json doc = parse_json(json_text, "assignment");
  if (!doc.is_array()) throw ParseError("assignment: array required");
  IntervalAssignment assignment;
  std::size_t i = 0;
  for (const auto& node : doc) {
    const std::string where = "assignment[" + std::to_string(i++) + "]";
    IntervalTuple tuple;
    tuple.left = require_int(node, "left", where);
    tuple.right = require_int(node, "right", where);
    tuple.type = static_cast<std::int32_t>(require_int(node, "type", where));
    if (!node.contains("charged") || !node["charged"].is_array()) {
      throw ParseError(where + ".charged: array required");
    }
    for (const auto& id : node["charged"]) tuple.jobs.push_back(id.get<JobId>());
    assignment.push_back(std::move(tuple));
  }
  return assignment;
}

std::string credit_report_to_json(const CreditReport& report) {
  OrderedJson doc;
  doc["batches"] = OrderedJson::array();
  for (const auto& row : report.batches) {
    OrderedJson node;
    node["index"] = row.batch_index;
    node["type"] = row.type;
    node["low_credits"] = rational_to_string(row.low_side);
    node["high_credits"] = rational_to_string(row.high_side);
    doc["batches"].push_back(std::move(node));
  }
  doc["intervals"] = OrderedJson::array();
  for (const auto& row : report.intervals) {
    OrderedJson node;
    node["index"] = row.interval_index;
    node["type"] = row.type;
    node["received"] = rational_to_string(row.received);
    doc["intervals"].push_back(std::move(node));
  }
  doc["total_distributed"] = rational_to_string(report.total_distributed);
  doc["schedule_cost"] = rational_to_string(report.schedule_cost);
  doc["failures"] = report.failures;
  return doc.dump(2) + "\n";
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream stream(path, std::ios::binary);
  if (!stream) throw ParseError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << stream.rdbuf();
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream stream(path, std::ios::binary);
  if (!stream) throw ParseError("cannot write " + path.string());
  stream << text;
}

Instance read_instance(const std::filesystem::path& path) {
  return parse_instance(read_text_file(path));
}

void write_instance(const std::filesystem::path& path, const Instance& instance) {
  write_text_file(path, instance_to_json(instance));
}

Schedule read_schedule(const std::filesystem::path& path) {
  return parse_schedule(read_text_file(path));
}

void write_schedule(const std::filesystem::path& path, const Schedule& schedule) {
  write_text_file(path, schedule_to_json(schedule));
}

void write_trace(const std::filesystem::path& path, const DispatchTrace& trace) {
  write_text_file(path, trace_to_jsonl(trace));
}

DispatchTrace read_trace(const std::filesystem::path& path) {
  return parse_trace(read_text_file(path));
}

void write_assignment(const std::filesystem::path& path, const IntervalAssignment& assignment) {
  write_text_file(path, assignment_to_json(assignment));
}

IntervalAssignment read_assignment(const std::filesystem::path& path) {
  return parse_assignment(read_text_file(path));
}

}  // namespace busytime
