#include "busytime/report.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace busytime {

namespace {

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += "\"";
  return out;
}

}  // namespace

std::string reports_to_csv(std::span<const RunReport> reports) {
  std::ostringstream out;
  out << "instance,algorithm,type_system,n,cost,baseline_kind,baseline,ratio,ratio_float,"
         "wall_ms,seed\n";
  for (const auto& report : reports) {
    out << csv_escape(report.instance_id) << ',' << report.algorithm << ','
        << report.type_system << ',' << report.n << ',' << rational_to_string(report.cost) << ','
        << report.baseline_kind << ',';
    if (report.baseline) out << rational_to_string(*report.baseline);
    out << ',';
    if (report.ratio) out << rational_to_string(*report.ratio);
    out << ',';
    if (report.ratio) out << rational_to_double(*report.ratio);
    out << ',' << report.wall_ms << ',' << report.seed << '\n';
  }
  return out.str();
}

void write_reports_csv(const std::filesystem::path& path, std::span<const RunReport> reports) {
  std::ofstream stream(path, std::ios::binary);
  if (!stream) throw std::runtime_error("cannot write " + path.string());
  stream << reports_to_csv(reports);
}

std::string reports_to_json(std::span<const RunReport> reports) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& report : reports) {
    nlohmann::ordered_json node;
    node["instance"] = report.instance_id;
    node["algorithm"] = report.algorithm;
    node["type_system"] = report.type_system;
    node["n"] = report.n;
    node["cost"] = rational_to_string(report.cost);
    node["baseline_kind"] = report.baseline_kind;
    node["baseline"] = report.baseline ? nlohmann::ordered_json(rational_to_string(*report.baseline))
                                       : nlohmann::ordered_json(nullptr);
    node["ratio"] = report.ratio ? nlohmann::ordered_json(rational_to_string(*report.ratio))
                                 : nlohmann::ordered_json(nullptr);
    node["ratio_float"] =
        report.ratio ? nlohmann::ordered_json(rational_to_double(*report.ratio))
                     : nlohmann::ordered_json(nullptr);
    node["wall_ms"] = report.wall_ms;
    node["seed"] = report.seed;
    doc.push_back(std::move(node));
  }
  return doc.dump(2) + "\n";
}

void write_reports_json(const std::filesystem::path& path, std::span<const RunReport> reports) {
  std::ofstream stream(path, std::ios::binary);
  if (!stream) throw std::runtime_error("cannot write " + path.string());
  stream << reports_to_json(reports);
}

}  // namespace busytime
