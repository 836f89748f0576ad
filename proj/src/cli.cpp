#include "busytime/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>

#include "CLI11.hpp"
#include "busytime/algorithms.hpp"
#include "busytime/analysis.hpp"
#include "busytime/engine.hpp"
#include "busytime/generators.hpp"
#include "busytime/io.hpp"
#include "busytime/oracle.hpp"
#include "busytime/report.hpp"

namespace busytime {

namespace {

std::uint64_t default_seed() {
  if (const char* env = std::getenv("BUSYTIME_SEED")) {
    return std::strtoull(env, nullptr, 10);
  }
  return 0;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

void print_violations(const std::vector<Violation>& violations, std::ostream& err) {
  for (const auto& violation : violations) {
    err << "violation";
    if (violation.batch_index != Violation::kScheduleLevel) {
      err << " [entry " << violation.batch_index << "]";
    }
    err << " " << violation.rule << ": " << violation.detail << "\n";
  }
}

struct GenOptions {
  std::string family;
  std::string output;
  std::int64_t n = 10;
  std::int32_t K = 2;
  Time window = 6;
  Time horizon = 11;
  bool pow2_costs = false;
  std::uint64_t seed = default_seed();
  std::string variant = "greedy";
  int q = 3;
  int appendix_K = 4;
  std::string assignment_path;
  std::string schedule_path;
};

int run_gen(const GenOptions& options, std::ostream& out, std::ostream& err) {
  if (options.family == "random" || options.family == "agreeable") {
    RandomSpec spec;
    spec.jobs = options.n;
    spec.types = options.K;
    spec.window_max = options.window;
    spec.horizon = options.horizon;
    spec.agreeable = options.family == "agreeable";
    spec.pow2_costs = options.pow2_costs;
    spec.seed = options.seed;
    write_instance(options.output, gen_random(spec));
  } else if (options.family == "appendixA") {
    const auto variant = appendix_variant_from_name(options.variant);
    if (!variant) {
      err << "unknown appendix-A variant: " << options.variant << "\n";
      return 2;
    }
    write_instance(options.output, appendix_a_instance(*variant, options.appendix_K));
  } else if (options.family == "tight") {
    const TightExample example = tight_example(options.q);
    write_instance(options.output, example.instance);
    if (!options.assignment_path.empty()) {
      write_assignment(options.assignment_path, example.assignment);
    }
    if (!options.schedule_path.empty()) {
      write_schedule(options.schedule_path, example.schedule);
    }
    out << "sigma=" << sigma(example.assignment).str()
        << " cost=" << rational_to_string(schedule_cost(example.instance, example.schedule))
        << "\n";
  } else {
    err << "unknown family: " << options.family << "\n";
    return 2;
  }
  out << "wrote " << options.output << "\n";
  return 0;
}

struct RunOptions {
  std::string algorithm;
  std::string instance_path;
  bool ladder = false;
  std::string oracle = "none";
  std::string trace_path;
  std::string ledger_path;
  std::string report_path;
  std::string report_json_path;
  std::uint64_t seed = default_seed();
};

int run_run(const RunOptions& options, std::ostream& out, std::ostream& err) {
  if (!is_known_algorithm(options.algorithm)) {
    err << "unknown algorithm: " << options.algorithm << "\n";
    return 2;
  }
  const bool is_main = options.algorithm == "main";
  if (is_main && !options.ladder) {
    err << "--alg main requires --ladder\n";
    return 2;
  }
  if (!is_main && options.ladder) {
    err << "--ladder applies only to --alg main\n";
    return 2;
  }
  if (!is_main && !options.ledger_path.empty()) {
    err << "--ledger applies only to --alg main\n";
    return 2;
  }
  if (options.oracle != "none" && options.oracle != "exact") {
    err << "--oracle must be exact or none\n";
    return 2;
  }

  const Instance instance = canonicalized(read_instance(options.instance_path));
  std::unique_ptr<OnlineAlgorithm> algorithm;
  MainAlgorithm* main_algorithm = nullptr;
  if (is_main) {
    auto main_ptr = make_main_algorithm(instance);
    main_algorithm = main_ptr.get();
    algorithm = std::move(main_ptr);
  } else {
    algorithm = make_baseline(options.algorithm, instance.machine_types);
  }

  StaticSource source(instance);
  const auto start = std::chrono::steady_clock::now();
  const RunResult result = run_online(source, *algorithm);
  const double wall_ms = elapsed_ms(start);

  Schedule real_schedule = is_main
                               ? realize_schedule(main_algorithm->ladder(), result.schedule)
                               : result.schedule;
  const auto violations = validate_schedule(instance, real_schedule);
  if (!violations.empty()) {
    print_violations(violations, err);
    err << "internal error: run produced an invalid schedule\n";
    return 1;
  }

  RunReport report;
  report.instance_id = options.instance_path;
  report.algorithm = options.algorithm;
  report.type_system = is_main ? "virtual" : "real";
  report.n = instance.job_count();
  report.cost = schedule_cost(instance, real_schedule);
  report.wall_ms = wall_ms;
  report.seed = options.seed;
  if (options.oracle == "exact") {
    try {
      const OracleResult oracle = exact_opt(instance);
      report.baseline_kind = "exact_opt";
      report.baseline = oracle.cost;
      report.ratio = report.cost / oracle.cost;
    } catch (const OracleLimitExceeded& limit) {
      err << limit.what() << "\n";
      return 1;
    }
  }

  if (!options.trace_path.empty()) write_trace(options.trace_path, result.trace);
  if (is_main && !options.ledger_path.empty()) {
    write_assignment(options.ledger_path, main_algorithm->ledger());
  }
  const std::vector<RunReport> rows{report};
  write_reports_csv(options.report_path, rows);
  if (!options.report_json_path.empty()) write_reports_json(options.report_json_path, rows);

  out << "algorithm=" << report.algorithm << " n=" << report.n
      << " cost=" << rational_to_string(report.cost);
  if (report.baseline) {
    out << " " << report.baseline_kind << "=" << rational_to_string(*report.baseline)
        << " ratio=" << rational_to_string(*report.ratio);
  }
  out << "\n";
  return 0;
}

struct AdversaryOptions {
  std::string algorithm;
  std::int64_t M = 8;
  std::string report_path;
  std::string trace_path;
  std::string ledger_path;
  std::uint64_t seed = default_seed();
};

int run_adversary(const AdversaryOptions& options, std::ostream& out, std::ostream& err) {
  if (!is_known_algorithm(options.algorithm)) {
    err << "unknown algorithm: " << options.algorithm << "\n";
    return 2;
  }
  const std::vector<MachineType> menu = adversary_menu(options.M);
  const bool is_main = options.algorithm == "main";

  std::unique_ptr<OnlineAlgorithm> algorithm;
  MainAlgorithm* main_algorithm = nullptr;
  if (is_main) {
    auto main_ptr = std::make_unique<MainAlgorithm>(NormalizedLadder::from_canonical(menu));
    main_algorithm = main_ptr.get();
    algorithm = std::move(main_ptr);
  } else {
    algorithm = make_baseline(options.algorithm, menu);
  }

  // "Uses a large machine" means the dispatched batch realizes to the large
  // real type, whatever the run's own type system.
  std::function<bool(std::int32_t)> is_large;
  if (is_main) {
    const NormalizedLadder* ladder = &main_algorithm->ladder();
    is_large = [ladder](std::int32_t type) {
      return ladder->rung(static_cast<std::size_t>(type)).real_type == 1;
    };
  } else {
    is_large = [](std::int32_t type) { return type == 1; };
  }

  Theorem3Source source(options.M, is_large);
  const auto start = std::chrono::steady_clock::now();
  const RunResult result = run_online(source, *algorithm);
  const double wall_ms = elapsed_ms(start);

  Instance realized;
  realized.machine_types = menu;
  realized.jobs = result.jobs_seen;

  Schedule real_schedule = is_main
                               ? realize_schedule(main_algorithm->ladder(), result.schedule)
                               : result.schedule;
  const auto violations = validate_schedule(realized, real_schedule);
  if (!violations.empty()) {
    print_violations(violations, err);
    err << "internal error: run produced an invalid schedule\n";
    return 1;
  }

  RunReport report;
  report.instance_id = "theorem3:M=" + std::to_string(options.M);
  report.algorithm = options.algorithm;
  report.type_system = is_main ? "virtual" : "real";
  report.n = realized.job_count();
  report.cost = schedule_cost(realized, real_schedule);
  report.baseline_kind = "adversary_bound";
  report.baseline =
      adversary_opt_bounds(options.M, realized, result.trace, source.release_times(), is_large);
  report.ratio = report.cost / *report.baseline;
  report.wall_ms = wall_ms;
  report.seed = options.seed;

  if (!options.trace_path.empty()) write_trace(options.trace_path, result.trace);
  if (is_main && !options.ledger_path.empty()) {
    write_assignment(options.ledger_path, main_algorithm->ledger());
  }
  const std::vector<RunReport> rows{report};
  write_reports_csv(options.report_path, rows);

  out << "algorithm=" << report.algorithm << " groups=" << source.groups_released()
      << " n=" << report.n << " cost=" << rational_to_string(report.cost)
      << " bound=" << rational_to_string(*report.baseline)
      << " ratio=" << rational_to_string(*report.ratio);
  if (source.suppressed_triggers() > 0) {
    out << " suppressed_triggers=" << source.suppressed_triggers();
  }
  out << "\n";
  return 0;
}

struct VerifyOptions {
  std::string what;
  std::string instance_path;
  std::string artifact_path;
  bool ladder = false;
};

int run_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err) {
  const Instance instance = read_instance(options.instance_path);
  if (options.what == "schedule") {
    const Schedule schedule = read_schedule(options.artifact_path);
    const auto violations = validate_schedule(instance, schedule);
    if (!violations.empty()) {
      print_violations(violations, err);
      return 1;
    }
    out << "ok cost=" << rational_to_string(schedule_cost(instance, schedule)) << "\n";
    return 0;
  }
  if (options.what == "assignment") {
    const IntervalAssignment assignment = read_assignment(options.artifact_path);
    std::vector<std::int64_t> capacities;
    if (options.ladder) {
      NormalizedLadder ladder = normalize_types(canonicalized(instance));
      std::int32_t max_type = 0;
      for (const auto& tuple : assignment) max_type = std::max(max_type, tuple.type);
      ladder.ensure_rung(static_cast<std::size_t>(max_type));
      for (std::size_t k = 0; k < ladder.rung_count(); ++k) {
        capacities.push_back(ladder.rung(k).capacity);
      }
    } else {
      for (const auto& type : instance.machine_types) capacities.push_back(type.capacity);
    }
    const auto violations = check_valid_assignment(instance, capacities, assignment);
    out << "sigma=" << sigma(assignment).str() << "\n";
    if (!violations.empty()) {
      print_violations(violations, err);
      return 1;
    }
    out << "ok\n";
    return 0;
  }
  err << "--what must be schedule or assignment\n";
  return 2;
}

}  // namespace

int dispatch_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"online busy-time scheduling workbench"};
  app.require_subcommand(1);

  GenOptions gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "generate an instance file");
  gen_cmd->add_option("family", gen.family, "random | agreeable | appendixA | tight")->required();
  gen_cmd->add_option("-o,--output", gen.output, "instance file to write")->required();
  gen_cmd->add_option("-n,--jobs", gen.n, "job count (random/agreeable)");
  gen_cmd->add_option("-K,--types", gen.K, "machine type count (random/agreeable)");
  gen_cmd->add_option("--window", gen.window, "max deadline - release (random/agreeable)");
  gen_cmd->add_option("--horizon", gen.horizon, "deadline horizon (random/agreeable)");
  gen_cmd->add_flag("--pow2-costs", gen.pow2_costs, "emit a power-of-two cost ladder");
  gen_cmd->add_option("--seed", gen.seed, "RNG seed (default $BUSYTIME_SEED or 0)");
  gen_cmd->add_option("--variant", gen.variant,
                      "appendixA variant: greedy | cost_efficient | lazy | ramp_up");
  gen_cmd->add_option("--appendix-K", gen.appendix_K, "appendixA K (even)");
  gen_cmd->add_option("--q", gen.q, "tight-example parameter q");
  gen_cmd->add_option("--assignment", gen.assignment_path, "also write the tight assignment");
  gen_cmd->add_option("--schedule", gen.schedule_path, "also write the tight schedule");

  RunOptions run;
  CLI::App* run_cmd = app.add_subcommand("run", "run an algorithm on an instance file");
  run_cmd->add_option("--alg", run.algorithm, "algorithm name")->required();
  run_cmd->add_option("--instance", run.instance_path, "instance file")->required();
  run_cmd->add_flag("--ladder", run.ladder, "run on the normalized virtual ladder (main only)");
  run_cmd->add_option("--oracle", run.oracle, "exact | none (default none)");
  run_cmd->add_option("--trace", run.trace_path, "write the dispatch trace (JSON lines)");
  run_cmd->add_option("--ledger", run.ledger_path, "write the assignment ledger (main only)");
  run_cmd->add_option("--report", run.report_path, "write the RunReport CSV")->required();
  run_cmd->add_option("--report-json", run.report_json_path, "also write the report as JSON");
  run_cmd->add_option("--seed", run.seed, "seed echoed into the report");

  AdversaryOptions adversary;
  CLI::App* adversary_cmd =
      app.add_subcommand("adversary", "run the adaptive lower-bound adversary");
  adversary_cmd->add_option("--alg", adversary.algorithm, "algorithm name")->required();
  adversary_cmd->add_option("--M", adversary.M, "adversary parameter (even, >= 4)")->required();
  adversary_cmd->add_option("--report", adversary.report_path, "write the RunReport CSV")
      ->required();
  adversary_cmd->add_option("--trace", adversary.trace_path, "write the dispatch trace");
  adversary_cmd->add_option("--ledger", adversary.ledger_path,
                            "write the assignment ledger (main only)");
  adversary_cmd->add_option("--seed", adversary.seed, "seed echoed into the report");

  VerifyOptions verify;
  CLI::App* verify_cmd = app.add_subcommand("verify", "check a schedule or assignment file");
  verify_cmd->add_option("--what", verify.what, "schedule | assignment")->required();
  verify_cmd->add_option("--instance", verify.instance_path, "instance file")->required();
  verify_cmd->add_option("--artifact", verify.artifact_path, "file to check")->required();
  verify_cmd->add_flag("--ladder", verify.ladder,
                       "check assignment sizes against the virtual ladder");

  std::vector<const char*> argv;
  argv.push_back("busytime");
  for (const auto& arg : args) argv.push_back(arg.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& help) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& parse_error) {
    err << parse_error.what() << "\n";
    return 2;
  }

  try {
    if (gen_cmd->parsed()) return run_gen(gen, out, err);
    if (run_cmd->parsed()) return run_run(run, out, err);
    if (adversary_cmd->parsed()) return run_adversary(adversary, out, err);
    if (verify_cmd->parsed()) return run_verify(verify, out, err);
  } catch (const OracleLimitExceeded& limit) {
    err << limit.what() << "\n";
    return 1;
  } catch (const std::exception& error) {
    err << error.what() << "\n";
    return 1;
  }
  err << "no command given\n";
  return 2;
}

}  // namespace busytime
