#include "bearing/cli.hpp"

#include <algorithm>
#include <future>
#include <sstream>

#include <CLI11.hpp>

#include "bearing/errors.hpp"
#include "bearing/output.hpp"
#include "bearing/runner.hpp"
#include "bearing/scenario.hpp"

namespace bearing {

namespace {

struct Options {
  std::string scenario;
  std::vector<std::uint64_t> seeds;
  std::optional<double> dt;
  std::optional<double> duration;
  std::string out_dir = ".";
  std::string format = "both";
};

void print_validation(const ValidationError& e, std::ostream& err) {
  err << "invalid scenario:\n";
  for (const auto& issue : e.issues()) err << "  " << issue.where << ": " << issue.message << '\n';
}

int cmd_check(const Options& o, bool rigidity, std::ostream& out) {
  const PreparedScenario p = prepare(load_scenario(resolve_scenario_path(o.scenario)));
  const PrecheckSummary s = rigidity ? check_rigidity(p) : check_localizability(p);
  out << s.kind << ": " << (s.passed ? "pass" : "fail") << '\n';
  out << "  rank " << s.rank << " (expected " << s.expected_rank << ")\n";
  if (s.lambda_min_bff) out << "  lambda_min(B_ff) " << format_number(*s.lambda_min_bff) << '\n';
  out << "  " << s.detail << '\n';
  return s.passed ? kExitOk : kExitPrecheck;
}

int cmd_simulate(const Options& o, std::ostream& out, std::ostream& err) {
  const Scenario s = load_scenario(resolve_scenario_path(o.scenario));
  const OutputFormat format = output_format_from_string(o.format);
  std::vector<std::uint64_t> seeds = o.seeds;
  if (seeds.empty()) seeds.push_back(s.seed);

  std::vector<std::future<RunResult>> jobs;
  for (std::uint64_t seed : seeds) {
    RunOverrides ov{seed, o.dt, o.duration};
    jobs.push_back(std::async(std::launch::async, [&s, ov] { return run(s, ov); }));
  }
  int code = kExitOk;
  for (auto& j : jobs) {
    const RunResult r = j.get();
    for (const auto& path : emit(r, o.out_dir, format)) out << "wrote " << path.string() << '\n';
    const int c = exit_code(r);
    out << r.scenario_name << " seed " << r.seed << ": " << r.message;
    if (r.report && r.report->verdict) {
      const double e = r.report->verdict->steady_state_error;
      out << " (steady-state " << (r.report->squared ? "error^2 " : "error ")
          << format_number(r.report->squared ? e * e : e) << ", bound "
          << format_number(r.report->bound_value) << ")";
    }
    out << '\n';
    if (c != kExitOk && c != kExitBoundViolated) err << "seed " << r.seed << ": " << r.message << '\n';
    code = std::max(code, c);
  }
  return code;
}

int cmd_bounds(const Options& o, std::ostream& out) {
  Scenario s = load_scenario(resolve_scenario_path(o.scenario));
  if (!o.seeds.empty()) s.seed = o.seeds.front();
  const BoundReport b = bounds_without_simulation(s);
  write_bound_report(b, out);
  return kExitOk;
}

int cmd_oracle(const Options& o, std::ostream& out) {
  const PreparedScenario p = prepare(load_scenario(resolve_scenario_path(o.scenario)));
  const PrecheckSummary pre = check_localizability(p);
  if (!pre.passed) {
    out << "not localizable: " << pre.detail << '\n';
    return kExitPrecheck;
  }
  const Eigen::VectorXd x = oracle_positions(p);
  const int d = p.model.dimension;
  const int nl = p.model.leader_count;
  const Eigen::VectorXd truth = p.reference.stacked().tail(x.size());

  std::vector<std::pair<int, int>> order;  // (id, follower slot)
  for (int c = nl; c < p.model.graph.node_count(); ++c)
    order.emplace_back(p.labels.old_of_new[c] + 1, c - nl);
  std::sort(order.begin(), order.end());
  out << "id";
  for (int k = 0; k < d; ++k) out << ",x" << k + 1;
  out << '\n';
  for (const auto& [id, slot] : order) {
    out << id;
    for (int k = 0; k < d; ++k) out << ',' << format_number(x(slot * d + k));
    out << '\n';
  }
  out << "residual |x - p_f| = " << format_number((x - truth).norm()) << '\n';
  return kExitOk;
}

}  // namespace

std::filesystem::path resolve_scenario_path(const std::string& arg) {
  const std::filesystem::path p(arg);
  if (std::filesystem::exists(p)) return p;
  const std::filesystem::path bundled =
      std::filesystem::path(BEARING_SCENARIO_DIR) / (arg + (p.has_extension() ? "" : ".json"));
  if (std::filesystem::exists(bundled)) return bundled;
  return p;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bearing-based formation control and localization under bounded disturbances",
               "bearingsim"};
  app.require_subcommand(1);
  Options o;

  auto add_scenario = [&](CLI::App* sub) {
    sub->add_option("scenario", o.scenario, "scenario file or bundled scenario name")->required();
  };
  auto* rig = app.add_subcommand("check-rigidity", "infinitesimal bearing rigidity at the reference configuration");
  auto* loc = app.add_subcommand("check-localizability", "bearing localizability of the network");
  auto* sim = app.add_subcommand("simulate", "integrate the disturbed system and judge the bound");
  auto* bnd = app.add_subcommand("bounds", "evaluate the bound without simulating");
  auto* orc = app.add_subcommand("localize-oracle", "least-squares follower positions");
  for (auto* sub : {rig, loc, sim, bnd, orc}) add_scenario(sub);

  sim->add_option("--seed", o.seeds, "disturbance seed; repeat to run several seeds concurrently");
  sim->add_option("--dt", o.dt, "integrator step")->check(CLI::PositiveNumber);
  sim->add_option("--duration", o.duration, "simulated time")->check(CLI::PositiveNumber);
  sim->add_option("--out-dir", o.out_dir, "directory for CSV and report files");
  sim->add_option("--format", o.format, "csv, report or both")
      ->check(CLI::IsMember({"csv", "report", "both"}));
  bnd->add_option("--seed", o.seeds, "disturbance seed")->expected(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o_buf, e_buf;
    const int rc = app.exit(e, o_buf, e_buf);
    out << o_buf.str();
    err << e_buf.str();
    return rc == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (rig->parsed()) return cmd_check(o, true, out);
    if (loc->parsed()) return cmd_check(o, false, out);
    if (sim->parsed()) return cmd_simulate(o, out, err);
    if (bnd->parsed()) return cmd_bounds(o, out);
    if (orc->parsed()) return cmd_oracle(o, out);
  } catch (const ValidationError& e) {
    print_validation(e, err);
    return kExitValidation;
  } catch (const BoundParamError& e) {
    err << "invalid bound parameters: " << e.what() << '\n';
    return kExitValidation;
  } catch (const GraphError& e) {
    err << "invalid scenario: " << e.what() << '\n';
    return kExitValidation;
  } catch (const NotRigidError& e) {
    err << e.what() << '\n';
    return kExitPrecheck;
  } catch (const NotLocalizableError& e) {
    err << e.what() << '\n';
    return kExitPrecheck;
  } catch (const PartitionError& e) {
    err << e.what() << '\n';
    return kExitPrecheck;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitAbort;
  }
  return kExitValidation;
}

}  // namespace bearing
