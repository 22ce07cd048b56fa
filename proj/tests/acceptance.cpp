// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bearing/bounds.hpp"
#include "bearing/cli.hpp"
#include "bearing/errors.hpp"
#include "bearing/output.hpp"
#include "bearing/rigidity.hpp"
#include "bearing/runner.hpp"
#include "bearing/scenario.hpp"
#include "oracles.hpp"
#include "property_suites.hpp"

using namespace bearing;
namespace fs = std::filesystem;

namespace {

struct Result {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

Scenario bundled(const std::string& name) {
  return load_scenario(fs::path(BEARING_SCENARIO_DIR) / (name + ".json"));
}

std::vector<RunResult> run_seeds(const Scenario& s, int count) {
  std::vector<std::future<RunResult>> jobs;
  for (int seed = 1; seed <= count; ++seed)
    jobs.push_back(std::async(std::launch::async, [&s, seed] {
      RunOverrides o;
      o.seed = static_cast<std::uint64_t>(seed);
      return run(s, o);
    }));
  std::vector<RunResult> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

std::string num(double x) { return format_number(x); }

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// 1. Rigidity classification of the unit square with and without a diagonal.
void rigidity_classification(Result& r) {
  Eigen::VectorXd p(8);
  p << 0, 0, 1, 0, 1, 1, 0, 1;
  const Configuration c(2, p);
  const oracle::Pairs diag{{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 2}};
  const oracle::Pairs cycle{{0, 1}, {1, 2}, {2, 3}, {0, 3}};
  const RigidityCheck a = is_infinitesimally_bearing_rigid(NetworkGraph(4, diag), c);
  const RigidityCheck b = is_infinitesimally_bearing_rigid(NetworkGraph(4, cycle), c);
  r.require(a.rigid && a.rank == 5 && a.expected_rank == 5, "square with diagonal is rigid with rank 5");
  r.require(!b.rigid && b.rank == 4, "4-cycle is not rigid (rank 4)");
  r.require(a.rank == oracle::rank(oracle::rigidity(4, diag, p, 2)) &&
                b.rank == oracle::rank(oracle::rigidity(4, cycle, p, 2)),
            "ranks agree with elimination oracle");
  r.detail << "square+diagonal rank " << a.rank << " (rigid), 4-cycle rank " << b.rank << " (not rigid)";
}

// 2. Localizability of the three-node network and its collinear variant.
void localizability(Result& r) {
  const PrecheckSummary ok = check_localizability(prepare(bundled("localization_3node_2d")));
  const PrecheckSummary bad = check_localizability(prepare(bundled("localization_collinear_2d")));
  r.require(ok.passed && ok.lambda_min_bff && std::abs(*ok.lambda_min_bff - 1.0) <= 1e-10,
            "three-node network localizable with lambda_min(B_ff) = 1");
  r.require(!bad.passed, "collinear variant not localizable");
  r.detail << "lambda_min(B_ff) = " << num(ok.lambda_min_bff.value_or(NAN))
           << ", collinear localizable = " << (bad.passed ? "yes" : "no");
}

// 3. Undisturbed convergence of leader-follower and localization.
void undisturbed_convergence(Result& r) {
  Scenario lf = bundled("leader_follower_2plus2_2d");
  lf.disturbance = DisturbanceSpec{};
  lf.integrator.dt = 1e-3;
  lf.integrator.duration = 50.0;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst_b = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    Scenario s = lf;
    for (auto& a : s.agents) {
      if (a.leader) continue;
      Eigen::Vector2d dir(u(rng), u(rng));
      while (dir.norm() < 1e-3 || dir.norm() > 1.0) dir << u(rng), u(rng);
      const double radius = 0.5 * std::abs(u(rng));
      const Eigen::Vector2d off = radius * dir.normalized();
      a.position = {(*a.target)[0] + off(0), (*a.target)[1] + off(1)};
    }
    const RunResult res = run(s);
    if (res.status != RunStatus::completed) {
      r.require(false, "leader-follower run completed");
      continue;
    }
    worst_b = std::max(worst_b, res.trace->error_norms.back());
  }
  r.require(worst_b <= 1e-6, "|e_b(50)| <= 1e-6 from every random start");

  Scenario loc = bundled("localization_2plus4_3d");
  loc.disturbance = DisturbanceSpec{};
  const PreparedScenario prep = prepare(loc);
  const Eigen::VectorXd oracle_x = oracle_positions(prep);
  const RunResult res = run(loc);
  double e_c = NAN, gap = NAN;
  if (res.status == RunStatus::completed) {
    e_c = res.trace->error_norms.back();
    gap = (res.trace->states.back() - oracle_x).norm();
  }
  r.require(e_c <= 1e-6, "|e_c(T)| <= 1e-6");
  r.require(gap <= 1e-6, "final estimate within 1e-6 of the least-squares oracle");
  r.detail << "max |e_b(50)| = " << num(worst_b) << " over 10 starts; |e_c(T)| = " << num(e_c)
           << ", |p_hat - oracle| = " << num(gap);
}

// 4. Leader-follower containment over 20 seeds.
void leader_follower_containment(Result& r) {
  const Scenario s = bundled("leader_follower_2plus2_2d");
  double worst_ratio = 0.0;
  int contained = 0;
  for (const RunResult& res : run_seeds(s, 20)) {
    if (!res.report || !res.report->verdict) {
      r.require(false, "seed " + std::to_string(res.seed) + " completed");
      continue;
    }
    const BoundReport& b = *res.report;
    r.require(std::abs(b.disturbance_bound - 0.5 * b.threshold_F) <= 1e-12 * b.threshold_F,
              "F = 0.5 x threshold");
    r.require(b.epsilon && std::abs(*b.epsilon - *b.lambda_min_bff / 2) <= 1e-15, "eps = lambda/2");
    if (b.verdict->contained) ++contained;
    worst_ratio = std::max(worst_ratio, b.verdict->steady_state_error / b.bound_value);
  }
  r.require(contained == 20, "every seed contained");
  r.detail << contained << "/20 seeds contained; worst steady-state |e_b| / bound = " << num(worst_ratio);
}

// Least-squares slope of log|e| against t over samples with |e| > floor.
double log_slope(const SimTrace& t, double floor) {
  double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t.error_norms[i] <= floor) continue;
    const double x = t.times[i], y = std::log(t.error_norms[i]);
    n += 1;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// 5. Localization containment over 20 seeds and exponential decay rate.
void localization_containment(Result& r) {
  const Scenario s = bundled("localization_2plus4_3d");
  double worst_ratio = 0.0;
  int contained = 0;
  for (const RunResult& res : run_seeds(s, 20)) {
    if (!res.report || !res.report->verdict) {
      r.require(false, "seed " + std::to_string(res.seed) + " completed");
      continue;
    }
    const BoundReport& b = *res.report;
    r.require(b.squared && b.param_mode == ParamMode::default_, "default parameters, squared bound");
    if (b.verdict->contained) ++contained;
    const double e = b.verdict->steady_state_error;
    worst_ratio = std::max(worst_ratio, e * e / b.bound_value);
  }
  r.require(contained == 20, "every seed contained");

  Scenario quiet = s;
  quiet.disturbance = DisturbanceSpec{};
  const RunResult res = run(quiet);
  double slope = NAN, lam = NAN;
  if (res.status == RunStatus::completed) {
    slope = log_slope(*res.trace, 1e-10);
    lam = *res.precheck.lambda_min_bff;
  }
  r.require(slope <= -0.9 * lam, "log|e_c| slope <= -0.9 lambda_min(B_ff)");
  r.detail << contained << "/20 seeds contained; worst |e_c|^2 / bound = " << num(worst_ratio)
           << "; undisturbed log-slope " << num(slope) << " vs -0.9 lambda_min = " << num(-0.9 * lam);
}

// 6. Leaderless a-posteriori containment over 20 seeds.
void leaderless_containment(Result& r) {
  const Scenario s = bundled("leaderless_5agent_2d");
  double worst_ratio = 0.0, e0 = NAN;
  int contained = 0;
  for (const RunResult& res : run_seeds(s, 20)) {
    if (!res.report || !res.report->verdict) {
      r.require(false, "seed " + std::to_string(res.seed) + " completed");
      continue;
    }
    const BoundReport& b = *res.report;
    e0 = res.initial_error_sq.value_or(NAN);
    r.require(e0 <= 0.25, "|e_a(0)|^2 <= 0.25");
    r.require(b.a_posteriori, "bound flagged a posteriori");
    std::ostringstream text;
    write_report(res, text);
    r.require(text.str().find("a-posteriori") != std::string::npos, "report states a-posteriori");
    // F is half the threshold from the sampled spectra of the undisturbed pilot.
    r.require(b.disturbance_bound < b.threshold_F, "F below the sampled-spectra threshold");
    if (b.verdict->contained) ++contained;
    const double e = b.verdict->steady_state_error;
    worst_ratio = std::max(worst_ratio, e * e / b.bound_value);
  }
  r.require(contained == 20, "every seed contained");
  r.detail << contained << "/20 seeds contained; |e_a(0)|^2 = " << num(e0)
           << "; worst |e_a|^2 / bound = " << num(worst_ratio);
}

// 7. Randomized identity and inequality suites.
void inequality_suites(Result& r) {
  const std::vector<suites::Outcome> all{
      suites::bearing_error_identity(1), suites::bearing_sign_inequalities(2),
      suites::laplacian_lower_bound(3),  suites::projection_properties(4),
      suites::null_motions(5),           suites::follower_equilibrium(6),
      suites::rayleigh_lower_bound(7),   suites::rigid_null_space(8, 1000)};
  int instances = 0;
  for (const auto& o : all) {
    instances += o.instances;
    r.require(o.passed(), o.name + " (" + std::to_string(o.failures) + " failures; " + o.first_failure + ")");
  }
  r.detail << all.size() << " suites, " << instances << " random instances";
}

// 8. Hand-derived bound values and optimality of eps = lambda/2.
void bound_values(Result& r) {
  const BoundReport a = bound_leaderless(1.0, 1.0, 0.6);
  r.require(a.admissible && rel(a.bound_value, 0.4) <= 1e-12, "leaderless 0.4");
  const BoundReport a2 = bound_leaderless(1.0, 4.0, 0.6);
  r.require(!a2.admissible && rel(a2.threshold_F, 0.5) <= 1e-12, "leaderless inadmissible, threshold 0.5");

  const BoundReport b = bound_leader_follower(1.0, 2.0, 3.0, 0.1);
  r.require(b.admissible && rel(b.bound_value, 2.0) <= 1e-12, "leader-follower 2.0");
  const BoundReport b2 = bound_leader_follower(1.0, 2.0, 3.0, 0.3);
  r.require(!b2.admissible && rel(b2.threshold_F, 0.25) <= 1e-12, "leader-follower inadmissible, threshold 0.25");

  BoundParams p;
  p.mode = ParamMode::user;
  p.gamma_inv_sq = 1.5;
  p.delta = 0.5;
  const double F = 0.1;
  const BoundReport c = bound_localization(1.0, F, p);
  r.require(rel(c.bound_value, 16.0 / 9.0 * F * F) <= 1e-12, "localization 16/9 F^2");
  p.gamma_inv_sq = 5.0;
  bool rejected = false;
  try {
    bound_localization(1.0, F, p);
  } catch (const BoundParamError&) {
    rejected = true;
  }
  r.require(rejected, "gamma^-2 = 5 violates the constraint");

  const double lam = 1.0, h = 2.0, ps = 3.0;
  const BoundReport best0 = bound_leader_follower(lam, h, ps, 0.0);
  const BoundReport best = bound_leader_follower(lam, h, ps, 0.1);
  int grid_ok = 0;
  for (int k = 1; k <= 99; ++k) {
    BoundParams q;
    q.mode = ParamMode::user;
    q.epsilon = lam * k / 100.0;
    const BoundReport t0 = bound_leader_follower(lam, h, ps, 0.0, q);
    const BoundReport t = bound_leader_follower(lam, h, ps, 0.1, q);
    const bool ok = t0.threshold_F <= best0.threshold_F * (1 + 1e-15) &&
                    (!t.admissible || t.bound_value >= best.bound_value * (1 - 1e-15));
    grid_ok += ok;
  }
  r.require(grid_ok == 99, "eps = lambda/2 optimal over the 99-point grid");
  r.detail << "0.4, inadmissible@0.5, 2.0, inadmissible@0.25, " << num(c.bound_value / (F * F))
           << " F^2, constraint rejected; eps grid " << grid_ok << "/99";
}

int cli_code(std::vector<std::string> args) {
  args.insert(args.begin(), "bearingsim");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

// 9. Determinism, exit codes and scenario round-trip.
void determinism_and_contract(Result& r) {
  const Scenario s = bundled("leader_follower_2plus2_2d");
  RunOverrides o;
  o.seed = 11;
  o.duration = 5.0;
  std::ostringstream a, b;
  write_csv(run(s, o), a);
  write_csv(run(s, o), b);
  r.require(!a.str().empty() && a.str() == b.str(), "identical CSV bytes for identical seed");

  const fs::path dir = fs::temp_directory_path() / "bearing_acceptance";
  fs::create_directories(dir);
  auto write = [&](const std::string& name, const std::string& text) {
    const fs::path p = dir / name;
    std::ofstream(p) << text;
    return p.string();
  };
  const std::string invalid = write("invalid.json", R"({"schema_version": 1, "name": "x"})");
  const std::string over = write("over.json", R"({
    "schema_version": 1, "name": "over", "system": "leader_follower", "dimension": 2,
    "agents": [{"id": 1, "leader": true, "target": [0, 0]}, {"id": 2, "leader": true, "target": [2, 0]},
               {"id": 3, "position": [1, 1], "target": [1, 1]}],
    "edges": [[1, 3], [2, 3]], "disturbance": {"kind": "sinusoidal", "amplitude": 2.0},
    "integrator": {"dt": 0.001, "duration": 1}})");
  const std::string diverge = write("diverge.json", R"({
    "schema_version": 1, "name": "diverge", "system": "localization", "dimension": 2,
    "agents": [{"id": 1, "leader": true, "position": [0, 0]}, {"id": 2, "leader": true, "position": [2, 0]},
               {"id": 3, "position": [1, 1], "estimate": [0, 0]}],
    "edges": [[1, 3], [2, 3]],
    "integrator": {"dt": 10, "duration": 10000, "record_stride": 1, "method": "euler"}})");
  const std::string out = dir.string();
  const int c0 = cli_code({"simulate", "localization_3node_2d", "--duration", "5", "--out-dir", out});
  const int c2 = cli_code({"simulate", invalid, "--out-dir", out});
  const int c3 = cli_code({"simulate", "localization_collinear_2d", "--out-dir", out});
  const int c4 = cli_code({"simulate", over, "--out-dir", out});
  const int c5 = cli_code({"simulate", diverge, "--out-dir", out});
  r.require(c0 == 0 && c2 == 2 && c3 == 3 && c4 == 4 && c5 == 5, "exit codes 0/2/3/4/5");

  int round_trips = 0, total = 0;
  for (const auto& entry : fs::directory_iterator(BEARING_SCENARIO_DIR)) {
    if (entry.path().extension() != ".json") continue;
    ++total;
    const Scenario sc = load_scenario(entry.path());
    round_trips += parse_scenario(serialize_scenario(sc)) == sc;
  }
  r.require(total > 0 && round_trips == total, "round-trip identity on bundled scenarios");
  fs::remove_all(dir);
  r.detail << "CSV identical (" << a.str().size() << " bytes); exit codes " << c0 << "/" << c2 << "/"
           << c3 << "/" << c4 << "/" << c5 << "; " << round_trips << "/" << total << " scenarios round-trip";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Result&)>>> criteria{
      {"rigidity classification", rigidity_classification},
      {"localizability", localizability},
      {"undisturbed convergence", undisturbed_convergence},
      {"leader-follower bound containment", leader_follower_containment},
      {"localization bound containment and decay rate", localization_containment},
      {"leaderless a-posteriori bound containment", leaderless_containment},
      {"randomized inequality suites", inequality_suites},
      {"bound formula values", bound_values},
      {"determinism and CLI contract", determinism_and_contract}};

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Result r;
    try {
      criteria[i].second(r);
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail << "[exception: " << e.what() << "]";
    }
    failed += !r.pass;
    std::cout << (r.pass ? "PASS" : "FAIL") << "  criterion " << i + 1 << ": " << criteria[i].first
              << ": " << r.detail.str() << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
