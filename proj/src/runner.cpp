#include "bearing/runner.hpp"

#include <chrono>
#include <cmath>

#include "bearing/errors.hpp"

namespace bearing {

namespace {

Eigen::VectorXd stack_by_id(const Scenario& s,
                            const std::vector<double>& (*pick)(const AgentSpec&)) {
  const int d = s.dimension;
  Eigen::VectorXd out(static_cast<Eigen::Index>(s.agents.size()) * d);
  for (const auto& a : s.agents) {
    const auto& v = pick(a);
    for (int c = 0; c < d; ++c) out((a.id - 1) * d + c) = v[c];
  }
  return out;
}

const std::vector<double>& pick_position(const AgentSpec& a) { return a.position; }
const std::vector<double>& pick_target(const AgentSpec& a) { return *a.target; }

bool has_target_configuration(const Scenario& s) {
  if (s.system == SystemKind::leaderless && s.target_mode == TargetMode::bearings) return false;
  return s.system != SystemKind::localization;
}

/// Threshold-relative amplitudes need the admissible F limit of the system.
DisturbanceProfile make_profile(const PreparedScenario& p, std::uint64_t seed,
                                std::optional<double> threshold, bool silent = false) {
  const Scenario& s = p.scenario;
  const int n = p.model.graph.node_count();
  DisturbanceProfile profile;
  profile.kind = silent ? DisturbanceKind::none : s.disturbance.kind;
  profile.dimension = s.dimension;
  profile.omega = s.disturbance.omega;
  profile.seed = seed;
  profile.applies_to = disturbed_agents(s.system, n, p.model.leader_count);
  profile.amplitudes.assign(n, 0.0);
  if (profile.kind == DisturbanceKind::none) return profile;

  const int disturbed = static_cast<int>(
      std::count(profile.applies_to.begin(), profile.applies_to.end(), true));
  for (std::size_t i = 0; i < s.agents.size(); ++i) {
    const int c = p.labels.new_of_old[s.agents[i].id - 1];
    if (!profile.applies_to[c]) continue;
    if (s.disturbance.amplitude) {
      profile.amplitudes[c] = *s.disturbance.amplitude;
    } else if (s.disturbance.amplitudes) {
      profile.amplitudes[c] = (*s.disturbance.amplitudes)[i];
    } else if (s.disturbance.fraction_of_threshold) {
      if (!threshold || !std::isfinite(*threshold))
        throw BoundParamError("no finite admissibility threshold to scale the disturbance by");
      profile.amplitudes[c] =
          *s.disturbance.fraction_of_threshold * *threshold / std::sqrt(static_cast<double>(disturbed));
    }
  }
  return profile;
}

IntegratorSettings settings_for(const Scenario& s, const RunOverrides& o) {
  IntegratorSettings st;
  st.dt = o.dt.value_or(s.integrator.dt);
  st.duration = o.duration.value_or(s.integrator.duration);
  st.record_stride = s.integrator.record_stride;
  st.method = s.integrator.method;
  return st;
}

BoundReport formation_bound(const PreparedScenario& p, const PrecheckSummary& pre, double F) {
  if (p.scenario.system == SystemKind::leader_follower) {
    BoundReport r = bound_leader_follower(*pre.lambda_min_bff, incidence_norm(p.model.graph),
                                          p.reference.stacked().norm(), F, p.scenario.bounds);
    r.spectral_source = "bearing Laplacian of the target formation";
    return r;
  }
  BoundReport r = bound_localization(*pre.lambda_min_bff, F, p.scenario.bounds);
  r.spectral_source = "bearing Laplacian of the true network";
  return r;
}

}  // namespace

PreparedScenario prepare(const Scenario& s) {
  const int n = static_cast<int>(s.agents.size());
  const int d = s.dimension;

  std::vector<std::pair<int, int>> edges;
  for (const auto& [a, b] : s.edges) edges.emplace_back(a - 1, b - 1);
  const NetworkGraph graph(n, edges);
  std::vector<int> leaders;
  for (const auto& a : s.agents)
    if (a.leader) leaders.push_back(a.id - 1);
  Relabeling labels = canonicalize_partition(
      graph, AgentPartition::from_leaders(n, leaders), s.system == SystemKind::leaderless ? 0 : 2);
  const int nl = labels.leader_count;

  const Eigen::VectorXd positions = labels.to_canonical(stack_by_id(s, pick_position), d);
  const bool has_target = has_target_configuration(s);
  const Eigen::VectorXd targets =
      has_target ? labels.to_canonical(stack_by_id(s, pick_target), d) : positions;

  SystemModel model{s.system, labels.graph, d, nl, std::nullopt, Eigen::VectorXd()};
  Eigen::VectorXd initial;
  try {
    switch (s.system) {
      case SystemKind::leaderless:
        if (has_target) {
          model.target = BearingTarget::from_configuration(labels.graph, Configuration(d, targets));
        } else {
          Eigen::VectorXd g_star(labels.graph.edge_count() * d);
          for (int k = 0; k < labels.graph.edge_count(); ++k) {
            const Edge e = labels.graph.edges()[k];
            for (const auto& b : s.bearings) {
              const int from = labels.new_of_old[b.from - 1];
              const int to = labels.new_of_old[b.to - 1];
              if (from == e.head && to == e.tail)
                g_star.segment(k * d, d) = Eigen::Map<const Eigen::VectorXd>(b.g.data(), d);
              else if (from == e.tail && to == e.head)
                g_star.segment(k * d, d) = -Eigen::Map<const Eigen::VectorXd>(b.g.data(), d);
            }
          }
          model.target = BearingTarget::from_bearings(labels.graph, d, g_star);
        }
        initial = positions;
        break;
      case SystemKind::leader_follower:
        model.target = BearingTarget::from_configuration(labels.graph, Configuration(d, targets));
        initial = positions;
        break;
      case SystemKind::localization: {
        model.truth = positions;
        Eigen::VectorXd estimates(static_cast<Eigen::Index>(n) * d);
        estimates.setZero();
        for (const auto& a : s.agents)
          if (a.estimate)
            for (int c = 0; c < d; ++c) estimates((a.id - 1) * d + c) = (*a.estimate)[c];
        initial = labels.to_canonical(estimates, d).tail(static_cast<Eigen::Index>(n - nl) * d);
        break;
      }
    }
  } catch (const CollocationError& e) {
    throw ValidationError(std::vector<ValidationIssue>{{"/agents", std::string("target configuration: ") + e.what()}});
  }

  return PreparedScenario{s, std::move(labels), std::move(model), Configuration(d, targets),
                          std::move(initial)};
}

PrecheckSummary check_rigidity(const PreparedScenario& p) {
  PrecheckSummary out;
  out.kind = "rigidity";
  try {
    const RigidityCheck rc = is_infinitesimally_bearing_rigid(p.model.graph, p.reference);
    out.passed = rc.rigid;
    out.rank = rc.rank;
    out.expected_rank = rc.expected_rank;
    out.detail = rc.rigid ? "infinitesimally bearing rigid"
                          : "not infinitesimally bearing rigid: rank(R_b) = " +
                                std::to_string(rc.rank) + ", need " + std::to_string(rc.expected_rank);
  } catch (const CollocationError& e) {
    out.detail = e.what();
  }
  return out;
}

PrecheckSummary check_localizability(const PreparedScenario& p) {
  PrecheckSummary out;
  out.kind = "localizability";
  try {
    const LocalizabilityCheck lc =
        is_bearing_localizable(p.model.graph, p.reference, p.model.leader_count);
    out.passed = lc.localizable;
    out.rank = lc.follower_block.rank;
    out.expected_rank = static_cast<int>(lc.matrices.ff.rows());
    out.lambda_min_bff = lc.follower_block.lambda_min;
    out.detail = lc.localizable ? "bearing localizable (B_ff positive definite)"
                                : "not bearing localizable: B_ff is singular";
  } catch (const BearingError& e) {
    out.detail = e.what();
  }
  return out;
}

RunResult run(const Scenario& s, const RunOverrides& overrides) {
  const auto start = std::chrono::steady_clock::now();
  const PreparedScenario p = prepare(s);

  RunResult result;
  result.scenario_name = s.name;
  result.kind = s.system;
  result.dimension = s.dimension;
  result.seed = overrides.seed.value_or(s.seed);
  result.leader_count = p.model.leader_count;
  for (int old : p.labels.old_of_new) result.canonical_ids.push_back(old + 1);

  auto finish = [&]() -> RunResult {
    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return std::move(result);
  };

  result.precheck =
      s.system == SystemKind::leaderless ? check_rigidity(p) : check_localizability(p);
  if (!result.precheck.passed) {
    result.status = RunStatus::precheck_failed;
    result.message = result.precheck.detail;
    return finish();
  }

  const IntegratorSettings settings = settings_for(s, overrides);
  if (s.system == SystemKind::leaderless)
    result.initial_error_sq =
        std::pow(error_leaderless(p.model.graph, p.initial, s.dimension, *p.model.target).norm, 2);

  try {
    std::optional<double> threshold;
    if (s.disturbance.fraction_of_threshold) {
      if (s.system == SystemKind::leaderless) {
        // Pilot run without disturbance to sample the spectra of R_b R_b^T.
        const DisturbanceProfile quiet = make_profile(p, result.seed, std::nullopt, true);
        const SimTrace pilot = integrate(p.model, p.initial, quiet, settings);
        if (pilot.aborted) {
          result.status = RunStatus::aborted;
          result.message = "pilot run aborted: " + pilot.events.back().what;
          return finish();
        }
        threshold = bound_leaderless(pilot.lambda_min_plus_t, pilot.lambda_max_t, 0.0).threshold_F;
      } else {
        threshold = formation_bound(p, result.precheck, 0.0).threshold_F;
      }
    }
    const DisturbanceProfile profile = make_profile(p, result.seed, threshold);
    result.disturbance_bound = profile.bound();

    SimTrace trace = integrate(p.model, p.initial, profile, settings);
    if (trace.aborted) {
      result.status = RunStatus::aborted;
      result.message = trace.events.empty() ? "aborted" : trace.events.back().what;
      result.trace = std::move(trace);
      return finish();
    }

    BoundReport report;
    if (s.system == SystemKind::leaderless) {
      report = bound_leaderless(trace.lambda_min_plus_t, trace.lambda_max_t, result.disturbance_bound);
      report.spectral_source = "running extrema of R_b R_b^T sampled at every integrator step";
    } else {
      report = formation_bound(p, result.precheck, result.disturbance_bound);
    }
    result.report = verdict(std::move(report), trace, s.settle_fraction);
    result.trace = std::move(trace);
    result.status = RunStatus::completed;
    result.message = result.report->verdict->contained ? "error contained in bound set"
                                                       : "error not contained in bound set";
  } catch (const NotRigidError& e) {
    result.status = RunStatus::precheck_failed;
    result.message = e.what();
  } catch (const NotLocalizableError& e) {
    result.status = RunStatus::precheck_failed;
    result.message = e.what();
  }
  return finish();
}

BoundReport bounds_without_simulation(const Scenario& s) {
  const PreparedScenario p = prepare(s);
  if (s.system == SystemKind::leaderless) {
    const SpectralSummary snap =
        gram_spectrum(bearing_rigidity_matrix(p.model.graph, p.reference));
    if (!snap.lambda_min_plus) throw SpectralError("R_b vanishes at the reference configuration");
    const double threshold = bound_leaderless(*snap.lambda_min_plus, snap.lambda_max, 0.0).threshold_F;
    const DisturbanceProfile profile = make_profile(p, s.seed, threshold);
    BoundReport r = bound_leaderless(*snap.lambda_min_plus, snap.lambda_max, profile.bound());
    r.spectral_source =
        "snapshot of R_b R_b^T at the reference configuration (indicative only; the bound "
        "needs spectra along the trajectory)";
    return r;
  }
  const PrecheckSummary pre = check_localizability(p);
  if (!pre.passed) throw NotLocalizableError(pre.detail);
  const double threshold = s.system == SystemKind::leader_follower
                               ? formation_bound(p, pre, 0.0).threshold_F
                               : std::numeric_limits<double>::infinity();
  const DisturbanceProfile profile =
      make_profile(p, s.seed, std::isfinite(threshold) ? std::optional(threshold) : std::nullopt);
  return formation_bound(p, pre, profile.bound());
}

Eigen::VectorXd oracle_positions(const PreparedScenario& p) {
  const int nl = p.model.leader_count;
  const int d = p.model.dimension;
  if (nl < 2) throw PartitionError("the least-squares oracle needs at least two leaders");
  const RigidityMatrices m = bearing_laplacian(p.model.graph, p.reference, nl);
  return localization_oracle(m, p.reference.stacked().head(static_cast<Eigen::Index>(nl) * d));
}

int exit_code(const RunResult& r) {
  switch (r.status) {
    case RunStatus::precheck_failed: return kExitPrecheck;
    case RunStatus::aborted: return kExitAbort;
    case RunStatus::completed:
      return r.report && r.report->verdict && r.report->verdict->contained ? kExitOk
                                                                           : kExitBoundViolated;
  }
  return kExitAbort;
}

}  // namespace bearing
