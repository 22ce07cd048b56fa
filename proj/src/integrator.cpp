#include "bearing/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "bearing/errors.hpp"
#include "bearing/rigidity.hpp"

namespace bearing {

namespace {

using Field = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

Eigen::VectorXd advance(const Field& field, const Eigen::VectorXd& x, const Eigen::VectorXd& f,
                        double dt, Method method) {
  if (method == Method::euler) return x + dt * (field(x) + f);
  const Eigen::VectorXd k1 = field(x) + f;
  const Eigen::VectorXd k2 = field(x + 0.5 * dt * k1) + f;
  const Eigen::VectorXd k3 = field(x + 0.5 * dt * k2) + f;
  const Eigen::VectorXd k4 = field(x + dt * k3) + f;
  return x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

void validate_settings(const IntegratorSettings& s) {
  if (!(s.dt > 0.0) || !std::isfinite(s.dt)) throw BearingError("dt must be positive");
  if (!(s.duration >= s.dt) || !std::isfinite(s.duration))
    throw BearingError("duration must be at least one step");
  if (s.record_stride < 1) throw BearingError("record_stride must be >= 1");
}

}  // namespace

SimTrace integrate(const SystemModel& model, const Eigen::VectorXd& initial,
                   const DisturbanceProfile& profile, const IntegratorSettings& settings) {
  validate_settings(settings);
  const NetworkGraph& g = model.graph;
  const int d = model.dimension;
  const int n = g.node_count();
  const int nl = model.leader_count;
  if (profile.dimension != d || static_cast<int>(profile.amplitudes.size()) != n)
    throw DimensionError("disturbance profile does not match the system size");

  // Leaders never receive a disturbance outside the leaderless system.
  DisturbanceProfile masked = profile;
  masked.applies_to.resize(n, false);
  const std::vector<bool> allowed = disturbed_agents(model.kind, n, nl);
  for (int i = 0; i < n; ++i) masked.applies_to[i] = masked.applies_to[i] && allowed[i];

  Field field;
  std::function<double(const Eigen::VectorXd&)> error_norm;
  Eigen::Index disturbance_offset = 0;

  switch (model.kind) {
    case SystemKind::leaderless: {
      if (!model.target) throw TargetError("leaderless system needs desired bearings");
      if (initial.size() != n * d) throw DimensionError("initial configuration has wrong size");
      const RigidityCheck rc = is_infinitesimally_bearing_rigid(g, Configuration(d, initial));
      if (!rc.rigid)
        throw NotRigidError("initial framework is not infinitesimally bearing rigid (rank " +
                            std::to_string(rc.rank) + ", need " +
                            std::to_string(rc.expected_rank) + ")");
      const BearingTarget& target = *model.target;
      field = [&g, d, &target](const Eigen::VectorXd& x) {
        return leaderless_control(g, x, d, target);
      };
      error_norm = [&g, d, &target](const Eigen::VectorXd& x) {
        return error_leaderless(g, x, d, target).norm;
      };
      break;
    }
    case SystemKind::leader_follower: {
      if (!model.target || !model.target->configuration())
        throw TargetError("leader-follower system needs a target configuration");
      if (initial.size() != n * d) throw DimensionError("initial configuration has wrong size");
      const Configuration& p_star = *model.target->configuration();
      const LocalizabilityCheck lc = is_bearing_localizable(g, p_star, nl);
      if (!lc.localizable) throw NotLocalizableError("target formation is not bearing localizable");
      if (initial.head(nl * d) != p_star.stacked().head(nl * d))
        throw LeaderDriftError("initial leader positions differ from their targets");
      const BearingTarget& target = *model.target;
      field = [&g, d, &target, nl](const Eigen::VectorXd& x) {
        return leader_follower_control(g, x, d, target, nl);
      };
      const Eigen::VectorXd ps = p_star.stacked();
      error_norm = [ps, d, nl](const Eigen::VectorXd& x) {
        return error_leader_follower(x, ps, d, nl).norm;
      };
      break;
    }
    case SystemKind::localization: {
      if (model.truth.size() != n * d) throw DimensionError("true configuration has wrong size");
      if (initial.size() != (n - nl) * d)
        throw DimensionError("initial estimates must cover the followers only");
      const LocalizabilityCheck lc = is_bearing_localizable(g, Configuration(d, model.truth), nl);
      if (!lc.localizable) throw NotLocalizableError("network is not bearing localizable");
      const Eigen::MatrixXd bff = lc.matrices.ff;
      const Eigen::VectorXd drift = lc.matrices.fl * model.truth.head(nl * d);
      field = [bff, drift](const Eigen::VectorXd& x) -> Eigen::VectorXd {
        return -bff * x - drift;
      };
      const Eigen::VectorXd pf = model.truth.tail((n - nl) * d);
      error_norm = [pf](const Eigen::VectorXd& x) { return error_localization(x, pf).norm; };
      disturbance_offset = static_cast<Eigen::Index>(nl) * d;
      break;
    }
  }

  SimTrace trace;
  trace.kind = model.kind;
  trace.dt = settings.dt;
  trace.record_stride = settings.record_stride;
  trace.steps = static_cast<std::size_t>(std::llround(settings.duration / settings.dt));

  Eigen::VectorXd x = initial;
  for (std::size_t k = 0;; ++k) {
    const double t = static_cast<double>(k) * settings.dt;
    const bool record = k % static_cast<std::size_t>(settings.record_stride) == 0 || k == trace.steps;
    try {
      SpectralSample sample;
      if (model.kind == SystemKind::leaderless) {
        const SpectralSummary s = gram_spectrum(bearing_rigidity_matrix(g, x, d));
        sample.lambda_min_plus = s.lambda_min_plus.value_or(0.0);
        sample.lambda_max = s.lambda_max;
        trace.lambda_min_plus_t = std::min(trace.lambda_min_plus_t, sample.lambda_min_plus);
        trace.lambda_max_t = std::max(trace.lambda_max_t, sample.lambda_max);
      }
      if (record) {
        trace.error_norms.push_back(error_norm(x));
        trace.step_index.push_back(k);
        trace.times.push_back(t);
        trace.states.push_back(x);
        if (model.kind == SystemKind::leaderless) trace.spectral.push_back(sample);
      }
      if (k == trace.steps) break;

      const Eigen::VectorXd f =
          generate_disturbance(masked, t).segment(disturbance_offset, x.size());
      Eigen::VectorXd next = advance(field, x, f, settings.dt, settings.method);
      if (!next.allFinite()) {
        trace.events.push_back({k + 1, t + settings.dt, "non-finite state"});
        trace.aborted = true;
        break;
      }
      x = std::move(next);
    } catch (const CollocationError& e) {
      trace.events.push_back({k, t, std::string("collocation: ") + e.what()});
      trace.aborted = true;
      break;
    }
  }
  return trace;
}

}  // namespace bearing
