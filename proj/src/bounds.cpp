#include "bearing/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bearing/errors.hpp"

namespace bearing {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_positive_finite(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value))
    throw SpectralError(std::string(name) + " must be positive and finite, got " +
                        std::to_string(value));
}

void require_disturbance(double F) {
  if (!(F >= 0.0) || !std::isfinite(F))
    throw BoundParamError("disturbance bound F must be finite and non-negative");
}

}  // namespace

std::string to_string(ParamMode mode) { return mode == ParamMode::user ? "user" : "default"; }

BoundReport bound_leaderless(double lambda_min_plus_t, double lambda_max_t, double F) {
  require_positive_finite(lambda_min_plus_t, "lambda_min_plus_t");
  require_positive_finite(lambda_max_t, "lambda_max_t");
  require_disturbance(F);

  BoundReport r;
  r.kind = SystemKind::leaderless;
  r.squared = true;
  r.a_posteriori = true;
  r.disturbance_bound = F;
  r.lambda_min_plus_t = lambda_min_plus_t;
  r.lambda_max_t = lambda_max_t;
  r.threshold_F = std::sqrt(lambda_min_plus_t * lambda_min_plus_t / lambda_max_t);
  r.threshold_strict = false;
  r.admissible = F <= r.threshold_F;
  if (r.admissible) {
    const double psi = lambda_max_t * F * F / (lambda_min_plus_t * lambda_min_plus_t);
    r.bound_value = 2.0 - 2.0 * std::sqrt(std::max(0.0, 1.0 - psi));
  } else {
    r.bound_value = kInf;
  }
  return r;
}

BoundReport bound_leader_follower(double lambda_min_bff, double norm_h_bar, double norm_p_star,
                                  double F, const BoundParams& params) {
  require_positive_finite(lambda_min_bff, "lambda_min(B_ff)");
  require_positive_finite(norm_h_bar, "|H_bar|");
  if (!(norm_p_star >= 0.0) || !std::isfinite(norm_p_star))
    throw BoundParamError("|p*| must be finite and non-negative");
  require_disturbance(F);

  double eps = lambda_min_bff / 2.0;
  if (params.mode == ParamMode::user) {
    if (!params.epsilon) throw BoundParamError("user mode requires epsilon");
    eps = *params.epsilon;
  } else if (params.epsilon) {
    eps = *params.epsilon;
  }
  if (!(eps > 0.0 && eps < lambda_min_bff))
    throw BoundParamError("epsilon must satisfy 0 < epsilon < lambda_min(B_ff) = " +
                          std::to_string(lambda_min_bff) + ", got " + std::to_string(eps));

  BoundReport r;
  r.kind = SystemKind::leader_follower;
  r.squared = false;
  r.disturbance_bound = F;
  r.lambda_min_bff = lambda_min_bff;
  r.norm_h_bar = norm_h_bar;
  r.norm_p_star = norm_p_star;
  r.param_mode = params.mode;
  r.epsilon = eps;
  const double margin = std::sqrt(eps * (lambda_min_bff - eps));
  r.threshold_F = margin / norm_h_bar;
  r.threshold_strict = true;
  r.admissible = F < r.threshold_F;
  r.bound_value = r.admissible ? norm_p_star * norm_h_bar * F / (margin - norm_h_bar * F) : kInf;
  return r;
}

BoundReport bound_localization(double lambda_min_bff, double F, const BoundParams& params) {
  require_positive_finite(lambda_min_bff, "lambda_min(B_ff)");
  require_disturbance(F);

  const double delta = params.delta.value_or(lambda_min_bff / 10.0);
  const double gamma_inv_sq = params.gamma_inv_sq.value_or(2.0 * lambda_min_bff - delta);
  if (!(delta > 0.0) || !std::isfinite(delta)) throw BoundParamError("delta must be positive");
  if (!(gamma_inv_sq > 0.0) || !std::isfinite(gamma_inv_sq))
    throw BoundParamError("gamma^-2 must be positive");
  const double denom = lambda_min_bff - gamma_inv_sq / 4.0 - delta / 2.0;
  if (!(denom > 0.0))
    throw BoundParamError("constraint lambda_min(B_ff) - gamma^-2/4 > delta/2 violated (" +
                          std::to_string(lambda_min_bff - gamma_inv_sq / 4.0) +
                          " <= " + std::to_string(delta / 2.0) + ")");

  BoundReport r;
  r.kind = SystemKind::localization;
  r.squared = true;
  r.disturbance_bound = F;
  r.lambda_min_bff = lambda_min_bff;
  r.param_mode = params.mode;
  r.gamma_inv_sq = gamma_inv_sq;
  r.delta = delta;
  r.threshold_F = kInf;
  r.admissible = true;
  r.bound_value = (1.0 / gamma_inv_sq) * F * F / denom;
  return r;
}

Eigen::VectorXd localization_oracle(const RigidityMatrices& matrices,
                                    const Eigen::Ref<const Eigen::VectorXd>& anchors) {
  if (anchors.size() != matrices.fl.cols())
    throw DimensionError("anchor vector does not match B_fl");
  if (matrices.ff.size() == 0) throw NotLocalizableError("no follower agents");
  const SpectralSummary s = spectral_summary(matrices.ff);
  const Eigen::LLT<Eigen::MatrixXd> llt(matrices.ff);
  if (llt.info() != Eigen::Success || !(s.lambda_min > s.zero_tol))
    throw NotLocalizableError("B_ff is singular; follower positions are not determined");
  return llt.solve(-matrices.fl * anchors);
}

BoundReport verdict(BoundReport report, const SimTrace& trace, double settle_fraction) {
  if (trace.aborted) throw AbortedTraceError("cannot judge an aborted trace");
  if (trace.size() == 0) throw AbortedTraceError("empty trace");
  if (!(settle_fraction > 0.0 && settle_fraction <= 1.0))
    throw BoundParamError("settle_fraction must lie in (0, 1]");

  auto measure = [&](double norm) { return report.squared ? norm * norm : norm; };
  const double t_end = trace.times.back();
  const double t_start = t_end - settle_fraction * t_end;

  Verdict v;
  for (std::size_t i = 0; i < trace.size(); ++i)
    if (trace.times[i] >= t_start) v.steady_state_error = std::max(v.steady_state_error, trace.error_norms[i]);
  v.contained = report.admissible && measure(v.steady_state_error) <= report.bound_value;

  if (report.admissible) {
    std::size_t first = trace.size();
    for (std::size_t i = trace.size(); i-- > 0;) {
      if (measure(trace.error_norms[i]) > report.bound_value) break;
      first = i;
    }
    if (first < trace.size()) v.settling_index = first;
  }
  report.verdict = v;
  return report;
}

}  // namespace bearing
