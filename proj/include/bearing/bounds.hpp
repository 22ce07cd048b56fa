#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "bearing/dynamics.hpp"
#include "bearing/integrator.hpp"
#include "bearing/rigidity.hpp"

namespace bearing {

enum class ParamMode { default_, user };

/// Tuning constants of the leader-follower (epsilon) and localization
/// (gamma, delta) bounds. Unset values are chosen by default rules.
struct BoundParams {
  ParamMode mode = ParamMode::default_;
  std::optional<double> epsilon;
  std::optional<double> gamma_inv_sq;  // gamma^-2
  std::optional<double> delta;

  friend bool operator==(const BoundParams&, const BoundParams&) = default;
};

struct Verdict {
  double steady_state_error = 0.0;
  bool contained = false;
  /// First recorded sample after which the error never exceeds the bound.
  std::optional<std::size_t> settling_index;
};

struct BoundReport {
  SystemKind kind = SystemKind::leaderless;
  bool admissible = false;
  /// Radius for e_b; squared radius for e_a and e_c. +inf when inadmissible.
  double bound_value = 0.0;
  bool squared = false;
  double disturbance_bound = 0.0;  // F
  double threshold_F = 0.0;        // admissible disturbance limit (+inf if none)
  bool threshold_strict = false;   // F must be strictly below threshold_F

  // Inputs, as applicable to the system.
  std::optional<double> lambda_min_bff;
  std::optional<double> norm_h_bar;
  std::optional<double> norm_p_star;
  std::optional<double> lambda_min_plus_t;
  std::optional<double> lambda_max_t;
  ParamMode param_mode = ParamMode::default_;
  std::optional<double> epsilon;
  std::optional<double> gamma_inv_sq;
  std::optional<double> delta;
  /// Leaderless bounds rest on spectra sampled along the trajectory.
  bool a_posteriori = false;
  /// Where the spectral inputs came from, for the report.
  std::string spectral_source;

  std::optional<Verdict> verdict;
};

/// Leaderless bound: |e_a|^2 <= 2 - 2 sqrt(1 - lambda_max_t F^2 / lambda_min_plus_t^2),
/// admissible while F <= lambda_min_plus_t / sqrt(lambda_max_t).
/// Throws SpectralError on non-positive spectral inputs.
BoundReport bound_leaderless(double lambda_min_plus_t, double lambda_max_t, double F);

/// Leader-follower bound:
/// |e_b| <= |p*| |H| F / (sqrt(eps (lambda - eps)) - |H| F), admissible while
/// F < sqrt(eps (lambda - eps)) / |H|. Default eps = lambda / 2.
/// Throws BoundParamError unless 0 < eps < lambda.
BoundReport bound_leader_follower(double lambda_min_bff, double norm_h_bar, double norm_p_star,
                                  double F, const BoundParams& params = {});

/// Localization bound:
/// |e_c|^2 <= gamma^2 F^2 / (lambda - gamma^-2 / 4 - delta / 2), valid when
/// lambda - gamma^-2 / 4 > delta / 2. Defaults: delta = lambda / 10 and
/// gamma^-2 = 2 lambda - delta (the denominator maximizer).
/// Throws BoundParamError when the constraint fails.
BoundReport bound_localization(double lambda_min_bff, double F, const BoundParams& params = {});

/// Solves B_ff x = -B_fl p_l. Throws NotLocalizableError if B_ff is not
/// positive definite.
Eigen::VectorXd localization_oracle(const RigidityMatrices& matrices,
                                    const Eigen::Ref<const Eigen::VectorXd>& anchors);

/// Fills report.verdict from the trace. The steady-state error is the largest
/// recorded error over the final settle_fraction of samples; squared bounds
/// are compared against the squared error. Throws AbortedTraceError.
BoundReport verdict(BoundReport report, const SimTrace& trace, double settle_fraction = 0.2);

std::string to_string(ParamMode mode);

}  // namespace bearing
