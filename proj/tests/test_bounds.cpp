#include <doctest.h>

#include <cmath>
#include <limits>

#include "bearing/bounds.hpp"
#include "bearing/errors.hpp"

using namespace bearing;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

BoundParams user_eps(double eps) {
  BoundParams p;
  p.mode = ParamMode::user;
  p.epsilon = eps;
  return p;
}

BoundParams user_loc(double g, double d) {
  BoundParams p;
  p.mode = ParamMode::user;
  p.gamma_inv_sq = g;
  p.delta = d;
  return p;
}

SimTrace trace_of(std::vector<double> errors) {
  SimTrace t;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    t.times.push_back(static_cast<double>(i));
    t.step_index.push_back(i);
    t.error_norms.push_back(errors[i]);
    t.states.push_back(Eigen::VectorXd::Zero(2));
  }
  return t;
}

}  // namespace

TEST_CASE("leaderless bound values") {
  CHECK(bound_leaderless(1.0, 1.0, 0.0).bound_value == 0.0);
  const BoundReport r = bound_leaderless(1.0, 1.0, 0.6);
  CHECK(r.admissible);
  CHECK(r.squared);
  CHECK(r.a_posteriori);
  CHECK(rel(r.bound_value, 0.4) <= 1e-12);
  const BoundReport bad = bound_leaderless(1.0, 4.0, 0.6);
  CHECK_FALSE(bad.admissible);
  CHECK(bad.threshold_F == 0.5);
  CHECK(std::isinf(bad.bound_value));
  // Exactly at the threshold the bound is 2 (bearings orthogonal at worst).
  CHECK(bound_leaderless(1.0, 4.0, 0.5).bound_value == doctest::Approx(2.0));
  CHECK_THROWS_AS(bound_leaderless(0.0, 1.0, 0.1), SpectralError);
  CHECK_THROWS_AS(bound_leaderless(1.0, -1.0, 0.1), SpectralError);
}

TEST_CASE("leader-follower bound values") {
  CHECK(bound_leader_follower(1.0, 2.0, 3.0, 0.0).bound_value == 0.0);
  const BoundReport r = bound_leader_follower(1.0, 2.0, 3.0, 0.1);
  CHECK(r.admissible);
  CHECK_FALSE(r.squared);
  REQUIRE(r.epsilon);
  CHECK(*r.epsilon == 0.5);
  CHECK(rel(r.bound_value, 2.0) <= 1e-12);
  // Closed form at eps = lambda / 2: 2 |p*| |H| F / (lambda - 2 |H| F).
  CHECK(rel(r.bound_value, 2 * 3.0 * 2.0 * 0.1 / (1.0 - 2 * 2.0 * 0.1)) <= 1e-12);

  const BoundReport bad = bound_leader_follower(1.0, 2.0, 3.0, 0.3);
  CHECK_FALSE(bad.admissible);
  CHECK(rel(bad.threshold_F, 0.25) <= 1e-12);
  CHECK(bad.threshold_strict);
  // At the threshold itself the inequality is strict.
  CHECK_FALSE(bound_leader_follower(1.0, 2.0, 3.0, 0.25).admissible);

  CHECK_THROWS_AS(bound_leader_follower(1.0, 2.0, 3.0, 0.1, user_eps(1.0)), BoundParamError);
  CHECK_THROWS_AS(bound_leader_follower(1.0, 2.0, 3.0, 0.1, user_eps(0.0)), BoundParamError);
  BoundParams missing;
  missing.mode = ParamMode::user;
  CHECK_THROWS_AS(bound_leader_follower(1.0, 2.0, 3.0, 0.1, missing), BoundParamError);
}

TEST_CASE("localization bound values") {
  CHECK(bound_localization(1.0, 0.0).bound_value == 0.0);
  const BoundReport r = bound_localization(1.0, 0.3, user_loc(1.5, 0.5));
  CHECK(r.admissible);
  CHECK(r.squared);
  const double coeff = (1.0 / 1.5) / (1.0 - 1.5 / 4 - 0.5 / 2);
  CHECK(rel(coeff, 16.0 / 9.0) <= 1e-15);
  CHECK(rel(r.bound_value, coeff * 0.09) <= 1e-12);
  CHECK(std::isinf(r.threshold_F));
  CHECK_THROWS_AS(bound_localization(1.0, 0.3, user_loc(5.0, 0.5)), BoundParamError);

  const BoundReport def = bound_localization(2.0, 0.1);
  REQUIRE(def.delta);
  REQUIRE(def.gamma_inv_sq);
  CHECK(*def.delta == doctest::Approx(0.2));
  CHECK(*def.gamma_inv_sq == doctest::Approx(3.8));
}

TEST_CASE("default localization parameters always satisfy the constraint") {
  for (double lam = 1e-4; lam < 1e4; lam *= 1.7) {
    const BoundReport r = bound_localization(lam, 1.0);
    CHECK(lam - *r.gamma_inv_sq / 4 > *r.delta / 2);
    CHECK(r.admissible);
  }
}

TEST_CASE("epsilon = lambda/2 maximizes the threshold and minimizes the bound") {
  const double lam = 1.3, h = 2.2, ps = 1.7;
  const BoundReport best = bound_leader_follower(lam, h, ps, 0.0);
  const double F = 0.3 * best.threshold_F;
  const BoundReport best_f = bound_leader_follower(lam, h, ps, F);
  for (int k = 1; k <= 99; ++k) {
    const double eps = lam * k / 100.0;
    const BoundReport r = bound_leader_follower(lam, h, ps, F, user_eps(eps));
    CHECK(r.threshold_F <= best.threshold_F * (1 + 1e-15));
    if (r.admissible) CHECK(r.bound_value >= best_f.bound_value * (1 - 1e-15));
  }
}

TEST_CASE("bounds increase with F on the admissible range") {
  double prev_a = -1, prev_b = -1, prev_c = -1;
  for (int k = 1; k < 100; ++k) {
    const double a = bound_leaderless(1.0, 2.0, k / 100.0 * std::sqrt(0.5)).bound_value;
    const double b = bound_leader_follower(1.0, 2.0, 3.0, k / 100.0 * 0.25).bound_value;
    const double c = bound_localization(1.0, k / 100.0).bound_value;
    CHECK(a > prev_a);
    CHECK(b > prev_b);
    CHECK(c > prev_c);
    prev_a = a;
    prev_b = b;
    prev_c = c;
  }
  // Leader-follower bound grows without limit near the threshold.
  CHECK(bound_leader_follower(1.0, 2.0, 3.0, 0.25 * (1 - 1e-9)).bound_value > 1e8);
}

TEST_CASE("verdict") {
  BoundReport r = bound_leader_follower(1.0, 2.0, 3.0, 0.1);
  SUBCASE("zero error") {
    const BoundReport v = verdict(r, trace_of({0, 0, 0, 0, 0}));
    CHECK(v.verdict->contained);
    CHECK(v.verdict->settling_index == 0);
  }
  SUBCASE("always above the bound") {
    const BoundReport v = verdict(r, trace_of({5, 5, 5, 5, 5}));
    CHECK_FALSE(v.verdict->contained);
    CHECK_FALSE(v.verdict->settling_index.has_value());
  }
  SUBCASE("settles late") {
    const BoundReport v = verdict(r, trace_of({5, 3, 1.9, 2.5, 1, 0.5, 0.2, 0.1, 0.1, 0.1}));
    CHECK(v.verdict->contained);
    CHECK(v.verdict->settling_index == 4);
    CHECK(v.verdict->steady_state_error == doctest::Approx(0.1));
  }
  SUBCASE("squared comparison") {
    BoundReport s = bound_localization(1.0, 0.3, user_loc(1.5, 0.5));  // 0.16
    CHECK(verdict(s, trace_of({0.39, 0.39})).verdict->contained);
    CHECK_FALSE(verdict(s, trace_of({0.41, 0.41})).verdict->contained);
  }
  SUBCASE("aborted") {
    SimTrace t = trace_of({0.1});
    t.aborted = true;
    CHECK_THROWS_AS(verdict(r, t), AbortedTraceError);
    CHECK_THROWS_AS(verdict(r, SimTrace{}), AbortedTraceError);
  }
  SUBCASE("inadmissible is never contained") {
    const BoundReport bad = bound_leader_follower(1.0, 2.0, 3.0, 0.3);
    CHECK_FALSE(verdict(bad, trace_of({0, 0})).verdict->contained);
  }
}
