#include <doctest.h>

#include "property_suites.hpp"

namespace {
void check(const suites::Outcome& o) {
  INFO(o.name << ": " << o.failures << " of " << o.instances << " failed; " << o.first_failure);
  CHECK(o.instances > 0);
  CHECK(o.failures == 0);
}
}  // namespace

TEST_CASE("bearing error identity") { check(suites::bearing_error_identity(101)); }
TEST_CASE("sign inequalities") { check(suites::bearing_sign_inequalities(102)); }
TEST_CASE("Laplacian lower bound") { check(suites::laplacian_lower_bound(103)); }
TEST_CASE("projection operator") { check(suites::projection_properties(104)); }
TEST_CASE("null motions") { check(suites::null_motions(105)); }
TEST_CASE("follower equilibrium") { check(suites::follower_equilibrium(106)); }
TEST_CASE("Rayleigh lower bound") { check(suites::rayleigh_lower_bound(107)); }
TEST_CASE("rigid null space") { check(suites::rigid_null_space(108)); }
