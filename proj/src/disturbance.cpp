#include "bearing/disturbance.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace bearing {

namespace {

constexpr double kRadiusMargin = 1e-12;

// splitmix64 finalizer; turns (seed, time, agent) into an engine seed.
std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 engine_for(std::uint64_t seed, std::uint64_t salt, std::uint64_t agent) {
  return std::mt19937_64(mix(mix(mix(seed) ^ salt) ^ agent));
}

Eigen::VectorXd unit_direction(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd v(d);
  do {
    for (int k = 0; k < d; ++k) v(k) = normal(rng);
  } while (v.norm() < 1e-12);
  return v.normalized();
}

}  // namespace

std::string_view to_string(DisturbanceKind kind) {
  switch (kind) {
    case DisturbanceKind::none: return "none";
    case DisturbanceKind::uniform_ball: return "uniform_ball";
    case DisturbanceKind::sinusoidal: return "sinusoidal";
  }
  return "none";
}

DisturbanceKind disturbance_kind_from_string(std::string_view name) {
  if (name == "none") return DisturbanceKind::none;
  if (name == "uniform_ball") return DisturbanceKind::uniform_ball;
  if (name == "sinusoidal") return DisturbanceKind::sinusoidal;
  throw std::invalid_argument("unknown disturbance kind '" + std::string(name) + "'");
}

double DisturbanceProfile::bound() const {
  if (kind == DisturbanceKind::none) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < amplitudes.size(); ++i)
    if (i < applies_to.size() && applies_to[i]) sum += amplitudes[i] * amplitudes[i];
  return std::sqrt(sum);
}

Eigen::VectorXd generate_disturbance(const DisturbanceProfile& profile, double t) {
  const int d = profile.dimension;
  const int n = static_cast<int>(profile.amplitudes.size());
  Eigen::VectorXd f = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n) * d);
  if (profile.kind == DisturbanceKind::none) return f;

  const auto time_bits = std::bit_cast<std::uint64_t>(t);
  for (int i = 0; i < n; ++i) {
    if (i >= static_cast<int>(profile.applies_to.size()) || !profile.applies_to[i]) continue;
    const double v = profile.amplitudes[i];
    if (v <= 0.0) continue;
    if (profile.kind == DisturbanceKind::uniform_ball) {
      auto rng = engine_for(profile.seed, time_bits, static_cast<std::uint64_t>(i));
      const Eigen::VectorXd dir = unit_direction(rng, d);
      // Radius capped just below v so rounding in |dir| cannot push |f_i| past v.
      const double u = std::generate_canonical<double, 53>(rng);
      const double radius = std::min(std::pow(u, 1.0 / d), 1.0 - kRadiusMargin);
      f.segment(i * d, d) = v * radius * dir;
    } else {
      auto rng = engine_for(profile.seed, 0x5157ULL, static_cast<std::uint64_t>(i));
      const Eigen::VectorXd dir = unit_direction(rng, d);
      std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
      const double phi = phase(rng);
      f.segment(i * d, d) = v * (1.0 - kRadiusMargin) * std::sin(profile.omega * t + phi) * dir;
    }
  }
  return f;
}

}  // namespace bearing
