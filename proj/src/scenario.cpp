#include "bearing/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "bearing/errors.hpp"

namespace bearing {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr double kUnitTol = 1e-9;

/// Collects schema problems while walking the document.
class Reader {
 public:
  std::vector<ValidationIssue> issues;

  void fail(const std::string& where, std::string message) {
    issues.push_back({where.empty() ? "/" : where, std::move(message)});
  }

  void reject_unknown(const json& obj, const std::string& path,
                      std::initializer_list<std::string_view> known) {
    for (const auto& [key, _] : obj.items())
      if (std::find(known.begin(), known.end(), key) == known.end())
        fail(path + "/" + key, "unknown field");
  }

  const json* field(const json& obj, const std::string& key, const std::string& path,
                    bool required) {
    const auto it = obj.find(key);
    if (it == obj.end()) {
      if (required) fail(path + "/" + key, "missing required field");
      return nullptr;
    }
    return &*it;
  }

  std::optional<double> number(const json& obj, const std::string& key, const std::string& path,
                               bool required) {
    const json* v = field(obj, key, path, required);
    if (!v) return std::nullopt;
    if (!v->is_number()) {
      fail(path + "/" + key, "expected a number");
      return std::nullopt;
    }
    const double x = v->get<double>();
    if (!std::isfinite(x)) {
      fail(path + "/" + key, "must be finite");
      return std::nullopt;
    }
    return x;
  }

  std::optional<long long> integer(const json& obj, const std::string& key,
                                   const std::string& path, bool required) {
    const json* v = field(obj, key, path, required);
    if (!v) return std::nullopt;
    if (!v->is_number_integer()) {
      fail(path + "/" + key, "expected an integer");
      return std::nullopt;
    }
    return v->get<long long>();
  }

  std::optional<std::string> string(const json& obj, const std::string& key,
                                    const std::string& path, bool required) {
    const json* v = field(obj, key, path, required);
    if (!v) return std::nullopt;
    if (!v->is_string()) {
      fail(path + "/" + key, "expected a string");
      return std::nullopt;
    }
    return v->get<std::string>();
  }

  std::optional<bool> boolean(const json& obj, const std::string& key, const std::string& path,
                              bool required) {
    const json* v = field(obj, key, path, required);
    if (!v) return std::nullopt;
    if (!v->is_boolean()) {
      fail(path + "/" + key, "expected true or false");
      return std::nullopt;
    }
    return v->get<bool>();
  }

  std::optional<std::vector<double>> vector(const json& obj, const std::string& key,
                                            const std::string& path, bool required) {
    const json* v = field(obj, key, path, required);
    if (!v) return std::nullopt;
    const std::string where = path + "/" + key;
    if (!v->is_array()) {
      fail(where, "expected an array of numbers");
      return std::nullopt;
    }
    std::vector<double> out;
    for (const auto& x : *v) {
      if (!x.is_number() || !std::isfinite(x.get<double>())) {
        fail(where, "entries must be finite numbers");
        return std::nullopt;
      }
      out.push_back(x.get<double>());
    }
    return out;
  }

  const json* object(const json& obj, const std::string& key, const std::string& path,
                     bool required) {
    const json* v = field(obj, key, path, required);
    if (v && !v->is_object()) {
      fail(path + "/" + key, "expected an object");
      return nullptr;
    }
    return v;
  }
};

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + byte, '\n'));
}

std::string agent_label(std::size_t index, const AgentSpec& a) {
  return "agent " + std::to_string(a.id) + " (agents[" + std::to_string(index) + "])";
}

void check_dimension(Reader& r, const std::string& where, const std::string& label,
                     const char* what, const std::vector<double>& v, int d) {
  if (static_cast<int>(v.size()) != d)
    r.fail(where, label + ": " + what + " has " + std::to_string(v.size()) +
                      " components but the scenario dimension is " + std::to_string(d));
}

double norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

void read_agents(Reader& r, const json& root, Scenario& s) {
  const json* agents = r.field(root, "agents", "", true);
  if (!agents) return;
  if (!agents->is_array()) {
    r.fail("/agents", "expected an array");
    return;
  }
  for (std::size_t i = 0; i < agents->size(); ++i) {
    const json& a = (*agents)[i];
    const std::string path = "/agents/" + std::to_string(i);
    if (!a.is_object()) {
      r.fail(path, "expected an object");
      continue;
    }
    r.reject_unknown(a, path, {"id", "leader", "position", "target", "estimate"});
    AgentSpec spec;
    spec.id = static_cast<int>(r.integer(a, "id", path, true).value_or(0));
    spec.leader = r.boolean(a, "leader", path, false).value_or(false);
    spec.position = r.vector(a, "position", path, false).value_or(std::vector<double>{});
    spec.target = r.vector(a, "target", path, false);
    spec.estimate = r.vector(a, "estimate", path, false);
    s.agents.push_back(std::move(spec));
  }
}

void validate_agents(Reader& r, Scenario& s) {
  const int n = static_cast<int>(s.agents.size());
  const int d = s.dimension;
  if (n < 2) r.fail("/agents", "at least two agents are required");

  std::set<int> ids;
  for (std::size_t i = 0; i < s.agents.size(); ++i) {
    const AgentSpec& a = s.agents[i];
    const std::string path = "/agents/" + std::to_string(i);
    if (a.id < 1 || a.id > n)
      r.fail(path + "/id", "agent ids must run from 1 to " + std::to_string(n));
    else if (!ids.insert(a.id).second)
      r.fail(path + "/id", "duplicate agent id " + std::to_string(a.id));
  }

  int leaders = 0;
  for (std::size_t i = 0; i < s.agents.size(); ++i) {
    AgentSpec& a = s.agents[i];
    const std::string path = "/agents/" + std::to_string(i);
    const std::string label = agent_label(i, a);
    if (a.leader) ++leaders;

    // A leader without an explicit position starts on its target.
    if (a.position.empty() && a.leader && a.target && s.system == SystemKind::leader_follower)
      a.position = *a.target;
    if (a.position.empty())
      r.fail(path + "/position", label + ": missing position");
    else
      check_dimension(r, path + "/position", label, "position", a.position, d);
    if (a.target) check_dimension(r, path + "/target", label, "target", *a.target, d);
    if (a.estimate) check_dimension(r, path + "/estimate", label, "estimate", *a.estimate, d);

    switch (s.system) {
      case SystemKind::leaderless:
        if (a.leader) r.fail(path + "/leader", label + ": leaderless scenarios have no leaders");
        if (s.target_mode == TargetMode::configuration && !a.target)
          r.fail(path + "/target", label + ": target position required");
        if (a.estimate) r.fail(path + "/estimate", label + ": only localization uses estimates");
        break;
      case SystemKind::leader_follower:
        if (!a.target) r.fail(path + "/target", label + ": target position required");
        if (a.leader && a.target && a.position != *a.target)
          r.fail(path + "/position", label + ": a leader must start on its target");
        if (a.estimate) r.fail(path + "/estimate", label + ": only localization uses estimates");
        break;
      case SystemKind::localization:
        if (a.target) r.fail(path + "/target", label + ": localization agents have no target");
        if (!a.leader && !a.estimate)
          r.fail(path + "/estimate", label + ": follower needs an initial estimate");
        if (a.leader && a.estimate)
          r.fail(path + "/estimate", label + ": leaders are anchors and take no estimate");
        break;
    }
  }

  if (s.system != SystemKind::leaderless) {
    if (leaders < 2)
      r.fail("/agents", "at least two leader agents are required, found " + std::to_string(leaders));
    if (leaders >= n) r.fail("/agents", "at least one follower agent is required");
  }
}

void read_edges(Reader& r, const json& root, Scenario& s) {
  const json* edges = r.field(root, "edges", "", true);
  if (!edges) return;
  if (!edges->is_array()) {
    r.fail("/edges", "expected an array of [i, j] pairs");
    return;
  }
  const int n = static_cast<int>(s.agents.size());
  std::set<std::pair<int, int>> seen;
  for (std::size_t k = 0; k < edges->size(); ++k) {
    const json& e = (*edges)[k];
    const std::string path = "/edges/" + std::to_string(k);
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
      r.fail(path, "expected a pair of agent ids");
      continue;
    }
    const int a = e[0].get<int>(), b = e[1].get<int>();
    if (a < 1 || a > n || b < 1 || b > n) {
      r.fail(path, "edge references an unknown agent id");
      continue;
    }
    if (a == b) {
      r.fail(path, "self-loop on agent " + std::to_string(a));
      continue;
    }
    if (!seen.emplace(std::min(a, b), std::max(a, b)).second) {
      r.fail(path, "duplicate edge");
      continue;
    }
    s.edges.emplace_back(a, b);
  }
  if (s.edges.empty()) r.fail("/edges", "at least one edge is required");
}

void read_target(Reader& r, const json& root, Scenario& s) {
  const json* t = r.object(root, "target", "", false);
  if (!t) return;
  r.reject_unknown(*t, "/target", {"mode", "bearings"});
  const auto mode = r.string(*t, "mode", "/target", true);
  if (mode == "configuration") {
    s.target_mode = TargetMode::configuration;
  } else if (mode == "bearings") {
    s.target_mode = TargetMode::bearings;
  } else if (mode) {
    r.fail("/target/mode", "expected 'configuration' or 'bearings'");
  }
  if (const json* list = r.field(*t, "bearings", "/target", false)) {
    if (!list->is_array()) {
      r.fail("/target/bearings", "expected an array");
      return;
    }
    for (std::size_t k = 0; k < list->size(); ++k) {
      const json& b = (*list)[k];
      const std::string path = "/target/bearings/" + std::to_string(k);
      if (!b.is_object()) {
        r.fail(path, "expected an object");
        continue;
      }
      r.reject_unknown(b, path, {"from", "to", "g"});
      BearingSpec spec;
      spec.from = static_cast<int>(r.integer(b, "from", path, true).value_or(0));
      spec.to = static_cast<int>(r.integer(b, "to", path, true).value_or(0));
      spec.g = r.vector(b, "g", path, true).value_or(std::vector<double>{});
      s.bearings.push_back(std::move(spec));
    }
  }
}

void validate_bearings(Reader& r, const Scenario& s) {
  if (s.target_mode != TargetMode::bearings) {
    if (!s.bearings.empty())
      r.fail("/target/bearings", "explicit bearings given but target mode is 'configuration'");
    return;
  }
  if (s.system != SystemKind::leaderless)
    r.fail("/target/mode", "explicit bearings are only supported for leaderless scenarios");

  std::map<std::pair<int, int>, std::pair<std::size_t, std::vector<double>>> by_edge;
  for (std::size_t k = 0; k < s.bearings.size(); ++k) {
    const BearingSpec& b = s.bearings[k];
    const std::string path = "/target/bearings/" + std::to_string(k);
    if (static_cast<int>(b.g.size()) != s.dimension) {
      r.fail(path + "/g", "bearing has " + std::to_string(b.g.size()) +
                              " components but the scenario dimension is " +
                              std::to_string(s.dimension));
      continue;
    }
    const double len = norm(b.g);
    if (std::abs(len - 1.0) > kUnitTol) {
      r.fail(path + "/g", "infeasible bearing " + std::to_string(b.from) + "->" +
                              std::to_string(b.to) + ": norm " + std::to_string(len) +
                              " is not 1");
      continue;
    }
    // Store in the head -> tail orientation.
    std::vector<double> g = b.g;
    if (b.from > b.to)
      for (double& x : g) x = -x;
    const auto key = std::make_pair(std::min(b.from, b.to), std::max(b.from, b.to));
    if (std::find(s.edges.begin(), s.edges.end(), std::make_pair(b.from, b.to)) == s.edges.end() &&
        std::find(s.edges.begin(), s.edges.end(), std::make_pair(b.to, b.from)) == s.edges.end()) {
      r.fail(path, "bearing " + std::to_string(b.from) + "->" + std::to_string(b.to) +
                       " does not belong to an edge");
      continue;
    }
    const auto [it, inserted] = by_edge.emplace(key, std::make_pair(k, g));
    if (!inserted) {
      double diff = 0.0;
      for (std::size_t c = 0; c < g.size(); ++c)
        diff = std::max(diff, std::abs(g[c] - it->second.second[c]));
      if (diff > kUnitTol)
        r.fail(path, "inconsistent bearings for edge {" + std::to_string(key.first) + "," +
                         std::to_string(key.second) + "}: g_ji must equal -g_ij");
    }
  }
  for (const auto& [a, b] : s.edges)
    if (!by_edge.count({std::min(a, b), std::max(a, b)}))
      r.fail("/target/bearings", "missing desired bearing for edge {" + std::to_string(a) + "," +
                                     std::to_string(b) + "}");
}

void read_disturbance(Reader& r, const json& root, Scenario& s) {
  const json* dist = r.object(root, "disturbance", "", false);
  if (!dist) return;
  const std::string path = "/disturbance";
  r.reject_unknown(*dist, path, {"kind", "amplitude", "amplitudes", "fraction_of_threshold", "omega"});
  DisturbanceSpec& spec = s.disturbance;
  if (const auto kind = r.string(*dist, "kind", path, true)) {
    try {
      spec.kind = disturbance_kind_from_string(*kind);
    } catch (const std::invalid_argument&) {
      r.fail(path + "/kind", "expected 'none', 'uniform_ball' or 'sinusoidal'");
    }
  }
  spec.amplitude = r.number(*dist, "amplitude", path, false);
  spec.amplitudes = r.vector(*dist, "amplitudes", path, false);
  spec.fraction_of_threshold = r.number(*dist, "fraction_of_threshold", path, false);
  spec.omega = r.number(*dist, "omega", path, false).value_or(1.0);

  const int selectors = spec.amplitude.has_value() + spec.amplitudes.has_value() +
                        spec.fraction_of_threshold.has_value();
  if (spec.kind == DisturbanceKind::none) {
    if (selectors) r.fail(path, "kind 'none' takes no amplitude");
    return;
  }
  if (selectors != 1)
    r.fail(path, "give exactly one of amplitude, amplitudes, fraction_of_threshold");
  if (spec.amplitude && *spec.amplitude < 0.0) r.fail(path + "/amplitude", "must be >= 0");
  if (spec.amplitudes) {
    if (spec.amplitudes->size() != s.agents.size())
      r.fail(path + "/amplitudes", "expected one amplitude per agent (" +
                                       std::to_string(s.agents.size()) + ")");
    for (double v : *spec.amplitudes)
      if (v < 0.0) r.fail(path + "/amplitudes", "amplitudes must be >= 0");
  }
  if (spec.fraction_of_threshold) {
    if (!(*spec.fraction_of_threshold > 0.0 && *spec.fraction_of_threshold <= 1.0))
      r.fail(path + "/fraction_of_threshold", "must lie in (0, 1]");
    if (s.system == SystemKind::localization)
      r.fail(path + "/fraction_of_threshold",
             "localization admits any bounded disturbance; give an amplitude instead");
  }
}

void read_integrator(Reader& r, const json& root, Scenario& s) {
  const json* in = r.object(root, "integrator", "", false);
  if (!in) return;
  const std::string path = "/integrator";
  r.reject_unknown(*in, path, {"dt", "duration", "record_stride", "method"});
  IntegratorSpec& spec = s.integrator;
  spec.dt = r.number(*in, "dt", path, false).value_or(spec.dt);
  spec.duration = r.number(*in, "duration", path, false).value_or(spec.duration);
  spec.record_stride =
      static_cast<int>(r.integer(*in, "record_stride", path, false).value_or(spec.record_stride));
  if (const auto m = r.string(*in, "method", path, false)) {
    if (*m == "rk4")
      spec.method = Method::rk4;
    else if (*m == "euler")
      spec.method = Method::euler;
    else
      r.fail(path + "/method", "expected 'rk4' or 'euler'");
  }
  if (!(spec.dt > 0.0)) r.fail(path + "/dt", "must be positive");
  if (!(spec.duration >= spec.dt)) r.fail(path + "/duration", "must be at least dt");
  if (spec.record_stride < 1) r.fail(path + "/record_stride", "must be >= 1");
}

void read_bounds(Reader& r, const json& root, Scenario& s) {
  const json* b = r.object(root, "bounds", "", false);
  if (!b) return;
  const std::string path = "/bounds";
  r.reject_unknown(*b, path, {"mode", "epsilon", "gamma_inv_sq", "delta"});
  if (const auto mode = r.string(*b, "mode", path, false)) {
    if (*mode == "default")
      s.bounds.mode = ParamMode::default_;
    else if (*mode == "user")
      s.bounds.mode = ParamMode::user;
    else
      r.fail(path + "/mode", "expected 'default' or 'user'");
  }
  s.bounds.epsilon = r.number(*b, "epsilon", path, false);
  s.bounds.gamma_inv_sq = r.number(*b, "gamma_inv_sq", path, false);
  s.bounds.delta = r.number(*b, "delta", path, false);
  for (const auto& [key, value] : {std::pair{"epsilon", s.bounds.epsilon},
                                   std::pair{"gamma_inv_sq", s.bounds.gamma_inv_sq},
                                   std::pair{"delta", s.bounds.delta}})
    if (value && !(*value > 0.0)) r.fail(path + "/" + key, "must be positive");
  if (s.bounds.mode == ParamMode::user) {
    if (s.system == SystemKind::leader_follower && !s.bounds.epsilon)
      r.fail(path + "/epsilon", "user mode requires epsilon for leader_follower");
    if (s.system == SystemKind::localization && !(s.bounds.gamma_inv_sq && s.bounds.delta))
      r.fail(path, "user mode requires gamma_inv_sq and delta for localization");
  }
}

}  // namespace

std::string_view to_string(TargetMode mode) {
  return mode == TargetMode::bearings ? "bearings" : "configuration";
}

std::string_view to_string(Method method) { return method == Method::euler ? "euler" : "rk4"; }

Scenario parse_scenario(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ValidationError(std::vector<ValidationIssue>{{"line " + std::to_string(line_of(text, e.byte)), e.what()}});
  }
  if (!root.is_object()) throw ValidationError(std::vector<ValidationIssue>{{"/", "scenario must be a JSON object"}});

  Reader r;
  Scenario s;
  r.reject_unknown(root, "", {"schema_version", "name", "system", "dimension", "agents", "edges",
                              "target", "disturbance", "integrator", "bounds", "settle_fraction",
                              "seed"});
  s.schema_version =
      static_cast<int>(r.integer(root, "schema_version", "", true).value_or(kScenarioSchemaVersion));
  if (s.schema_version != kScenarioSchemaVersion)
    r.fail("/schema_version", "unsupported schema version " + std::to_string(s.schema_version));
  s.name = r.string(root, "name", "", true).value_or("");
  if (const auto sys = r.string(root, "system", "", true)) {
    try {
      s.system = system_kind_from_string(*sys);
    } catch (const std::invalid_argument&) {
      r.fail("/system", "expected 'leaderless', 'leader_follower' or 'localization'");
    }
  }
  s.dimension = static_cast<int>(r.integer(root, "dimension", "", true).value_or(2));
  if (s.dimension < 2) r.fail("/dimension", "must be at least 2");
  s.settle_fraction = r.number(root, "settle_fraction", "", false).value_or(0.2);
  if (!(s.settle_fraction > 0.0 && s.settle_fraction <= 1.0))
    r.fail("/settle_fraction", "must lie in (0, 1]");
  if (const auto seed = r.integer(root, "seed", "", false)) {
    if (*seed < 0)
      r.fail("/seed", "must be non-negative");
    else
      s.seed = static_cast<std::uint64_t>(*seed);
  }

  read_target(r, root, s);
  read_agents(r, root, s);
  validate_agents(r, s);
  read_edges(r, root, s);
  validate_bearings(r, s);
  read_disturbance(r, root, s);
  read_integrator(r, root, s);
  read_bounds(r, root, s);

  if (!r.issues.empty()) throw ValidationError(std::move(r.issues));
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError(std::vector<ValidationIssue>{{path.string(), "cannot open scenario file"}});
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string serialize_scenario(const Scenario& s) {
  ordered_json root;
  root["schema_version"] = s.schema_version;
  root["name"] = s.name;
  root["system"] = std::string(to_string(s.system));
  root["dimension"] = s.dimension;

  ordered_json target;
  target["mode"] = std::string(to_string(s.target_mode));
  if (s.target_mode == TargetMode::bearings) {
    ordered_json list = ordered_json::array();
    for (const auto& b : s.bearings) list.push_back({{"from", b.from}, {"to", b.to}, {"g", b.g}});
    target["bearings"] = list;
  }
  root["target"] = target;

  ordered_json agents = ordered_json::array();
  for (const auto& a : s.agents) {
    ordered_json ja;
    ja["id"] = a.id;
    ja["leader"] = a.leader;
    ja["position"] = a.position;
    if (a.target) ja["target"] = *a.target;
    if (a.estimate) ja["estimate"] = *a.estimate;
    agents.push_back(ja);
  }
  root["agents"] = agents;

  ordered_json edges = ordered_json::array();
  for (const auto& [a, b] : s.edges) edges.push_back({a, b});
  root["edges"] = edges;

  ordered_json dist;
  dist["kind"] = std::string(to_string(s.disturbance.kind));
  if (s.disturbance.amplitude) dist["amplitude"] = *s.disturbance.amplitude;
  if (s.disturbance.amplitudes) dist["amplitudes"] = *s.disturbance.amplitudes;
  if (s.disturbance.fraction_of_threshold)
    dist["fraction_of_threshold"] = *s.disturbance.fraction_of_threshold;
  dist["omega"] = s.disturbance.omega;
  root["disturbance"] = dist;

  root["integrator"] = {{"dt", s.integrator.dt},
                        {"duration", s.integrator.duration},
                        {"record_stride", s.integrator.record_stride},
                        {"method", std::string(to_string(s.integrator.method))}};

  ordered_json bounds;
  bounds["mode"] = to_string(s.bounds.mode);
  if (s.bounds.epsilon) bounds["epsilon"] = *s.bounds.epsilon;
  if (s.bounds.gamma_inv_sq) bounds["gamma_inv_sq"] = *s.bounds.gamma_inv_sq;
  if (s.bounds.delta) bounds["delta"] = *s.bounds.delta;
  root["bounds"] = bounds;

  root["settle_fraction"] = s.settle_fraction;
  root["seed"] = s.seed;
  return root.dump(2) + "\n";
}

}  // namespace bearing
