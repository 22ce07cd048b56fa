#include "bearing/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace bearing {

namespace {

std::string axis_name(int c, int d) {
  if (d <= 3) return std::string(1, "xyz"[c]);
  return "c" + std::to_string(c + 1);
}

const char* error_column(SystemKind k) {
  switch (k) {
    case SystemKind::leaderless: return "err_ea";
    case SystemKind::leader_follower: return "err_eb";
    case SystemKind::localization: return "err_ec";
  }
  return "err";
}

const char* bound_column(SystemKind k) {
  switch (k) {
    case SystemKind::leaderless: return "bound_Sa";
    case SystemKind::leader_follower: return "bound_Sb";
    case SystemKind::localization: return "bound_Sc";
  }
  return "bound";
}

std::string status_name(RunStatus s) {
  switch (s) {
    case RunStatus::completed: return "completed";
    case RunStatus::precheck_failed: return "pre-check failed";
    case RunStatus::aborted: return "aborted";
  }
  return "unknown";
}

void line(std::ostream& os, const std::string& key, const std::string& value) {
  os << "  " << key;
  for (std::size_t i = key.size(); i < 28; ++i) os << ' ';
  os << value << '\n';
}

}  // namespace

OutputFormat output_format_from_string(std::string_view name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "report") return OutputFormat::report;
  if (name == "both") return OutputFormat::both;
  throw std::invalid_argument("unknown output format '" + std::string(name) + "'");
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_csv(const RunResult& r, std::ostream& os) {
  if (!r.trace || r.trace->aborted) return;
  const SimTrace& tr = *r.trace;
  const int d = r.dimension;
  const int n = static_cast<int>(r.canonical_ids.size());
  const bool loc = r.kind == SystemKind::localization;

  // (id, offset of that agent's block in the recorded state), in id order.
  std::vector<std::pair<int, int>> cols;
  for (int c = 0; c < n; ++c) {
    if (loc && c < r.leader_count) continue;
    cols.emplace_back(r.canonical_ids[c], (loc ? c - r.leader_count : c) * d);
  }
  std::sort(cols.begin(), cols.end());

  os << 't';
  for (const auto& [id, off] : cols)
    for (int k = 0; k < d; ++k) os << ',' << (loc ? "phat" : "p") << id << axis_name(k, d);
  os << ',' << error_column(r.kind) << ',' << bound_column(r.kind);
  if (r.kind == SystemKind::leaderless) os << ",lmin_RRt,lmax_RRt";
  os << '\n';

  const std::string bound = r.report ? format_number(r.report->bound_value) : "nan";
  for (std::size_t s = 0; s < tr.size(); ++s) {
    os << format_number(tr.times[s]);
    for (const auto& [id, off] : cols)
      for (int k = 0; k < d; ++k) os << ',' << format_number(tr.states[s](off + k));
    os << ',' << format_number(tr.error_norms[s]) << ',' << bound;
    if (r.kind == SystemKind::leaderless)
      os << ',' << format_number(tr.spectral[s].lambda_min_plus) << ','
         << format_number(tr.spectral[s].lambda_max);
    os << '\n';
  }
}

void write_bound_report(const BoundReport& b, std::ostream& os) {
  os << "bound\n";
  line(os, "system", std::string(to_string(b.kind)));
  if (b.lambda_min_bff) line(os, "lambda_min(B_ff)", format_number(*b.lambda_min_bff));
  if (b.norm_h_bar) line(os, "|H_bar|", format_number(*b.norm_h_bar));
  if (b.norm_p_star) line(os, "|p*|", format_number(*b.norm_p_star));
  if (b.lambda_min_plus_t) line(os, "lambda_min+(R_b R_b^T)", format_number(*b.lambda_min_plus_t));
  if (b.lambda_max_t) line(os, "lambda_max(R_b R_b^T)", format_number(*b.lambda_max_t));
  if (!b.spectral_source.empty()) line(os, "spectral source", b.spectral_source);
  line(os, "disturbance bound F", format_number(b.disturbance_bound));
  line(os, "parameters", to_string(b.param_mode));
  if (b.epsilon) line(os, "epsilon", format_number(*b.epsilon));
  if (b.gamma_inv_sq) line(os, "gamma^-2", format_number(*b.gamma_inv_sq));
  if (b.delta) line(os, "delta", format_number(*b.delta));
  if (std::isfinite(b.threshold_F))
    line(os, "admissibility", std::string("F ") + (b.threshold_strict ? "< " : "<= ") +
                                  format_number(b.threshold_F) + ": " +
                                  (b.admissible ? "satisfied" : "violated"));
  else
    line(os, "admissibility", b.admissible ? "satisfied (no limit on F)" : "violated");
  line(os, b.squared ? "bound (squared radius)" : "bound (radius)", format_number(b.bound_value));
  if (b.a_posteriori) line(os, "note", "a-posteriori bound from spectra along the trajectory");
  if (b.verdict) {
    const Verdict& v = *b.verdict;
    line(os, b.squared ? "steady-state error^2" : "steady-state error",
         format_number(b.squared ? v.steady_state_error * v.steady_state_error
                                 : v.steady_state_error));
    line(os, "verdict", v.contained ? "contained" : "violated");
    line(os, "settling sample",
         v.settling_index ? std::to_string(*v.settling_index) : std::string("never"));
  }
}

void write_report(const RunResult& r, std::ostream& os) {
  os << "scenario " << r.scenario_name << '\n';
  line(os, "system", std::string(to_string(r.kind)));
  line(os, "dimension", std::to_string(r.dimension));
  line(os, "seed", std::to_string(r.seed));
  line(os, "status", status_name(r.status));
  if (!r.message.empty()) line(os, "message", r.message);
  os << "pre-check\n";
  line(os, "kind", r.precheck.kind);
  line(os, "passed", r.precheck.passed ? "yes" : "no");
  line(os, "rank", std::to_string(r.precheck.rank) + " (expected " +
                       std::to_string(r.precheck.expected_rank) + ")");
  if (r.precheck.lambda_min_bff) line(os, "lambda_min(B_ff)", format_number(*r.precheck.lambda_min_bff));
  line(os, "detail", r.precheck.detail);
  if (r.initial_error_sq) line(os, "|e_a(0)|^2", format_number(*r.initial_error_sq));
  if (r.trace) {
    os << "trajectory\n";
    line(os, "steps", std::to_string(r.trace->steps));
    line(os, "dt", format_number(r.trace->dt));
    line(os, "samples", std::to_string(r.trace->size()));
    if (!r.trace->error_norms.empty())
      line(os, "final error", format_number(r.trace->error_norms.back()));
    for (const auto& e : r.trace->events)
      line(os, "event", "step " + std::to_string(e.step) + ", t = " + format_number(e.t) + ": " + e.what);
  }
  if (r.report) write_bound_report(*r.report, os);
}

std::vector<std::filesystem::path> emit(const RunResult& r, const std::filesystem::path& dir,
                                        OutputFormat format) {
  std::filesystem::create_directories(dir);
  const std::string stem = r.scenario_name + "_seed" + std::to_string(r.seed);
  std::vector<std::filesystem::path> written;
  auto open = [](const std::filesystem::path& p) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + p.string());
    return f;
  };
  if (format != OutputFormat::report && r.trace && !r.trace->aborted) {
    const auto p = dir / (stem + ".csv");
    auto f = open(p);
    write_csv(r, f);
    written.push_back(p);
  }
  if (format != OutputFormat::csv) {
    const auto p = dir / (stem + ".report.txt");
    auto f = open(p);
    write_report(r, f);
    written.push_back(p);
  }
  return written;
}

}  // namespace bearing
