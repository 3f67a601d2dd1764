#include "preauction/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace preauction::cli {

Json report_header(const RunConfig& cfg) {
  Json j;
  j["schema_version"] = 1;
  j["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  Json dist;
  if (cfg.dist.family == Family::Uniform) {
    dist["family"] = "uniform";
    dist["lo"] = cfg.dist.lo;
    dist["hi"] = cfg.dist.hi;
  } else {
    dist["family"] = "piecewise_linear_cdf";
    Json knots = Json::array();
    for (const auto& [v, c] : cfg.dist.knots) knots.push_back({v, c});
    dist["knots"] = knots;
  }
  j["config"] = {{"distribution", dist},
                 {"outside_option", cfg.outside_option},
                 {"policy", policy_name(cfg.policy)},
                 {"regime", regime_name(cfg.regime)},
                 {"numeric",
                  {{"quad_points", cfg.numeric.quad_points},
                   {"root_tol", cfg.numeric.root_tol},
                   {"grid_points", cfg.numeric.grid_points}}}};
  if (cfg.tau) j["config"]["tau"] = *cfg.tau;
  return j;
}

Json to_json(const FullCommitment& fc) {
  return {{"reserve", fc.reserve}, {"payoff", fc.payoff}};
}

Json to_json(const UnrestrictedRange& ur) {
  Json j;
  j["found"] = ur.found;
  if (ur.found) {
    j["tau_lo"] = ur.tau_lo;
    j["tau_hi"] = ur.tau_hi;
    j["binding_lo"] = ur.binding_lo;
    j["binding_hi"] = ur.binding_hi;
    j["residual_lo"] = ur.residual_lo;
    j["residual_hi"] = ur.residual_hi;
    j["on_path_reserve"] = ur.on_path_reserve;
  }
  if (!ur.note.empty()) j["note"] = ur.note;
  return j;
}

Json to_json(const IntervalSet& s) {
  Json j = Json::array();
  for (const auto& [a, b] : s.parts) j.push_back({a, b});
  return j;
}

Json to_json(const ThresholdEquilibrium& eq) {
  return {{"regime", regime_name(eq.regime)},
          {"tau", eq.tau},
          {"outside_option", eq.c},
          {"on_path_reserve", eq.on_path_reserve},
          {"seller_payoff", eq.seller_payoff},
          {"bidder_utility", eq.bidder_utility},
          {"slack_hh", eq.slack_hh},
          {"slack_hl", eq.slack_hl},
          {"slack_ll", eq.slack_ll},
          {"ic_ok", eq.ic_ok}};
}

Json to_json(const EquilibriumResult& res) {
  Json j;
  j["found"] = res.found;
  if (res.found) j["equilibrium"] = to_json(res.eq);
  if (!res.note.empty()) j["note"] = res.note;
  return j;
}

Json to_json(const RegimeReport& rep) {
  Json j;
  j["outside_option"] = rep.c;
  j["full_commitment"] = to_json(rep.fc);
  j["unrestricted"] = to_json(rep.unrestricted);
  j["restricted"] = {{"any_high", to_json(rep.restricted.any_high)},
                     {"both_high", to_json(rep.restricted.both_high)}};
  j["seller_optimal"] = to_json(rep.seller_opt);
  j["bidder_optimal"] = to_json(rep.bidder_opt);
  if (rep.seller_opt.found)
    j["probabilities"] = {{"p_auction", rep.p_auction},
                          {"p_no_trade_given_auction", rep.p_no_trade_given_auction}};
  if (!rep.notes.empty()) j["notes"] = rep.notes;
  return j;
}

Json to_json(const StaticsRecord& rec) {
  Json j;
  j["c"] = rec.c;
  j["valid"] = rec.valid;
  if (rec.valid) {
    j["tau"] = rec.tau;
    j["seller_payoff"] = rec.seller_payoff;
    j["p_auction"] = rec.p_auction;
    j["p_no_trade_given_auction"] = rec.p_no_trade_given_auction;
  }
  if (!rec.note.empty()) j["note"] = rec.note;
  return j;
}

Json to_json(const SweepResult& sweep) {
  Json j;
  Json recs = Json::array();
  for (const auto& rec : sweep.records) recs.push_back(to_json(rec));
  j["records"] = recs;
  j["violations"] = sweep.violations;
  return j;
}

Json to_json(const sim::Estimate& e) {
  return {{"mean", e.mean}, {"se", e.se}, {"n", e.n}};
}

Json to_json(const sim::SimResult& res) {
  Json j;
  j["draws"] = res.draws;
  j["runs"] = res.runs;
  j["profile_counts"] = {{"hh", res.profile_counts[0]},
                         {"hl", res.profile_counts[1]},
                         {"ll", res.profile_counts[2]}};
  j["p_auction"] = res.p_auction;
  j["revenue_given_run"] = to_json(res.revenue_given_run);
  j["seller_payoff"] = to_json(res.seller_payoff);
  j["bidder_utility"] = to_json(res.bidder_utility);
  const char* names[3] = {"hh", "hl", "ll"};
  Json probes;
  for (int i = 0; i < 3; ++i)
    if (res.probe_revenue[i].n > 0) probes[names[i]] = to_json(res.probe_revenue[i]);
  if (!probes.is_null()) j["probe_revenue"] = probes;
  j["workers_used"] = res.workers_used;
  return j;
}

Json to_json(const sim::SlackReport& rep) {
  const char* names[3] = {"hh", "hl", "ll"};
  Json j;
  for (int i = 0; i < 3; ++i) {
    const sim::ProfileSlack& p = rep.profile[i];
    j[names[i]] = {{"revenue", p.revenue},
                   {"slack", p.slack},
                   {"runs", p.runs},
                   {"consistent", p.consistent}};
  }
  j["all_consistent"] = rep.all_consistent;
  return j;
}

Json to_json(const sim::DeviationReport& rep, bool include_grid) {
  Json j;
  j["max_regret"] = rep.max_regret;
  j["worst"] = {{"v", rep.worst.v},
                {"u_keep", rep.worst.u_keep},
                {"u_switch", rep.worst.u_switch},
                {"regret", rep.worst.regret}};
  j["seller_policy_respected"] = rep.seller_policy_respected;
  if (include_grid) {
    Json g = Json::array();
    for (const auto& p : rep.grid) g.push_back({p.v, p.regret});
    j["grid"] = g;
  }
  return j;
}

Json to_json(const LyingSustainableSets& s) {
  Json j;
  j["window"] = {{"lo", s.window_lo}, {"hi", s.window_hi}, {"empty", s.window_empty}};
  j["restricted_any_high"] = to_json(s.restricted_any_high);
  j["restricted_both_high"] = to_json(s.restricted_both_high);
  j["unrestricted"] = to_json(s.unrestricted);
  return j;
}

void require_finite(const Json& j, const std::string& where) {
  if (j.is_number_float()) {
    const double x = j.get<double>();
    if (!std::isfinite(x))
      throw std::runtime_error("non-finite value in report at " + where);
    return;
  }
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) require_finite(v, where + "/" + k);
  } else if (j.is_array()) {
    int i = 0;
    for (const auto& v : j) require_finite(v, where + "/" + std::to_string(i++));
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("short write to " + path);
}

std::string sweep_csv(const SweepResult& sweep) {
  std::string out =
      "c,valid,tau,seller_payoff,p_auction,p_no_trade_given_auction,note\n";
  char buf[256];
  for (const auto& r : sweep.records) {
    if (r.valid) {
      std::snprintf(buf, sizeof(buf), "%.12g,1,%.12g,%.12g,%.12g,%.12g,\n", r.c, r.tau,
                    r.seller_payoff, r.p_auction, r.p_no_trade_given_auction);
      out += buf;
    } else {
      std::snprintf(buf, sizeof(buf), "%.12g,0,,,,,\"%s\"\n", r.c, r.note.c_str());
      out += buf;
    }
  }
  return out;
}

std::string plot_table(const std::vector<std::pair<double, double>>& rows,
                       const std::string& xlabel, const std::string& ylabel) {
  std::string out = "# " + xlabel + " " + ylabel + "\n";
  char buf[80];
  for (const auto& [x, y] : rows) {
    std::snprintf(buf, sizeof(buf), "%.12g %.12g\n", x, y);
    out += buf;
  }
  return out;
}

}  // namespace preauction::cli
