#pragma once

#include <string>

#include "json.hpp"
#include "preauction/config.hpp"
#include "preauction/perturbations.hpp"
#include "preauction/simulator.hpp"
#include "preauction/statics.hpp"

namespace preauction::cli {

inline constexpr const char* kToolName = "preauction";
inline constexpr const char* kToolVersion = "0.1.0";

using Json = nlohmann::ordered_json;

Json report_header(const RunConfig& cfg);
Json to_json(const FullCommitment& fc);
Json to_json(const UnrestrictedRange& ur);
Json to_json(const IntervalSet& s);
Json to_json(const ThresholdEquilibrium& eq);
Json to_json(const EquilibriumResult& res);
Json to_json(const RegimeReport& rep);
Json to_json(const StaticsRecord& rec);
Json to_json(const SweepResult& sweep);
Json to_json(const sim::Estimate& e);
Json to_json(const sim::SimResult& res);
Json to_json(const sim::SlackReport& rep);
Json to_json(const sim::DeviationReport& rep, bool include_grid = false);
Json to_json(const LyingSustainableSets& s);

// Rejects NaN or infinity anywhere in the tree (throws std::runtime_error).
void require_finite(const Json& j, const std::string& where);

void write_text(const std::string& path, const std::string& text);

// records.csv column order matches the struct fields
std::string sweep_csv(const SweepResult& sweep);

// two-column whitespace table for plotting tools
std::string plot_table(const std::vector<std::pair<double, double>>& rows,
                       const std::string& xlabel, const std::string& ylabel);

}  // namespace preauction::cli
