#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "abc_arma/abc.hpp"
#include "abc_arma/model.hpp"

namespace abc_arma::io {

/// Shortest-free fixed format: 17 significant digits, "%.17g"-equivalent.
std::string format_double(double value);

/// Headerless single-column CSV, one value per line. Blank lines are
/// skipped; any other unparsable or non-finite line is an invalid_input.
Series read_series_csv(const std::filesystem::path& path);
Series parse_series_csv(std::istream& in);
void write_series_csv(std::ostream& out, const Series& series);
void write_series_csv(const std::filesystem::path& path, const Series& series);

/// Headered CSV: one column per value component, then distance, proposal_index.
void write_posterior_csv(std::ostream& out, const AbcResult& result, const std::vector<std::string>& columns);

nlohmann::json to_json(const AbcConfig& config);
AbcConfig abc_config_from_json(const nlohmann::json& j, AbcConfig defaults = {});
nlohmann::json to_json(const EstimationReport& report);

}  // namespace abc_arma::io
