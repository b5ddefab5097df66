#include "abc_arma/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "abc_arma/error.hpp"

namespace abc_arma::io {

using nlohmann::json;

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(const std::string& field, std::size_t line_no) {
    double value = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    if (!field.empty() && *begin == '+') ++begin;
    const auto res = std::from_chars(begin, end, value);
    if (res.ec != std::errc() || res.ptr != end) {
        throw invalid_input("line " + std::to_string(line_no) + ": not a number: '" + field + "'");
    }
    if (!std::isfinite(value)) throw invalid_input("line " + std::to_string(line_no) + ": non-finite value");
    return value;
}

json nullable(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json draws_to_json(const AbcResult& result) {
    json arr = json::array();
    for (const auto& d : result.draws) {
        arr.push_back({{"value", d.value}, {"distance", d.distance}, {"proposal_index", d.proposal_index}});
    }
    return arr;
}

json stage_summary(const AbcResult& result, bool skipped, std::size_t top_k) {
    json j;
    j["skipped"] = skipped;
    j["n_proposals"] = result.n_proposals;
    j["accepted"] = result.accepted;
    j["kept"] = result.draws.size();
    j["top_k"] = top_k;
    j["min_distance"] = skipped ? json(nullptr) : nullable(result.min_distance);
    j["posterior_median"] = posterior_median(result.draws);
    j["posterior_sd"] = posterior_sd(result.draws);
    return j;
}

}  // namespace

Series parse_series_csv(std::istream& in) {
    std::vector<double> values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string field = trim(line);
        if (field.empty()) continue;
        values.push_back(parse_double(field, line_no));
    }
    if (values.empty()) throw insufficient_data("series file contains no values");
    return Series(std::move(values));
}

Series read_series_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw invalid_input("cannot open series file: " + path.string());
    return parse_series_csv(in);
}

void write_series_csv(std::ostream& out, const Series& series) {
    for (double v : series.values) out << format_double(v) << '\n';
}

void write_series_csv(const std::filesystem::path& path, const Series& series) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw invalid_input("cannot write series file: " + path.string());
    write_series_csv(out, series);
}

void write_posterior_csv(std::ostream& out, const AbcResult& result, const std::vector<std::string>& columns) {
    for (const auto& c : columns) out << c << ',';
    out << "distance,proposal_index\n";
    for (const auto& d : result.draws) {
        if (d.value.size() != columns.size()) throw invalid_input("posterior column count mismatch");
        for (double v : d.value) out << format_double(v) << ',';
        out << format_double(d.distance) << ',' << d.proposal_index << '\n';
    }
}

json to_json(const AbcConfig& config) {
    return {{"n_proposals", config.n_proposals},
            {"epsilon", config.epsilon},
            {"top_k", config.top_k},
            {"distance", config.distance == Distance::max ? "max" : "euclidean"},
            {"master_seed", config.master_seed},
            {"sim_length", config.sim_length},
            {"sigma_for_phi_stage", config.sigma_for_phi_stage},
            {"burn_in", config.burn_in}};
}

AbcConfig abc_config_from_json(const json& j, AbcConfig c) {
    if (!j.is_object()) throw invalid_input("stage config must be a JSON object");
    try {
        if (j.contains("n_proposals")) c.n_proposals = j.at("n_proposals").get<std::size_t>();
        if (j.contains("epsilon")) c.epsilon = j.at("epsilon").get<double>();
        if (j.contains("top_k")) c.top_k = j.at("top_k").get<std::size_t>();
        if (j.contains("sim_length")) c.sim_length = j.at("sim_length").get<std::size_t>();
        if (j.contains("sigma_for_phi_stage")) c.sigma_for_phi_stage = j.at("sigma_for_phi_stage").get<double>();
        if (j.contains("burn_in")) c.burn_in = j.at("burn_in").get<std::size_t>();
        if (j.contains("master_seed")) c.master_seed = j.at("master_seed").get<std::uint64_t>();
        if (j.contains("distance")) {
            const auto name = j.at("distance").get<std::string>();
            if (name == "euclidean") {
                c.distance = Distance::euclidean;
            } else if (name == "max") {
                c.distance = Distance::max;
            } else {
                throw invalid_input("unknown distance '" + name + "' (expected euclidean or max)");
            }
        }
    } catch (const json::exception& e) {
        throw invalid_input(std::string("bad stage config: ") + e.what());
    }
    return c;
}

json to_json(const EstimationReport& r) {
    json j;
    j["p"] = r.p;
    j["q"] = r.q;
    j["mean_hat"] = r.mean_hat;
    j["phi_hat"] = r.phi_hat;
    j["theta_hat"] = r.theta_hat;
    j["sigma2_hat"] = r.sigma2_hat;
    j["observed_variance"] = r.observed_variance;
    j["prior"] = {{"alpha", r.prior.alpha}, {"beta", r.prior.beta}};
    j["config"] = {{"phi", to_json(r.configs.phi)},
                   {"theta", to_json(r.configs.theta)},
                   {"sigma", to_json(r.configs.sigma)}};
    j["stages"] = {{"phi", stage_summary(r.posterior_phi, r.p == 0, r.configs.phi.top_k)},
                   {"theta", stage_summary(r.posterior_theta, r.q == 0, r.configs.theta.top_k)},
                   {"sigma", stage_summary(r.posterior_sigma, false, r.configs.sigma.top_k)}};
    j["posterior"] = {{"phi", draws_to_json(r.posterior_phi)},
                      {"theta", draws_to_json(r.posterior_theta)},
                      {"sigma", draws_to_json(r.posterior_sigma)}};
    return j;
}

}  // namespace abc_arma::io
