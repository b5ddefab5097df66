#include "abc_arma/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "abc_arma/error.hpp"
#include "abc_arma/io.hpp"
#include "abc_arma/kernels.hpp"
#include "abc_arma/stats.hpp"

namespace abc_arma::cli {

using nlohmann::json;
namespace fs = std::filesystem;

void RunConfig::sync_seeds() {
    stages.phi.master_seed = seed;
    stages.theta.master_seed = seed;
    stages.sigma.master_seed = seed;
}

void RunConfig::validate() const {
    prior.validate();
    stages.phi.validate();
    stages.theta.validate();
    stages.sigma.validate();
    if (n == 0) throw invalid_input("series length n must be positive");
    if (model && !(model->sigma > 0.0)) throw invalid_input("model sigma must be positive");
}

namespace {

std::vector<double> coefficients(const json& j, const char* key) {
    if (!j.contains(key)) return {};
    return j.at(key).get<std::vector<double>>();
}

}  // namespace

RunConfig run_config_from_json(const json& j) {
    if (!j.is_object()) throw invalid_input("config must be a JSON object");
    RunConfig c;
    try {
        if (j.contains("model")) {
            const auto& m = j.at("model");
            ArmaParams params;
            params.phi = coefficients(m, "phi");
            params.theta = coefficients(m, "theta");
            params.sigma = m.value("sigma", 1.0);
            c.p = params.p();
            c.q = params.q();
            c.model = std::move(params);
        }
        if (j.contains("p")) c.p = j.at("p").get<std::size_t>();
        if (j.contains("q")) c.q = j.at("q").get<std::size_t>();
        if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("prior")) {
            c.prior.alpha = j.at("prior").value("alpha", c.prior.alpha);
            c.prior.beta = j.at("prior").value("beta", c.prior.beta);
        }
        if (j.contains("simulate")) {
            c.n = j.at("simulate").value("n", c.n);
            c.burn_in = j.at("simulate").value("burn_in", c.burn_in);
        }
        c.input = j.value("input", std::string{});
        c.out_dir = j.value("out_dir", std::string{});
        if (j.contains("stages")) {
            const auto& s = j.at("stages");
            if (s.contains("phi")) c.stages.phi = io::abc_config_from_json(s.at("phi"), c.stages.phi);
            if (s.contains("theta")) c.stages.theta = io::abc_config_from_json(s.at("theta"), c.stages.theta);
            if (s.contains("sigma")) c.stages.sigma = io::abc_config_from_json(s.at("sigma"), c.stages.sigma);
        }
    } catch (const json::exception& e) {
        throw invalid_input(std::string("bad config: ") + e.what());
    }
    if (c.model && (c.model->p() != c.p || c.model->q() != c.q)) {
        throw invalid_input("config p/q disagree with the model block");
    }
    c.prior.p = c.p;
    c.prior.q = c.q;
    c.sync_seeds();
    return c;
}

RunConfig load_run_config(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw invalid_input("cannot open config file: " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw invalid_input("config is not valid JSON: " + std::string(e.what()));
    }
    return run_config_from_json(j);
}

std::uint64_t series_seed(std::uint64_t seed) {
    return rng::derive_seed(seed, static_cast<std::uint64_t>(Stage::simulate));
}

double relative_error(double estimate, double truth) {
    const double diff = std::abs(estimate - truth);
    return truth == 0.0 ? diff : diff / std::abs(truth);
}

std::vector<BenchmarkRow> benchmark_rows(const ArmaParams& truth, const MleResult& mle, const EstimationReport& abc) {
    std::vector<BenchmarkRow> rows;
    auto add = [&](std::string name, double t, double m, double a) {
        rows.push_back({std::move(name), t, m, relative_error(m, t), a, relative_error(a, t), t == 0.0});
    };
    for (std::size_t i = 0; i < truth.p(); ++i)
        add("phi_" + std::to_string(i + 1), truth.phi[i], mle.params.phi.at(i), abc.phi_hat.at(i));
    for (std::size_t i = 0; i < truth.q(); ++i)
        add("theta_" + std::to_string(i + 1), truth.theta[i], mle.params.theta.at(i), abc.theta_hat.at(i));
    add("sigma2", truth.sigma * truth.sigma, mle.params.sigma * mle.params.sigma, abc.sigma2_hat);
    return rows;
}

void write_benchmark_csv(std::ostream& out, const std::vector<BenchmarkRow>& rows) {
    out << "parameter,true_value,mle_estimate,mle_error,abc_estimate,abc_error,error_kind\n";
    for (const auto& r : rows) {
        out << r.parameter << ',' << io::format_double(r.truth) << ',' << io::format_double(r.mle) << ','
            << io::format_double(r.mle_error) << ',' << io::format_double(r.abc) << ','
            << io::format_double(r.abc_error) << ',' << (r.absolute ? "absolute" : "relative") << '\n';
    }
}

std::vector<std::string> posterior_warnings(const EstimationReport& report) {
    std::vector<std::string> warnings;
    auto check = [&](const char* stage, const AbcResult& r, std::size_t top_k, bool skipped) {
        if (skipped || r.draws.size() >= top_k) return;
        warnings.push_back(std::string(stage) + " stage kept " + std::to_string(r.draws.size()) +
                           " draws (top_k " + std::to_string(top_k) + "; " + std::to_string(r.accepted) +
                           " of " + std::to_string(r.n_proposals) + " proposals within epsilon)");
    };
    check("phi", report.posterior_phi, report.configs.phi.top_k, report.p == 0);
    check("theta", report.posterior_theta, report.configs.theta.top_k, report.q == 0);
    check("sigma", report.posterior_sigma, report.configs.sigma.top_k, false);
    return warnings;
}

BenchmarkResult run_benchmark(const RunConfig& config, const Execution& exec) {
    if (!config.model) throw invalid_input("benchmark needs a model block with the true parameters");
    config.validate();
    BenchmarkResult result;
    result.series = simulate_arma(*config.model, config.n, series_seed(config.seed), config.burn_in);
    result.mle = fit_mle(result.series, config.p, config.q, config.seed);
    result.abc = estimate_arma(result.series, config.p, config.q, config.prior, config.stages, exec);
    result.rows = benchmark_rows(*config.model, result.mle, result.abc);
    result.warnings = posterior_warnings(result.abc);
    return result;
}

namespace {

struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> n;
    std::optional<std::size_t> n_proposals;
    std::optional<double> epsilon_phi, epsilon_theta, epsilon_sigma;
    std::optional<std::size_t> top_k_phi, top_k_theta, top_k_sigma;
    std::optional<double> alpha, beta;

    void apply(RunConfig& c) const {
        if (seed) c.seed = *seed;
        if (n) c.n = *n;
        if (n_proposals) c.stages.phi.n_proposals = c.stages.theta.n_proposals = c.stages.sigma.n_proposals = *n_proposals;
        if (epsilon_phi) c.stages.phi.epsilon = *epsilon_phi;
        if (epsilon_theta) c.stages.theta.epsilon = *epsilon_theta;
        if (epsilon_sigma) c.stages.sigma.epsilon = *epsilon_sigma;
        if (top_k_phi) c.stages.phi.top_k = *top_k_phi;
        if (top_k_theta) c.stages.theta.top_k = *top_k_theta;
        if (top_k_sigma) c.stages.sigma.top_k = *top_k_sigma;
        if (alpha) c.prior.alpha = *alpha;
        if (beta) c.prior.beta = *beta;
        c.sync_seeds();
    }
};

void add_config_options(CLI::App* cmd, std::string& config_path, Overrides& o, bool with_abc) {
    cmd->add_option("--config", config_path, "JSON run configuration")->required();
    cmd->add_option("--seed", o.seed, "Master seed");
    if (!with_abc) return;
    cmd->add_option("--n-proposals", o.n_proposals, "Proposal budget for every stage");
    cmd->add_option("--epsilon-phi", o.epsilon_phi, "Acceptance threshold, phi stage");
    cmd->add_option("--epsilon-theta", o.epsilon_theta, "Acceptance threshold, theta stage");
    cmd->add_option("--epsilon-sigma", o.epsilon_sigma, "Acceptance threshold, sigma stage");
    cmd->add_option("--top-k-phi", o.top_k_phi, "Posterior size, phi stage");
    cmd->add_option("--top-k-theta", o.top_k_theta, "Posterior size, theta stage");
    cmd->add_option("--top-k-sigma", o.top_k_sigma, "Posterior size, sigma stage");
    cmd->add_option("--alpha", o.alpha, "Gamma shape of the 1/sigma prior");
    cmd->add_option("--beta", o.beta, "Gamma rate of the 1/sigma prior");
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw invalid_input("cannot write " + path.string());
    out << text;
}

std::string to_csv(const AbcResult& result, const std::vector<std::string>& columns) {
    std::ostringstream s;
    io::write_posterior_csv(s, result, columns);
    return s.str();
}

std::vector<std::string> component_names(const char* prefix, std::size_t k) {
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= k; ++i) names.push_back(std::string(prefix) + "_" + std::to_string(i));
    return names;
}

void write_estimation_outputs(const fs::path& dir, const EstimationReport& report) {
    fs::create_directories(dir);
    write_text(dir / "report.json", io::to_json(report).dump(2) + "\n");
    write_text(dir / "posterior_phi.csv", to_csv(report.posterior_phi, component_names("phi", report.p)));
    write_text(dir / "posterior_theta.csv", to_csv(report.posterior_theta, component_names("theta", report.q)));
    AbcResult sigma = report.posterior_sigma;
    for (auto& d : sigma.draws) d.value.push_back(d.value[0] * d.value[0]);
    write_text(dir / "posterior_sigma.csv", to_csv(sigma, {"sigma", "sigma2"}));
}

void print_vector(std::ostream& out, const char* label, const std::vector<double>& v) {
    out << label << ':';
    for (double x : v) out << ' ' << io::format_double(x);
    out << '\n';
}

void print_roots(std::ostream& out, const RootReport& r) {
    print_vector(out, "ar_root_moduli", r.ar_root_moduli);
    print_vector(out, "ma_root_moduli", r.ma_root_moduli);
    out << "stationary: " << (r.is_stationary ? "true" : "false") << '\n';
    out << "invertible: " << (r.is_invertible ? "true" : "false") << '\n';
}

std::string root_failure(const RootReport& r) {
    std::ostringstream msg;
    if (!r.is_stationary) {
        msg << "model is not stationary: AR root moduli";
        for (double m : r.ar_root_moduli) msg << ' ' << m;
        msg << " (all must be < 1)";
    } else {
        msg << "model is not invertible: MA root moduli";
        for (double m : r.ma_root_moduli) msg << ' ' << m;
        msg << " (all must be > 1)";
    }
    return msg.str();
}

int cmd_simulate(const RunConfig& config, const std::string& out_path, std::ostream& out) {
    if (!config.model) throw invalid_input("simulate needs a model block");
    config.validate();
    const RootReport roots = validate_params(config.model->phi, config.model->theta);
    print_roots(out, roots);
    if (!roots.is_stationary || !roots.is_invertible) throw validation_error(root_failure(roots));
    const Series series = simulate_arma(*config.model, config.n, series_seed(config.seed), config.burn_in);
    io::write_series_csv(out_path, series);
    return ok;
}

int cmd_estimate(const RunConfig& config, const std::string& input, const std::string& out_dir,
                 const Execution& exec, std::ostream& out, std::ostream& err) {
    config.validate();
    const Series series = io::read_series_csv(input);
    const EstimationReport report = estimate_arma(series, config.p, config.q, config.prior, config.stages, exec);
    for (const auto& w : posterior_warnings(report)) err << "warning: " << w << '\n';
    write_estimation_outputs(out_dir, report);
    print_vector(out, "phi_hat", report.phi_hat);
    print_vector(out, "theta_hat", report.theta_hat);
    out << "sigma2_hat: " << io::format_double(report.sigma2_hat) << '\n';
    out << "mean_hat: " << io::format_double(report.mean_hat) << '\n';
    return ok;
}

void print_table(std::ostream& out, const std::vector<BenchmarkRow>& rows) {
    out << std::left << std::setw(10) << "parameter" << std::right << std::setw(10) << "true" << std::setw(12)
        << "MLE" << std::setw(10) << "MLE err" << std::setw(12) << "ABC" << std::setw(10) << "ABC err" << '\n';
    out << std::fixed;
    for (const auto& r : rows) {
        const char* unit = r.absolute ? " abs" : "%";
        const double scale = r.absolute ? 1.0 : 100.0;
        out << std::left << std::setw(10) << r.parameter << std::right << std::setprecision(4) << std::setw(10)
            << r.truth << std::setprecision(6) << std::setw(12) << r.mle << std::setprecision(2) << std::setw(8)
            << r.mle_error * scale << std::setw(2) << unit << std::setprecision(6) << std::setw(12) << r.abc
            << std::setprecision(2) << std::setw(8) << r.abc_error * scale << std::setw(2) << unit << '\n';
    }
    out << std::defaultfloat;
}

int cmd_benchmark(const RunConfig& config, const std::string& out_dir, const Execution& exec, std::ostream& out,
                  std::ostream& err) {
    const BenchmarkResult result = run_benchmark(config, exec);
    for (const auto& w : result.warnings) err << "warning: " << w << '\n';
    const fs::path dir(out_dir);
    write_estimation_outputs(dir, result.abc);
    io::write_series_csv(dir / "series.csv", result.series);
    std::ostringstream csv;
    write_benchmark_csv(csv, result.rows);
    write_text(dir / "benchmark.csv", csv.str());
    const json mle = {{"phi", result.mle.params.phi},
                      {"theta", result.mle.params.theta},
                      {"sigma2", result.mle.params.sigma * result.mle.params.sigma},
                      {"css", result.mle.css},
                      {"neg_log_likelihood", result.mle.neg_log_likelihood},
                      {"iterations", result.mle.iterations},
                      {"converged", result.mle.converged}};
    write_text(dir / "mle.json", mle.dump(2) + "\n");
    print_table(out, result.rows);
    return ok;
}

int cmd_acf(const std::string& input, std::size_t max_lag, const std::string& out_path, int threads,
            std::ostream& out) {
    const Series series = io::read_series_csv(input);
    const AcfVector acf = sample_acf_parallel(series.view(), max_lag, threads);
    std::ostringstream csv;
    csv << "lag,acf\n0," << io::format_double(1.0) << '\n';
    for (std::size_t k = 1; k <= max_lag; ++k) csv << k << ',' << io::format_double(acf.at(k)) << '\n';
    if (out_path.empty()) {
        out << csv.str();
    } else {
        write_text(out_path, csv.str());
    }
    return ok;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Approximate Bayesian computation for ARMA(p,q) models", "abc-arma"};
    app.require_subcommand(1);
    int threads = kernels::default_threads();
    app.add_option("--threads", threads, "Worker threads (default: ABC_ARMA_THREADS or all cores)")
        ->check(CLI::NonNegativeNumber);

    std::string config_path, out_path, input, out_dir;
    std::size_t max_lag = 0;
    Overrides overrides;

    auto* simulate = app.add_subcommand("simulate", "Simulate a series from the configured model");
    add_config_options(simulate, config_path, overrides, false);
    simulate->add_option("--n", overrides.n, "Series length");
    simulate->add_option("--out", out_path, "Output CSV")->required();

    auto* estimate = app.add_subcommand("estimate", "Estimate ARMA parameters by ABC");
    add_config_options(estimate, config_path, overrides, true);
    estimate->add_option("--input", input, "Series CSV (overrides config input)");
    estimate->add_option("--out-dir", out_dir, "Directory for report.json and posterior CSVs");

    auto* benchmark = app.add_subcommand("benchmark", "Compare ABC with the CSS maximum-likelihood baseline");
    add_config_options(benchmark, config_path, overrides, true);
    benchmark->add_option("--n", overrides.n, "Series length");
    benchmark->add_option("--out-dir", out_dir, "Directory for the comparison table and ABC outputs");

    auto* acf = app.add_subcommand("acf", "Sample autocorrelations of a series");
    acf->add_option("--input", input, "Series CSV")->required();
    acf->add_option("--max-lag", max_lag, "Largest lag")->required();
    acf->add_option("--out", out_path, "Output CSV (default: stdout)");

    for (auto* cmd : {simulate, estimate, benchmark, acf})
        cmd->add_option("--threads", threads, "Worker threads")->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? ok : usage_error;
    }

    const Execution exec{threads, false};
    try {
        if (*acf) return cmd_acf(input, max_lag, out_path, threads, out);

        RunConfig config = load_run_config(config_path);
        overrides.apply(config);
        if (*simulate) return cmd_simulate(config, out_path, out);
        if (*estimate) {
            if (input.empty()) input = config.input;
            if (out_dir.empty()) out_dir = config.out_dir;
            if (input.empty()) throw invalid_input("estimate needs --input or an input entry in the config");
            if (out_dir.empty()) throw invalid_input("estimate needs --out-dir or an out_dir entry in the config");
            return cmd_estimate(config, input, out_dir, exec, out, err);
        }
        if (out_dir.empty()) out_dir = config.out_dir;
        if (out_dir.empty()) throw invalid_input("benchmark needs --out-dir or an out_dir entry in the config");
        return cmd_benchmark(config, out_dir, exec, out, err);
    } catch (const empty_posterior& e) {
        err << "error: " << e.what() << '\n';
        return empty_posterior_error;
    } catch (const invalid_input& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    } catch (const insufficient_data& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    } catch (const validation_error& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    } catch (const degenerate_series& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return numeric_error;
    }
}

}  // namespace abc_arma::cli
