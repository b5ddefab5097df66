#include "abc_arma/abc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "abc_arma/error.hpp"
#include "abc_arma/kernels.hpp"

namespace abc_arma {

const char* stage_name(Stage stage) noexcept {
    switch (stage) {
        case Stage::simulate: return "simulate";
        case Stage::phi: return "phi";
        case Stage::theta: return "theta";
        case Stage::sigma: return "sigma";
        case Stage::mle: return "mle";
    }
    return "unknown";
}

void AbcConfig::validate() const {
    if (n_proposals == 0) throw invalid_input("n_proposals must be positive");
    if (!(epsilon > 0.0) || std::isnan(epsilon)) throw invalid_input("epsilon must be positive");
    if (top_k == 0) throw invalid_input("top_k must be positive");
    if (top_k > n_proposals) throw invalid_input("top_k must not exceed n_proposals");
    if (!(sigma_for_phi_stage > 0.0) || !std::isfinite(sigma_for_phi_stage))
        throw invalid_input("sigma_for_phi_stage must be positive");
}

namespace {

struct Evaluated {
    std::vector<double> proposal;
    double distance = 0.0;
};

std::size_t resolve_length(const AbcConfig& config, std::size_t observed_length) {
    return config.sim_length != 0 ? config.sim_length : observed_length;
}

void project_draws(AbcResult& result, std::size_t count) {
    for (auto& draw : result.draws) draw.value.resize(count);
}

}  // namespace

AbcResult abc_rejection(std::span<const double> observed_summary, const ProposalSource& source,
                        const Simulator& simulator, const AbcConfig& config, Stage stage, const Execution& exec) {
    config.validate();
    for (double s : observed_summary) {
        if (!std::isfinite(s)) throw invalid_input("observed summary must be finite");
    }
    const std::uint64_t key = rng::derive_seed(config.master_seed, static_cast<std::uint64_t>(stage));
    const kernels::IndexedFn<Evaluated> evaluate = [&](std::size_t i) {
        rng::Stream stream(key, i);
        Evaluated e;
        e.proposal = source(stream);
        const auto summary = simulator(e.proposal, stream);
        e.distance = distance(config.distance, summary, observed_summary);
        if (std::isnan(e.distance)) e.distance = std::numeric_limits<double>::infinity();
        return e;
    };

    std::vector<Evaluated> evaluated;
    if (exec.serial) {
        kernels::evaluate_serial(config.n_proposals, evaluate, evaluated);
    } else {
        kernels::evaluate_parallel(config.n_proposals, evaluate, evaluated, exec.threads);
    }

    AbcResult result;
    result.n_proposals = config.n_proposals;
    result.min_distance = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> accepted;
    for (std::size_t i = 0; i < evaluated.size(); ++i) {
        result.min_distance = std::min(result.min_distance, evaluated[i].distance);
        if (evaluated[i].distance <= config.epsilon) accepted.push_back(i);
    }
    result.accepted = accepted.size();
    if (accepted.empty()) throw empty_posterior(stage_name(stage), result.min_distance, config.epsilon);

    std::sort(accepted.begin(), accepted.end(), [&](std::size_t a, std::size_t b) {
        if (evaluated[a].distance != evaluated[b].distance) return evaluated[a].distance < evaluated[b].distance;
        return a < b;
    });
    accepted.resize(std::min(accepted.size(), config.top_k));
    result.draws.reserve(accepted.size());
    for (std::size_t i : accepted) {
        result.draws.push_back({std::move(evaluated[i].proposal), evaluated[i].distance, i});
    }
    return result;
}

std::vector<double> posterior_mean(const std::vector<PosteriorDraw>& draws) {
    if (draws.empty()) return {};
    std::vector<double> m(draws.front().value.size(), 0.0);
    for (const auto& d : draws) {
        for (std::size_t j = 0; j < m.size(); ++j) m[j] += d.value[j];
    }
    for (double& v : m) v /= static_cast<double>(draws.size());
    return m;
}

std::vector<double> posterior_median(const std::vector<PosteriorDraw>& draws) {
    if (draws.empty()) return {};
    const std::size_t dim = draws.front().value.size();
    std::vector<double> med(dim);
    std::vector<double> column(draws.size());
    for (std::size_t j = 0; j < dim; ++j) {
        for (std::size_t i = 0; i < draws.size(); ++i) column[i] = draws[i].value[j];
        std::sort(column.begin(), column.end());
        const std::size_t k = column.size();
        med[j] = k % 2 == 1 ? column[k / 2] : 0.5 * (column[k / 2 - 1] + column[k / 2]);
    }
    return med;
}

std::vector<double> posterior_sd(const std::vector<PosteriorDraw>& draws) {
    if (draws.empty()) return {};
    const auto m = posterior_mean(draws);
    std::vector<double> sd(m.size(), 0.0);
    if (draws.size() < 2) return sd;
    for (const auto& d : draws) {
        for (std::size_t j = 0; j < m.size(); ++j) sd[j] += (d.value[j] - m[j]) * (d.value[j] - m[j]);
    }
    for (double& v : sd) v = std::sqrt(v / static_cast<double>(draws.size() - 1));
    return sd;
}

PhiEstimate estimate_phi(const Series& observed, std::size_t p, std::size_t q, const AbcConfig& config,
                         const Execution& exec) {
    if (p == 0) throw invalid_input("estimate_phi needs p >= 1");
    if (observed.size() <= p + q) throw insufficient_data("observed series must be longer than p + q");
    const std::size_t lags = p + q;
    const std::size_t length = resolve_length(config, observed.size());
    if (length <= lags) throw invalid_input("sim_length must exceed p + q");

    const auto observed_summary = sample_acf(observed, lags).lags;
    const ProposalSource source = [p, q](rng::Stream& stream) {
        auto value = sample_phi_prior(p, stream).value;
        const auto theta = sample_theta_prior(q, stream).value;
        value.insert(value.end(), theta.begin(), theta.end());
        return value;
    };
    const Simulator simulator = [p, lags, length, &config](const std::vector<double>& proposal,
                                                           rng::Stream& stream) {
        std::vector<double> y(length);
        const std::span<const double> all(proposal);
        simulate_arma_into(all.first(p), all.subspan(p), config.sigma_for_phi_stage, config.burn_in, stream, y);
        return sample_acf(y, lags).lags;
    };

    PhiEstimate estimate;
    estimate.posterior = abc_rejection(observed_summary, source, simulator, config, Stage::phi, exec);
    project_draws(estimate.posterior, p);
    estimate.phi_hat = posterior_mean(estimate.posterior.draws);
    return estimate;
}

AbcResult sigma_stage(const Series& filtered, std::span<const double> theta_hat, const PriorSpec& spec,
                      const AbcConfig& config, const Execution& exec) {
    spec.validate();
    const std::size_t length = resolve_length(config, filtered.size());
    if (length < 2) throw invalid_input("sigma stage needs sim_length >= 2");
    const std::vector<double> observed_summary{sample_variance(filtered)};
    const std::vector<double> theta(theta_hat.begin(), theta_hat.end());

    const ProposalSource source = [&spec](rng::Stream& stream) {
        return std::vector<double>{sample_sigma_prior(spec, stream)};
    };
    const Simulator simulator = [&theta, length, &config](const std::vector<double>& proposal,
                                                          rng::Stream& stream) {
        std::vector<double> x(length);
        simulate_arma_into({}, theta, proposal[0], config.burn_in, stream, x);
        return std::vector<double>{sample_variance(x)};
    };
    return abc_rejection(observed_summary, source, simulator, config, Stage::sigma, exec);
}

ThetaSigmaEstimate estimate_theta_sigma(const Series& filtered, std::size_t q, const PriorSpec& spec,
                                        const AbcConfig& config_theta, const AbcConfig& config_sigma,
                                        const Execution& exec) {
    if (filtered.size() <= q || filtered.size() < 2) throw insufficient_data("filtered series must be longer than q");
    ThetaSigmaEstimate estimate;
    estimate.observed_variance = sample_variance(filtered);

    if (q > 0) {
        const std::size_t length = resolve_length(config_theta, filtered.size());
        if (length <= q) throw invalid_input("sim_length must exceed q");
        const auto observed_summary = sample_acf(filtered, q).lags;
        const ProposalSource source = [q](rng::Stream& stream) { return sample_theta_prior(q, stream).value; };
        const Simulator simulator = [q, length, &config_theta](const std::vector<double>& theta,
                                                              rng::Stream& stream) {
            std::vector<double> x(length);
            simulate_arma_into({}, theta, config_theta.sigma_for_phi_stage, config_theta.burn_in, stream, x);
            return sample_acf(x, q).lags;
        };
        estimate.theta_posterior =
            abc_rejection(observed_summary, source, simulator, config_theta, Stage::theta, exec);
        estimate.theta_hat = posterior_mean(estimate.theta_posterior.draws);
    }

    estimate.sigma_posterior = sigma_stage(filtered, estimate.theta_hat, spec, config_sigma, exec);
    double acc = 0.0;
    for (const auto& d : estimate.sigma_posterior.draws) acc += d.value[0] * d.value[0];
    estimate.sigma2_hat = acc / static_cast<double>(estimate.sigma_posterior.draws.size());
    return estimate;
}

EstimationReport estimate_arma(const Series& observed, std::size_t p, std::size_t q, const PriorSpec& spec,
                               const StageConfigs& configs, const Execution& exec) {
    if (observed.size() <= p + q + 2) throw insufficient_data("observed series must be longer than p + q + 2");
    spec.validate();

    EstimationReport report;
    report.p = p;
    report.q = q;
    report.prior = spec;
    report.prior.p = p;
    report.prior.q = q;
    report.configs = configs;

    report.mean_hat = mean(observed.view());
    std::vector<double> centred(observed.values);
    for (double& v : centred) v -= report.mean_hat;
    const Series centred_series(std::move(centred));

    if (p > 0) {
        auto phi = estimate_phi(centred_series, p, q, configs.phi, exec);
        report.phi_hat = std::move(phi.phi_hat);
        report.posterior_phi = std::move(phi.posterior);
    }
    const Series filtered = ar_filter(centred_series, report.phi_hat);
    auto ts = estimate_theta_sigma(filtered, q, spec, configs.theta, configs.sigma, exec);
    report.theta_hat = std::move(ts.theta_hat);
    report.sigma2_hat = ts.sigma2_hat;
    report.observed_variance = ts.observed_variance;
    report.posterior_theta = std::move(ts.theta_posterior);
    report.posterior_sigma = std::move(ts.sigma_posterior);
    return report;
}

}  // namespace abc_arma
