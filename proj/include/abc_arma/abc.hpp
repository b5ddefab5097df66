#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "abc_arma/model.hpp"
#include "abc_arma/priors.hpp"
#include "abc_arma/rng.hpp"
#include "abc_arma/stats.hpp"

namespace abc_arma {

/// Stream tags. Proposal i of stage s draws from Stream(derive_seed(seed, s), i).
enum class Stage : std::uint64_t { simulate = 0, phi = 1, theta = 2, sigma = 3, mle = 4 };

const char* stage_name(Stage stage) noexcept;

struct AbcConfig {
    std::size_t n_proposals = 20000;
    double epsilon = 0.002;
    /// Posterior size after sorting accepted draws by distance. Setting it to
    /// n_proposals disables the cut.
    std::size_t top_k = 50;
    Distance distance = Distance::euclidean;
    std::uint64_t master_seed = 0;
    /// Length of each synthetic series; 0 means "same as the observed series".
    std::size_t sim_length = 0;
    /// Noise sd for simulations whose summary is scale-free (the ACF stages).
    double sigma_for_phi_stage = 1.0;
    std::size_t burn_in = kDefaultBurnIn;

    void validate() const;
};

/// How proposals are evaluated. Results do not depend on these settings.
struct Execution {
    int threads = 0;  // 0: OpenMP default
    bool serial = false;
};

struct PosteriorDraw {
    std::vector<double> value;
    double distance = 0.0;
    std::size_t proposal_index = 0;
};

struct AbcResult {
    /// Kept draws, ordered by (distance, proposal_index).
    std::vector<PosteriorDraw> draws;
    std::size_t n_proposals = 0;
    /// Draws within epsilon before the top_k cut.
    std::size_t accepted = 0;
    double min_distance = 0.0;
};

/// Draws a proposal from the prior.
using ProposalSource = std::function<std::vector<double>(rng::Stream&)>;
/// Simulates data under a proposal and returns its summary statistic.
using Simulator = std::function<std::vector<double>(const std::vector<double>& proposal, rng::Stream&)>;

/// Rejection ABC. Evaluates exactly config.n_proposals proposals, accepts
/// those with distance <= epsilon and keeps the top_k closest (ties to the
/// lower proposal index). With an identity summary this is plain rejection
/// on the raw data. Throws empty_posterior when nothing is accepted.
AbcResult abc_rejection(std::span<const double> observed_summary, const ProposalSource& source,
                        const Simulator& simulator, const AbcConfig& config, Stage stage,
                        const Execution& exec = {});

/// Component-wise mean of the kept draws.
std::vector<double> posterior_mean(const std::vector<PosteriorDraw>& draws);
std::vector<double> posterior_median(const std::vector<PosteriorDraw>& draws);
/// Component-wise sample standard deviation (divisor k - 1; 0 for k < 2).
std::vector<double> posterior_sd(const std::vector<PosteriorDraw>& draws);

struct PhiEstimate {
    std::vector<double> phi_hat;
    AbcResult posterior;  // draw values hold phi only
};

/// AR coefficients from the first p+q sample autocorrelations. Proposals
/// draw (phi, theta) jointly from the constrained priors.
PhiEstimate estimate_phi(const Series& observed, std::size_t p, std::size_t q, const AbcConfig& config,
                         const Execution& exec = {});

struct ThetaSigmaEstimate {
    std::vector<double> theta_hat;
    double sigma2_hat = 0.0;
    double observed_variance = 0.0;
    AbcResult theta_posterior;  // empty when q == 0
    AbcResult sigma_posterior;  // draw values hold sigma
};

/// MA coefficients from the first q autocorrelations of the AR-filtered
/// series, then the noise variance from its sample variance.
ThetaSigmaEstimate estimate_theta_sigma(const Series& filtered, std::size_t q, const PriorSpec& spec,
                                        const AbcConfig& config_theta, const AbcConfig& config_sigma,
                                        const Execution& exec = {});

/// sigma-stage alone with theta fixed; exposed for the variance-identity check.
AbcResult sigma_stage(const Series& filtered, std::span<const double> theta_hat, const PriorSpec& spec,
                      const AbcConfig& config, const Execution& exec = {});

struct StageConfigs {
    AbcConfig phi;
    AbcConfig theta;
    AbcConfig sigma;
};

struct EstimationReport {
    std::size_t p = 0;
    std::size_t q = 0;
    PriorSpec prior;
    StageConfigs configs;
    double mean_hat = 0.0;
    std::vector<double> phi_hat;
    std::vector<double> theta_hat;
    double sigma2_hat = 0.0;
    double observed_variance = 0.0;
    AbcResult posterior_phi;
    AbcResult posterior_theta;
    AbcResult posterior_sigma;
};

/// Centre, estimate phi, AR-filter, estimate theta and sigma^2.
EstimationReport estimate_arma(const Series& observed, std::size_t p, std::size_t q, const PriorSpec& spec,
                               const StageConfigs& configs, const Execution& exec = {});

}  // namespace abc_arma
