#pragma once

#include <cstddef>
#include <vector>

#include "abc_arma/rng.hpp"

namespace abc_arma {

inline constexpr std::size_t kDefaultRejectionCap = 1'000'000;

/// Orders and the gamma hyperparameters of tau = 1/sigma (shape alpha, rate beta).
struct PriorSpec {
    std::size_t p = 0;
    std::size_t q = 0;
    double alpha = 2.0;
    double beta = 2.0;

    void validate() const;
};

/// Entry i (1-based) is the binomial coefficient C(order, i). Empty for order 0.
std::vector<double> prior_box_bounds(std::size_t order);

/// A constrained draw plus the number of box proposals it took.
struct PriorDraw {
    std::vector<double> value;
    std::size_t attempts = 0;
};

/// Uniform on the stationarity region: box (-C(p,i), C(p,i)) with root-check rejection.
PriorDraw sample_phi_prior(std::size_t p, rng::Stream& stream,
                           std::size_t max_attempts = kDefaultRejectionCap);

/// Uniform on the invertibility region: box (-C(q,i), C(q,i)) with root-check rejection.
PriorDraw sample_theta_prior(std::size_t q, rng::Stream& stream,
                             std::size_t max_attempts = kDefaultRejectionCap);

/// sigma = 1/tau, tau ~ Gamma(shape alpha, rate beta). Always > 0.
double sample_sigma_prior(const PriorSpec& spec, rng::Stream& stream);

}  // namespace abc_arma
