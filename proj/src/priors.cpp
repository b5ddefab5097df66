#include "abc_arma/priors.hpp"

#include <cmath>
#include <string>

#include "abc_arma/error.hpp"
#include "abc_arma/model.hpp"

namespace abc_arma {

void PriorSpec::validate() const {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw invalid_input("prior alpha must be positive");
    if (!(beta > 0.0) || !std::isfinite(beta)) throw invalid_input("prior beta must be positive");
}

std::vector<double> prior_box_bounds(std::size_t order) {
    std::vector<double> bounds(order);
    double c = 1.0;
    for (std::size_t i = 1; i <= order; ++i) {
        c = c * static_cast<double>(order - i + 1) / static_cast<double>(i);
        bounds[i - 1] = std::round(c);
    }
    return bounds;
}

namespace {

template <class Accept>
PriorDraw box_rejection(std::size_t order, rng::Stream& stream, std::size_t max_attempts, Accept accept,
                        const char* what) {
    const auto bounds = prior_box_bounds(order);
    PriorDraw draw;
    draw.value.resize(order);
    while (draw.attempts < max_attempts) {
        ++draw.attempts;
        for (std::size_t i = 0; i < order; ++i) draw.value[i] = stream.uniform(-bounds[i], bounds[i]);
        if (accept(draw.value)) return draw;
    }
    throw sampling_stalled(std::string(what) + " prior rejection exceeded " + std::to_string(max_attempts) +
                           " attempts");
}

}  // namespace

PriorDraw sample_phi_prior(std::size_t p, rng::Stream& stream, std::size_t max_attempts) {
    return box_rejection(p, stream, max_attempts, [](const std::vector<double>& v) { return is_stationary(v); },
                         "phi");
}

PriorDraw sample_theta_prior(std::size_t q, rng::Stream& stream, std::size_t max_attempts) {
    return box_rejection(q, stream, max_attempts, [](const std::vector<double>& v) { return is_invertible(v); },
                         "theta");
}

double sample_sigma_prior(const PriorSpec& spec, rng::Stream& stream) {
    double tau = 0.0;
    while (!(tau > 0.0)) tau = stream.gamma(spec.alpha, spec.beta);
    return 1.0 / tau;
}

}  // namespace abc_arma
