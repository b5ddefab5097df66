#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "abc_arma/model.hpp"

namespace abc_arma {

/// Added to the objective of a non-stationary or non-invertible candidate.
inline constexpr double kInvalidPenalty = 1e12;

struct NelderMeadOptions {
    double reflection = 1.0;
    double expansion = 2.0;
    double contraction = 0.5;
    double shrink = 0.5;
    double initial_step = 0.1;
    /// Stop once every vertex lies within this distance of the best one.
    double diameter_tolerance = 1e-8;
    std::size_t max_iterations = 2000;
};

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
};

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f, std::vector<double> x0,
                             const NelderMeadOptions& options = {});

/// Conditional sum of squares: residuals from the ARMA recursion with the
/// first m = max(p,q) residuals set to zero, summed over t = m+1..n.
/// Invalid candidates score kInvalidPenalty + (root violation)^2.
double css_objective(std::span<const double> phi, std::span<const double> theta, std::span<const double> observed);

/// AR(p) Yule-Walker solve on the sample ACF, shrunk toward zero until stationary.
std::vector<double> yule_walker_seed(std::span<const double> series, std::size_t p);

struct MleResult {
    ArmaParams params;
    double neg_log_likelihood = 0.0;
    double css = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
    /// Which multistart produced the optimum (0 = moment seed).
    std::size_t start_index = 0;
    /// CSS value at each start point, before optimisation.
    std::vector<double> start_objectives;
};

/// Minimises CSS on the mean-centred series from a moment seed plus two
/// jittered restarts; sigma^2 = CSS / (n - m) at the optimum.
MleResult fit_mle(const Series& observed, std::size_t p, std::size_t q, std::uint64_t seed = 0,
                  const NelderMeadOptions& options = {});

}  // namespace abc_arma
