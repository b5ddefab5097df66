#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "abc_arma/model.hpp"

namespace abc_arma {

/// Autocorrelations rho_1..rho_K; entry k-1 holds lag k. Lag 0 is implicit (1).
struct AcfVector {
    std::vector<double> lags;

    std::size_t max_lag() const noexcept { return lags.size(); }
    /// rho_k with rho_0 = 1.
    double at(std::size_t k) const { return k == 0 ? 1.0 : lags.at(k - 1); }
};

enum class Distance { euclidean, max };

/// Biased sample ACF: sum_{t<n-k} (y_t - m)(y_{t+k} - m) / sum_t (y_t - m)^2.
AcfVector sample_acf(std::span<const double> series, std::size_t max_lag);
inline AcfVector sample_acf(const Series& series, std::size_t max_lag) {
    return sample_acf(series.view(), max_lag);
}

/// Same estimator with the lag sums spread over OpenMP threads.
AcfVector sample_acf_parallel(std::span<const double> series, std::size_t max_lag, int threads = 0);

/// Theoretical ACF of MA(q) with the 1 - theta_1 B - ... sign convention.
AcfVector ma_theoretical_acf(std::span<const double> theta, std::size_t max_lag);

/// r_j = rho_{p+j} - sum_i phi_i rho_{p+j-i}, j = 1..q. Zero when the
/// extended Yule-Walker relations hold.
std::vector<double> extended_yule_walker_residual(const AcfVector& rho, std::span<const double> phi,
                                                  std::size_t p, std::size_t q);

double euclidean_distance(std::span<const double> a, std::span<const double> b);
double max_distance(std::span<const double> a, std::span<const double> b);
double distance(Distance kind, std::span<const double> a, std::span<const double> b);

/// Unbiased sample variance, divisor n - 1.
double sample_variance(std::span<const double> series);
inline double sample_variance(const Series& series) { return sample_variance(series.view()); }

double mean(std::span<const double> series) noexcept;

}  // namespace abc_arma
