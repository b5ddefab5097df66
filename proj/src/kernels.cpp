#include "abc_arma/kernels.hpp"

#include <cstdlib>
#include <string>

namespace abc_arma::kernels {

int default_threads() {
    const char* env = std::getenv("ABC_ARMA_THREADS");
    if (env == nullptr || *env == '\0') return 0;
    try {
        const int n = std::stoi(env);
        return n > 0 ? n : 0;
    } catch (const std::exception&) {
        return 0;
    }
}

namespace {

double lag_sum(std::span<const double> y, double mean, std::size_t k) {
    double acc = 0.0;
    const std::size_t n = y.size();
    for (std::size_t t = 0; t + k < n; ++t) acc += (y[t] - mean) * (y[t + k] - mean);
    return acc;
}

}  // namespace

std::vector<double> autocovariance_sums_serial(std::span<const double> series, double mean,
                                               std::size_t max_lag) {
    std::vector<double> sums(max_lag + 1);
    for (std::size_t k = 0; k <= max_lag; ++k) sums[k] = lag_sum(series, mean, k);
    return sums;
}

std::vector<double> autocovariance_sums_parallel(std::span<const double> series, double mean,
                                                 std::size_t max_lag, int threads) {
    std::vector<double> sums(max_lag + 1);
    const auto lags = static_cast<long long>(max_lag) + 1;
    const int team = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(static) num_threads(team)
    for (long long k = 0; k < lags; ++k)
        sums[static_cast<std::size_t>(k)] = lag_sum(series, mean, static_cast<std::size_t>(k));
    return sums;
}

}  // namespace abc_arma::kernels
