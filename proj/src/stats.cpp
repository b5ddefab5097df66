#include "abc_arma/stats.hpp"

#include <algorithm>
#include <cmath>

#include "abc_arma/error.hpp"
#include "abc_arma/kernels.hpp"

namespace abc_arma {

double mean(std::span<const double> series) noexcept {
    double acc = 0.0;
    for (double v : series) acc += v;
    return series.empty() ? 0.0 : acc / static_cast<double>(series.size());
}

namespace {

AcfVector normalise(const std::vector<double>& sums) {
    if (!(sums[0] > 0.0)) throw degenerate_series("sample ACF of a constant series is undefined");
    AcfVector acf;
    acf.lags.resize(sums.size() - 1);
    for (std::size_t k = 1; k < sums.size(); ++k) acf.lags[k - 1] = sums[k] / sums[0];
    return acf;
}

void check_lag(std::span<const double> series, std::size_t max_lag) {
    if (max_lag >= series.size()) throw insufficient_data("max_lag must be smaller than the series length");
}

}  // namespace

AcfVector sample_acf(std::span<const double> series, std::size_t max_lag) {
    check_lag(series, max_lag);
    return normalise(kernels::autocovariance_sums_serial(series, mean(series), max_lag));
}

AcfVector sample_acf_parallel(std::span<const double> series, std::size_t max_lag, int threads) {
    check_lag(series, max_lag);
    return normalise(kernels::autocovariance_sums_parallel(series, mean(series), max_lag, threads));
}

AcfVector ma_theoretical_acf(std::span<const double> theta, std::size_t max_lag) {
    const std::size_t q = theta.size();
    double denom = 1.0;
    for (double t : theta) denom += t * t;
    AcfVector acf;
    acf.lags.assign(max_lag, 0.0);
    for (std::size_t k = 1; k <= std::min(q, max_lag); ++k) {
        double num = -theta[k - 1];
        for (std::size_t i = 1; i + k <= q; ++i) num += theta[i - 1] * theta[k + i - 1];
        acf.lags[k - 1] = num / denom;
    }
    return acf;
}

std::vector<double> extended_yule_walker_residual(const AcfVector& rho, std::span<const double> phi,
                                                  std::size_t p, std::size_t q) {
    if (phi.size() != p) throw invalid_input("phi length must equal p");
    if (rho.max_lag() < p + q) throw insufficient_data("extended Yule-Walker check needs p+q autocorrelations");
    std::vector<double> residual(q);
    for (std::size_t j = 1; j <= q; ++j) {
        double r = rho.at(p + j);
        for (std::size_t i = 1; i <= p; ++i) r -= phi[i - 1] * rho.at(p + j - i);
        residual[j - 1] = r;
    }
    return residual;
}

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw invalid_input("distance between vectors of different length");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return std::sqrt(acc);
}

double max_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw invalid_input("distance between vectors of different length");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc = std::max(acc, std::abs(a[i] - b[i]));
    return acc;
}

double distance(Distance kind, std::span<const double> a, std::span<const double> b) {
    return kind == Distance::max ? max_distance(a, b) : euclidean_distance(a, b);
}

double sample_variance(std::span<const double> series) {
    const std::size_t n = series.size();
    if (n < 2) throw insufficient_data("sample variance needs at least two observations");
    const double m = mean(series);
    double acc = 0.0;
    for (double v : series) acc += (v - m) * (v - m);
    return acc / static_cast<double>(n - 1);
}

}  // namespace abc_arma
