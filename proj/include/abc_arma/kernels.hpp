#pragma once

// Data-parallel kernels. Each has a serial reference and an OpenMP version
// that must agree bit for bit: work is split by index, every index is
// computed by exactly one thread in the same arithmetic order, and no
// floating-point reduction crosses threads.

#include <cstddef>
#include <exception>
#include <functional>
#include <span>
#include <vector>

#include <omp.h>

namespace abc_arma::kernels {

/// Thread count from ABC_ARMA_THREADS, or 0 (OpenMP default) when unset.
int default_threads();

/// Centred lag products c_k = sum_{t<n-k} d_t d_{t+k}, k = 0..max_lag,
/// where d = series - mean. Parallel over lags.
std::vector<double> autocovariance_sums_serial(std::span<const double> series, double mean,
                                               std::size_t max_lag);
std::vector<double> autocovariance_sums_parallel(std::span<const double> series, double mean,
                                                 std::size_t max_lag, int threads = 0);

/// Evaluates f(i) for i in [0, n) into out[i]. The callable must be
/// thread-safe and depend only on i.
template <class T>
using IndexedFn = std::function<T(std::size_t)>;

template <class T>
void evaluate_serial(std::size_t n, const IndexedFn<T>& f, std::vector<T>& out) {
    out.resize(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
}

template <class T>
void evaluate_parallel(std::size_t n, const IndexedFn<T>& f, std::vector<T>& out, int threads = 0) {
    out.resize(n);
    const auto count = static_cast<long long>(n);
    // Rethrows the exception from the lowest failing index.
    std::exception_ptr failure;
    long long failed_at = count;
    const int team = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 64) num_threads(team)
    for (long long i = 0; i < count; ++i) {
        try {
            out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
        } catch (...) {
#pragma omp critical(abc_arma_evaluate_failure)
            if (i < failed_at) {
                failed_at = i;
                failure = std::current_exception();
            }
        }
    }
    if (failure) std::rethrow_exception(failure);
}

}  // namespace abc_arma::kernels
