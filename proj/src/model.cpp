#include "abc_arma/model.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "abc_arma/error.hpp"

namespace abc_arma {

namespace {

void require_finite(std::span<const double> v, const char* what) {
    for (double x : v) {
        if (!std::isfinite(x)) throw invalid_input(std::string("non-finite coefficient in ") + what);
    }
}

}  // namespace

std::span<const double> effective_coefficients(std::span<const double> coeffs) noexcept {
    std::size_t k = coeffs.size();
    while (k > 0 && coeffs[k - 1] == 0.0) --k;
    return coeffs.first(k);
}

std::vector<double> companion_root_moduli(std::span<const double> coeffs) {
    const auto c = effective_coefficients(coeffs);
    const auto k = static_cast<Eigen::Index>(c.size());
    if (k == 0) return {};
    if (k == 1) return {std::abs(c[0])};

    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(k, k);
    for (Eigen::Index j = 0; j < k; ++j) companion(0, j) = c[static_cast<std::size_t>(j)];
    for (Eigen::Index i = 1; i < k; ++i) companion(i, i - 1) = 1.0;

    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    if (solver.info() != Eigen::Success) throw error("companion eigenvalue solve failed");
    std::vector<double> moduli(static_cast<std::size_t>(k));
    for (Eigen::Index i = 0; i < k; ++i) moduli[static_cast<std::size_t>(i)] = std::abs(solver.eigenvalues()[i]);
    return moduli;
}

RootReport validate_params(std::span<const double> phi, std::span<const double> theta) {
    require_finite(phi, "phi");
    require_finite(theta, "theta");

    RootReport report;
    report.ar_root_moduli = companion_root_moduli(phi);
    for (double m : report.ar_root_moduli) {
        if (!(m < 1.0 - kRootTolerance)) report.is_stationary = false;
    }
    // Reversed MA polynomial shares the AR companion form; its roots are the
    // reciprocals of the roots of 1 - theta_1 x - ... - theta_q x^q.
    for (double m : companion_root_moduli(theta)) {
        const double modulus = 1.0 / m;
        report.ma_root_moduli.push_back(modulus);
        if (!(modulus > 1.0 + kRootTolerance)) report.is_invertible = false;
    }
    return report;
}

bool is_stationary(std::span<const double> phi) {
    return validate_params(phi, {}).is_stationary;
}

bool is_invertible(std::span<const double> theta) {
    return validate_params({}, theta).is_invertible;
}

void simulate_arma_into(std::span<const double> phi, std::span<const double> theta, double sigma,
                        std::size_t burn_in, rng::Stream& stream, std::span<double> out) {
    const std::size_t p = phi.size();
    const std::size_t q = theta.size();
    // y_hist[0] = Y_{t-1}, e_hist[0] = e_{t-1}
    std::vector<double> y_hist(p, 0.0);
    std::vector<double> e_hist(q, 0.0);
    const std::size_t total = burn_in + out.size();
    for (std::size_t t = 0; t < total; ++t) {
        const double e = sigma * stream.normal();
        double y = e;
        for (std::size_t i = 0; i < p; ++i) y += phi[i] * y_hist[i];
        for (std::size_t j = 0; j < q; ++j) y -= theta[j] * e_hist[j];
        for (std::size_t i = p; i > 1; --i) y_hist[i - 1] = y_hist[i - 2];
        if (p > 0) y_hist[0] = y;
        for (std::size_t j = q; j > 1; --j) e_hist[j - 1] = e_hist[j - 2];
        if (q > 0) e_hist[0] = e;
        if (t >= burn_in) out[t - burn_in] = y;
    }
}

Series simulate_arma(const ArmaParams& params, std::size_t n, std::uint64_t seed, std::size_t burn_in) {
    if (n == 0) throw invalid_input("series length must be positive");
    if (!(params.sigma > 0.0) || !std::isfinite(params.sigma)) throw invalid_input("sigma must be positive and finite");
    const RootReport report = validate_params(params.phi, params.theta);
    if (!report.is_stationary) {
        std::ostringstream msg;
        msg << "AR part is not stationary; root moduli:";
        for (double m : report.ar_root_moduli) msg << ' ' << m;
        throw validation_error(msg.str());
    }
    rng::Stream stream(seed);
    std::vector<double> values(n);
    simulate_arma_into(params.phi, params.theta, params.sigma, burn_in, stream, values);
    return Series(std::move(values));
}

Series ar_filter(const Series& series, std::span<const double> phi) {
    const std::size_t n = series.size();
    const std::size_t p = phi.size();
    if (n <= p) throw insufficient_data("ar_filter needs more observations than AR coefficients");
    std::vector<double> x(n - p);
    for (std::size_t t = p; t < n; ++t) {
        double v = series[t];
        for (std::size_t j = 1; j <= p; ++j) v -= phi[j - 1] * series[t - j];
        x[t - p] = v;
    }
    return Series(std::move(x));
}

}  // namespace abc_arma
