#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "abc_arma/rng.hpp"

namespace abc_arma {

/// Roots within this distance of the unit circle count as violating.
inline constexpr double kRootTolerance = 1e-9;

inline constexpr std::size_t kDefaultBurnIn = 500;

/// Centred ARMA(p,q) parameters:
///   Y_t = phi_1 Y_{t-1} + ... + phi_p Y_{t-p} + e_t - theta_1 e_{t-1} - ... - theta_q e_{t-q},
///   e_t ~ N(0, sigma^2).
struct ArmaParams {
    std::vector<double> phi;
    std::vector<double> theta;
    double sigma = 1.0;

    std::size_t p() const noexcept { return phi.size(); }
    std::size_t q() const noexcept { return theta.size(); }
};

/// An observed or simulated series. Entries are finite.
struct Series {
    std::vector<double> values;

    Series() = default;
    explicit Series(std::vector<double> v) : values(std::move(v)) {}

    std::size_t size() const noexcept { return values.size(); }
    std::span<const double> view() const noexcept { return values; }
    double operator[](std::size_t i) const noexcept { return values[i]; }
};

/// Root moduli of both characteristic polynomials.
///
/// ar_root_moduli are the moduli of the roots of x^p - phi_1 x^{p-1} - ... - phi_p.
/// ma_root_moduli are the moduli of the roots of 1 - theta_1 x - ... - theta_q x^q
/// itself; they are obtained as reciprocals of the roots of the reversed
/// polynomial x^q - theta_1 x^{q-1} - ... - theta_q, which shares the AR
/// companion form.
struct RootReport {
    std::vector<double> ar_root_moduli;
    std::vector<double> ma_root_moduli;
    bool is_stationary = true;
    bool is_invertible = true;
};

/// Drops trailing zero coefficients (phi_p == 0 lowers the effective order).
std::span<const double> effective_coefficients(std::span<const double> coeffs) noexcept;

/// Moduli of the roots of x^k - c_1 x^{k-1} - ... - c_k, via companion-matrix eigenvalues.
std::vector<double> companion_root_moduli(std::span<const double> coeffs);

RootReport validate_params(std::span<const double> phi, std::span<const double> theta);

bool is_stationary(std::span<const double> phi);
bool is_invertible(std::span<const double> theta);

/// Simulates n values of the centred recursion after discarding burn_in
/// leading values. Pre-sample Y and e are zero. Bit-identical for identical inputs.
Series simulate_arma(const ArmaParams& params, std::size_t n, std::uint64_t seed,
                     std::size_t burn_in = kDefaultBurnIn);

/// Writes the simulation into `out` drawing innovations from an existing
/// stream. Used by the ABC inner loop, where the stream is per-proposal.
void simulate_arma_into(std::span<const double> phi, std::span<const double> theta, double sigma,
                        std::size_t burn_in, rng::Stream& stream, std::span<double> out);

/// x_{p+i} = y_{p+i} - sum_j phi_j y_{p+i-j}, i = 1..n-p.
Series ar_filter(const Series& series, std::span<const double> phi);

}  // namespace abc_arma
