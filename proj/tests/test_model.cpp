#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "abc_arma/error.hpp"
#include "abc_arma/model.hpp"
#include "abc_arma/priors.hpp"
#include "abc_arma/stats.hpp"
#include "oracles.hpp"

using namespace abc_arma;

namespace {

std::vector<double> sorted(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

TEST_CASE("validate_params: AR(2) roots by the quadratic formula") {
    const std::vector<double> phi{0.6, 0.2};
    const auto r = validate_params(phi, {});
    const auto m = sorted(r.ar_root_moduli);
    REQUIRE(m.size() == 2);
    // roots of x^2 - 0.6x - 0.2: 0.3 +- sqrt(0.29)
    CHECK(m[0] == doctest::Approx(0.2385164807134504).epsilon(1e-12));
    CHECK(m[1] == doctest::Approx(0.8385164807134504).epsilon(1e-12));
    CHECK(r.is_stationary);
    CHECK(r.is_invertible);
    CHECK(r.ma_root_moduli.empty());
}

TEST_CASE("validate_params: MA(2) roots are reported for 1 - theta_1 x - theta_2 x^2 itself") {
    const std::vector<double> theta{0.3, 0.4};
    const auto r = validate_params({}, theta);
    const auto m = sorted(r.ma_root_moduli);
    REQUIRE(m.size() == 2);
    CHECK(m[0] == doctest::Approx(1.25).epsilon(1e-12));
    CHECK(m[1] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(r.is_invertible);
}

TEST_CASE("validate_params: unit and near-unit roots") {
    CHECK_FALSE(validate_params(std::vector<double>{1.0}, {}).is_stationary);
    CHECK(validate_params(std::vector<double>{1.0}, {}).ar_root_moduli.at(0) == 1.0);
    CHECK_FALSE(validate_params({}, std::vector<double>{1.0}).is_invertible);
    // inside the tolerance band counts as violating
    CHECK_FALSE(is_stationary(std::vector<double>{1.0 - 1e-10}));
    CHECK(is_stationary(std::vector<double>{1.0 - 1e-6}));
    // inside the coefficient box (|phi_2| < C(2,2) = 1) but on the unit circle
    CHECK_FALSE(is_stationary(std::vector<double>{0.0, 1.0}));
}

TEST_CASE("validate_params: trailing zeros reduce the order; non-finite input is rejected") {
    const auto r = validate_params(std::vector<double>{0.5, 0.0, 0.0}, std::vector<double>{0.2, 0.0});
    CHECK(r.ar_root_moduli.size() == 1);
    CHECK(r.ma_root_moduli.size() == 1);
    CHECK(r.is_stationary);
    CHECK(r.is_invertible);
    CHECK(validate_params(std::vector<double>{0.0, 0.0}, {}).ar_root_moduli.empty());
    CHECK_THROWS_AS(validate_params(std::vector<double>{std::nan("")}, {}), invalid_input);
    CHECK_THROWS_AS(validate_params({}, std::vector<double>{std::numeric_limits<double>::infinity()}),
                    invalid_input);
}

TEST_CASE("stationary draws respect the binomial coefficient box") {
    std::mt19937_64 gen(11);
    for (std::size_t p = 1; p <= 4; ++p) {
        const auto bounds = prior_box_bounds(p);
        std::uniform_real_distribution<double> u(-1.5, 1.5);
        int checked = 0;
        for (int trial = 0; trial < 4000; ++trial) {
            std::vector<double> phi(p);
            for (std::size_t i = 0; i < p; ++i) phi[i] = u(gen) * bounds[i] * 1.5;
            if (!is_stationary(phi)) continue;
            ++checked;
            for (std::size_t i = 0; i < p; ++i) CHECK(std::abs(phi[i]) < bounds[i]);
        }
        CHECK(checked > 0);
    }
}

TEST_CASE("root check agrees with the Schur-Cohn oracle on random coefficient vectors") {
    std::mt19937_64 gen(2024);
    std::uniform_int_distribution<int> order(1, 3);
    int compared = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const auto p = static_cast<std::size_t>(order(gen));
        const auto bounds = prior_box_bounds(p);
        std::vector<double> a(p);
        for (std::size_t i = 0; i < p; ++i) {
            std::uniform_real_distribution<double> u(-1.2 * bounds[i], 1.2 * bounds[i]);
            a[i] = u(gen);
        }
        if (oracle::schur_cohn_margin(a) < 1e-6) continue;
        ++compared;
        CAPTURE(a);
        CHECK(is_stationary(a) == oracle::schur_cohn_stable(a));
        // MA invertibility is the same condition on the reversed polynomial
        CHECK(is_invertible(a) == oracle::schur_cohn_stable(a));
    }
    CHECK(compared > 950);
}

TEST_CASE("simulate_arma: white noise variance") {
    const Series y = simulate_arma({{}, {}, 1.0}, 100000, 5);
    CHECK(y.size() == 100000);
    CHECK(std::abs(sample_variance(y) - 1.0) < 0.02);
}

TEST_CASE("simulate_arma: determinism and seed sensitivity") {
    const ArmaParams m{{0.6, 0.2}, {0.3, 0.4}, 2.0};
    const Series a = simulate_arma(m, 1000, 99);
    const Series b = simulate_arma(m, 1000, 99);
    const Series c = simulate_arma(m, 1000, 100);
    CHECK(a.values == b.values);
    CHECK(a.values != c.values);
}

TEST_CASE("simulate_arma: output scales linearly with sigma") {
    const Series base = simulate_arma({{0.6, 0.2}, {0.3, 0.4}, 1.0}, 500, 17);
    for (double c : {0.5, 3.0, 1000.0}) {
        const Series scaled = simulate_arma({{0.6, 0.2}, {0.3, 0.4}, c}, 500, 17);
        for (std::size_t i = 0; i < base.size(); ++i) {
            CHECK(scaled[i] == doctest::Approx(c * base[i]).epsilon(1e-12).scale(c));
        }
    }
}

TEST_CASE("simulate_arma: burn-in drops the leading segment of the same path") {
    const ArmaParams m{{0.5}, {}, 1.0};
    const Series full = simulate_arma(m, 300, 4, 0);
    const Series tail = simulate_arma(m, 200, 4, 100);
    for (std::size_t i = 0; i < 200; ++i) CHECK(tail[i] == full[100 + i]);
}

TEST_CASE("simulate_arma: errors") {
    CHECK_THROWS_AS(simulate_arma({{1.0}, {}, 1.0}, 10, 1), validation_error);
    CHECK_THROWS_AS(simulate_arma({{0.5}, {}, 1.0}, 0, 1), invalid_input);
    CHECK_THROWS_AS(simulate_arma({{0.5}, {}, -1.0}, 10, 1), invalid_input);
}

TEST_CASE("ar_filter examples") {
    const Series y({1, 2, 3});
    CHECK(ar_filter(y, {}).values == y.values);
    CHECK(ar_filter(y, std::vector<double>{0.5}).values == std::vector<double>{1.5, 2.0});
    CHECK(ar_filter(Series({1, 2, 3, 4}), std::vector<double>{1.0}).values == std::vector<double>{1, 1, 1});
    CHECK_THROWS_AS(ar_filter(Series({1, 2}), std::vector<double>{0.1, 0.2}), insufficient_data);
}

TEST_CASE("ar_filter with the true coefficients annihilates a noise-free AR(p) path") {
    const std::vector<double> phi{0.5, -0.3, 0.1};
    std::vector<double> y{1.0, -0.5, 2.0};
    for (int t = 3; t < 50; ++t) y.push_back(phi[0] * y[t - 1] + phi[1] * y[t - 2] + phi[2] * y[t - 3]);
    const Series x = ar_filter(Series(y), phi);
    CHECK(x.size() == 47);
    for (double v : x.values) CHECK(v == doctest::Approx(0.0).epsilon(1e-12).scale(1.0));
}
