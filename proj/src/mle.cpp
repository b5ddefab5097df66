#include "abc_arma/mle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include <Eigen/Dense>

#include "abc_arma/abc.hpp"
#include "abc_arma/error.hpp"
#include "abc_arma/stats.hpp"

namespace abc_arma {

namespace {

double max_vertex_distance(const std::vector<std::vector<double>>& simplex, std::size_t best) {
    double diameter = 0.0;
    for (std::size_t i = 0; i < simplex.size(); ++i) {
        if (i == best) continue;
        double acc = 0.0;
        for (std::size_t j = 0; j < simplex[i].size(); ++j) {
            const double d = simplex[i][j] - simplex[best][j];
            acc += d * d;
        }
        diameter = std::max(diameter, std::sqrt(acc));
    }
    return diameter;
}

double root_violation(const RootReport& report) {
    double v = 0.0;
    for (double m : report.ar_root_moduli) v += std::max(0.0, m - (1.0 - kRootTolerance));
    for (double m : report.ma_root_moduli) v += std::max(0.0, (1.0 + kRootTolerance) - m);
    return v;
}

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f, std::vector<double> x0,
                             const NelderMeadOptions& options) {
    const std::size_t dim = x0.size();
    NelderMeadResult result;
    if (dim == 0) {
        result.value = f(x0);
        result.converged = true;
        return result;
    }

    std::vector<std::vector<double>> simplex(dim + 1, x0);
    for (std::size_t i = 0; i < dim; ++i) simplex[i + 1][i] += options.initial_step;
    std::vector<double> values(dim + 1);
    for (std::size_t i = 0; i <= dim; ++i) values[i] = f(simplex[i]);

    std::vector<std::size_t> order(dim + 1);
    std::vector<double> centroid(dim), trial(dim), trial2(dim);
    auto along = [&](double scale, const std::vector<double>& from, std::vector<double>& out) {
        for (std::size_t j = 0; j < dim; ++j) out[j] = centroid[j] + scale * (from[j] - centroid[j]);
    };

    std::size_t iter = 0;
    for (; iter < options.max_iterations; ++iter) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second_worst = order[dim - 1];
        if (max_vertex_distance(simplex, best) < options.diameter_tolerance) {
            result.converged = true;
            break;
        }

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i <= dim; ++i) {
            if (i == worst) continue;
            for (std::size_t j = 0; j < dim; ++j) centroid[j] += simplex[i][j];
        }
        for (double& c : centroid) c /= static_cast<double>(dim);

        along(-options.reflection, simplex[worst], trial);
        const double reflected = f(trial);
        if (reflected < values[best]) {
            along(-options.reflection * options.expansion, simplex[worst], trial2);
            const double expanded = f(trial2);
            if (expanded < reflected) {
                simplex[worst] = trial2;
                values[worst] = expanded;
            } else {
                simplex[worst] = trial;
                values[worst] = reflected;
            }
            continue;
        }
        if (reflected < values[second_worst]) {
            simplex[worst] = trial;
            values[worst] = reflected;
            continue;
        }
        // Outside contraction toward the reflected point, inside toward the worst.
        if (reflected < values[worst]) {
            along(-options.reflection * options.contraction, simplex[worst], trial2);
            const double contracted = f(trial2);
            if (contracted <= reflected) {
                simplex[worst] = trial2;
                values[worst] = contracted;
                continue;
            }
        } else {
            along(options.contraction, simplex[worst], trial2);
            const double contracted = f(trial2);
            if (contracted < values[worst]) {
                simplex[worst] = trial2;
                values[worst] = contracted;
                continue;
            }
        }
        for (std::size_t i = 0; i <= dim; ++i) {
            if (i == best) continue;
            for (std::size_t j = 0; j < dim; ++j)
                simplex[i][j] = simplex[best][j] + options.shrink * (simplex[i][j] - simplex[best][j]);
            values[i] = f(simplex[i]);
        }
    }

    const auto best = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
    result.x = simplex[best];
    result.value = values[best];
    result.iterations = iter;
    return result;
}

double css_objective(std::span<const double> phi, std::span<const double> theta, std::span<const double> observed) {
    const RootReport report = validate_params(phi, theta);
    if (!report.is_stationary || !report.is_invertible) {
        const double v = root_violation(report);
        return kInvalidPenalty + v * v;
    }
    const std::size_t p = phi.size();
    const std::size_t q = theta.size();
    const std::size_t m = std::max(p, q);
    const std::size_t n = observed.size();
    std::vector<double> e(n, 0.0);
    double css = 0.0;
    for (std::size_t t = m; t < n; ++t) {
        double r = observed[t];
        for (std::size_t i = 1; i <= p; ++i) r -= phi[i - 1] * observed[t - i];
        for (std::size_t j = 1; j <= q; ++j) r += theta[j - 1] * e[t - j];
        e[t] = r;
        css += r * r;
    }
    if (!std::isfinite(css)) return kInvalidPenalty;
    return css;
}

std::vector<double> yule_walker_seed(std::span<const double> series, std::size_t p) {
    if (p == 0) return {};
    const AcfVector acf = sample_acf(series, p);
    Eigen::MatrixXd r(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p));
    Eigen::VectorXd rhs(static_cast<Eigen::Index>(p));
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < p; ++j) {
            r(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = acf.at(i > j ? i - j : j - i);
        }
        rhs(static_cast<Eigen::Index>(i)) = acf.at(i + 1);
    }
    const Eigen::VectorXd sol = r.ldlt().solve(rhs);
    std::vector<double> phi(sol.data(), sol.data() + sol.size());
    for (int shrink = 0; shrink < 200 && !is_stationary(phi); ++shrink) {
        for (double& v : phi) v *= 0.9;
    }
    return phi;
}

MleResult fit_mle(const Series& observed, std::size_t p, std::size_t q, std::uint64_t seed,
                  const NelderMeadOptions& options) {
    const std::size_t m = std::max(p, q);
    if (observed.size() <= m + 1) throw insufficient_data("fit_mle needs more observations than max(p, q) + 1");

    std::vector<double> y(observed.values);
    const double centre = mean(y);
    for (double& v : y) v -= centre;

    const auto objective = [&](std::span<const double> x) { return css_objective(x.first(p), x.subspan(p), y); };

    std::vector<std::vector<double>> starts;
    std::vector<double> moment = yule_walker_seed(y, p);
    moment.resize(p + q, 0.0);
    starts.push_back(moment);
    rng::Stream jitter(rng::derive_seed(seed, static_cast<std::uint64_t>(Stage::mle)));
    for (int restart = 0; restart < 2; ++restart) {
        std::vector<double> x = moment;
        for (int attempt = 0; attempt < 100; ++attempt) {
            for (std::size_t j = 0; j < x.size(); ++j) x[j] = moment[j] + 0.1 * jitter.normal();
            if (objective(x) < kInvalidPenalty) break;
            x = std::vector<double>(p + q, 0.0);
        }
        starts.push_back(x);
    }

    MleResult best;
    best.css = std::numeric_limits<double>::infinity();
    std::vector<double> start_objectives;
    std::vector<double> best_x;
    bool best_converged = false;
    std::size_t iterations = 0;
    for (std::size_t s = 0; s < starts.size(); ++s) {
        start_objectives.push_back(objective(starts[s]));
        const auto run = nelder_mead(objective, starts[s], options);
        iterations += run.iterations;
        if (run.value < best.css) {
            best.css = run.value;
            best_x = run.x;
            best_converged = run.converged;
            best.start_index = s;
        }
    }

    const std::size_t effective = y.size() - m;
    best.params.phi.assign(best_x.begin(), best_x.begin() + static_cast<std::ptrdiff_t>(p));
    best.params.theta.assign(best_x.begin() + static_cast<std::ptrdiff_t>(p), best_x.end());
    const double sigma2 = best.css / static_cast<double>(effective);
    best.params.sigma = std::sqrt(sigma2);
    best.neg_log_likelihood =
        0.5 * static_cast<double>(effective) * (std::log(2.0 * std::numbers::pi * sigma2) + 1.0);
    best.iterations = iterations;
    const RootReport report = validate_params(best.params.phi, best.params.theta);
    best.converged = best_converged && report.is_stationary && report.is_invertible;
    best.start_objectives = std::move(start_objectives);
    return best;
}

}  // namespace abc_arma
