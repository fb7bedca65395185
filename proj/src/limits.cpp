#include "seqemp/limits.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "seqemp/parallel.hpp"

namespace seqemp {

std::vector<double> simulate_bridge(int resolution, CounterRng rng) {
    if (resolution < 2) throw std::invalid_argument("simulate_bridge: resolution must be >= 2");
    const double sd = 1.0 / std::sqrt(static_cast<double>(resolution));
    std::vector<double> w(resolution + 1);
    w[0] = 0.0;
    for (int k = 1; k <= resolution; ++k) w[k] = w[k - 1] + sd * rng.next_normal();
    const double w1 = w[resolution];
    for (int k = 0; k <= resolution; ++k) {
        const double s = static_cast<double>(k) / resolution;
        w[k] -= s * w1;
    }
    w[resolution] = 0.0;
    return w;
}

double ks_cdf(double x) {
    if (x <= 0.0) return 0.0;
    if (x < 1.0) {
        // theta-dual form, fast and cancellation-free for small arguments
        const double pi = 3.14159265358979323846;
        double sum = 0.0;
        for (int k = 1; k < 1000; k += 2) {
            const double term = std::exp(-k * k * pi * pi / (8.0 * x * x));
            sum += term;
            if (term < 1e-12 * (sum + 1e-300)) break;
        }
        return std::clamp(std::sqrt(2.0 * pi) / x * sum, 0.0, 1.0);
    }
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1; k < 1000; ++k) {
        const double term = std::exp(-2.0 * k * k * x * x);
        sum += sign * term;
        sign = -sign;
        if (term < 1e-12) break;
    }
    return std::clamp(1.0 - 2.0 * sum, 0.0, 1.0);
}

double ks_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("ks_quantile: p must lie in (0,1)");
    double lo = 1e-8, hi = 4.0;
    while (ks_cdf(hi) < p) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (ks_cdf(mid) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

std::string functional_name(Functional f) {
    switch (f) {
    case Functional::ks_sup: return "ks-sup";
    case Functional::cvm_integral: return "cvm-integral";
    case Functional::custom_sup: return "custom-sup";
    }
    return "?";
}

Functional functional_from_name(const std::string& name) {
    if (name == "ks-sup") return Functional::ks_sup;
    if (name == "cvm-integral") return Functional::cvm_integral;
    if (name == "custom-sup") return Functional::custom_sup;
    throw std::invalid_argument("unknown functional tag '" + name + "'");
}

double FunctionalSample::quantile(double level) const {
    if (sorted_values.empty()) throw std::invalid_argument("FunctionalSample: empty sample");
    if (!(level >= 0.0 && level <= 1.0)) {
        throw std::invalid_argument("FunctionalSample: level outside [0,1]");
    }
    const double h = level * (static_cast<double>(sorted_values.size()) - 1.0);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted_values.size() - 1);
    const double w = h - static_cast<double>(lo);
    return (1.0 - w) * sorted_values[lo] + w * sorted_values[hi];
}

double FunctionalSample::upper_p(double x) const {
    const auto it = std::lower_bound(sorted_values.begin(), sorted_values.end(), x);
    const auto count_ge = static_cast<double>(sorted_values.end() - it);
    return (1.0 + count_ge) / (static_cast<double>(sorted_values.size()) + 1.0);
}

double FunctionalSample::mean() const {
    double s = 0.0;
    for (double v : sorted_values) s += v;
    return s / static_cast<double>(sorted_values.size());
}

FunctionalSample simulate_functional(Functional tag, int resolution, long reps,
                                     std::uint64_t seed, int workers) {
    if (reps < 1000) throw std::invalid_argument("simulate_functional: reps must be >= 1000");
    if (tag == Functional::custom_sup) {
        throw std::invalid_argument("simulate_functional: custom-sup requires a Gaussian limit");
    }
    CounterRng master(seed);
    std::vector<double> values(reps);
    parallel_for(static_cast<std::size_t>(reps), workers, [&](std::size_t r) {
        CounterRng rng = master.derive(r);
        const std::vector<double> bridge = simulate_bridge(resolution, rng);
        if (tag == Functional::ks_sup) {
            double sup = 0.0;
            for (double b : bridge) sup = std::max(sup, std::fabs(b));
            values[r] = sup;
        } else {
            // Riemann sum of B^2; both endpoints are pinned to zero
            double acc = 0.0;
            for (int k = 1; k <= resolution; ++k) acc += bridge[k] * bridge[k];
            values[r] = acc / resolution;
        }
    });
    std::sort(values.begin(), values.end());
    return FunctionalSample{std::move(values)};
}

QuantileTable functional_quantiles(Functional tag, std::span<const double> levels,
                                   int resolution, long reps, std::uint64_t seed,
                                   int workers) {
    const FunctionalSample sample = simulate_functional(tag, resolution, reps, seed, workers);
    QuantileTable table;
    table.tag = tag;
    table.levels.assign(levels.begin(), levels.end());
    table.reps = reps;
    table.resolution = resolution;
    table.seed = seed;
    table.quantiles.reserve(levels.size());
    for (double l : levels) table.quantiles.push_back(sample.quantile(l));
    return table;
}

double GaussianLimit::factored_cov(std::size_t i, std::size_t j, std::size_t i2,
                                   std::size_t j2) const {
    double t = 0.0;
    for (std::size_t k = 0; k <= std::min(i, i2); ++k) t += time_factor(i, k) * time_factor(i2, k);
    double s = 0.0;
    for (std::size_t k = 0; k <= std::min(j, j2); ++k) s += space_factor(j, k) * space_factor(j2, k);
    return t * s;
}

GaussianLimit GaussianLimit::from_space_covariance(std::vector<double> s_grid, ZGrid z_grid,
                                                   Matrix space_cov) {
    if (s_grid.empty()) throw std::invalid_argument("GaussianLimit: empty s grid");
    z_grid.validate();
    if (space_cov.rows() != z_grid.size() || space_cov.cols() != z_grid.size()) {
        throw std::invalid_argument("GaussianLimit: space covariance shape mismatch");
    }
    GaussianLimit limit;
    limit.s_grid = std::move(s_grid);
    limit.z_grid = std::move(z_grid);
    limit.space_cov = std::move(space_cov);

    const std::size_t m = limit.s_grid.size();
    limit.time_cov = Matrix(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const double s1 = limit.s_grid[i], s2 = limit.s_grid[j];
            limit.time_cov(i, j) = std::min(s1, s2) - s1 * s2;
        }
    }
    JitteredFactor tf = cholesky_with_escalation(limit.time_cov);
    limit.time_factor = std::move(tf.factor);
    limit.time_jitter = tf.jitter;
    JitteredFactor sf = cholesky_with_escalation(limit.space_cov);
    limit.space_factor = std::move(sf.factor);
    limit.space_jitter = sf.jitter;
    return limit;
}

GaussianLimit build_gamma_limit(const RegressionSample& sample,
                                std::span<const double> s_grid, const ZGrid& z_grid) {
    sample.validate();
    if (s_grid.empty() || z_grid.size() == 0) {
        throw std::invalid_argument("build_gamma_limit: empty grid");
    }
    const std::size_t n = sample.n();
    const std::size_t m = z_grid.size();

    // G1(z) = mean(Y I{X <= z}); H12(z^z') = mean(Y^2 I{X <= z} I{X <= z'}).
    std::vector<double> g1(m, 0.0);
    std::vector<char> ind(n * m);
    for (std::size_t j = 0; j < m; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const bool in = z_grid.leq(sample.regressors[i], j);
            ind[i * m + j] = in;
            if (in) s += sample.responses[i];
        }
        g1[j] = s / static_cast<double>(n);
    }
    Matrix k(m, m);
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t j2 = j; j2 < m; ++j2) {
            double h12 = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (ind[i * m + j] && ind[i * m + j2]) {
                    h12 += sample.responses[i] * sample.responses[i];
                }
            }
            h12 /= static_cast<double>(n);
            const double v = h12 - g1[j] * g1[j2];
            k(j, j2) = v;
            k(j2, j) = v;
        }
    }
    return GaussianLimit::from_space_covariance(
        std::vector<double>(s_grid.begin(), s_grid.end()), z_grid, std::move(k));
}

void draw_gamma(const GaussianLimit& limit, CounterRng& rng, std::vector<double>& field,
                std::vector<double>& scratch) {
    const std::size_t m = limit.s_grid.size();
    const std::size_t z = limit.z_grid.size();
    field.assign(m * z, 0.0);
    scratch.assign(m * z, 0.0);
    // scratch = Xi * space_factor^T, with Xi an m x z array of standard normals
    std::vector<double> xi(z);
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < z; ++b) xi[b] = rng.next_normal();
        for (std::size_t j = 0; j < z; ++j) {
            double s = 0.0;
            for (std::size_t b = 0; b <= j; ++b) s += xi[b] * limit.space_factor(j, b);
            scratch[a * z + j] = s;
        }
    }
    // field = time_factor * scratch
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t a = 0; a <= i; ++a) {
            const double w = limit.time_factor(i, a);
            if (w == 0.0) continue;
            const double* src = scratch.data() + a * z;
            double* dst = field.data() + i * z;
            for (std::size_t j = 0; j < z; ++j) dst[j] += w * src[j];
        }
    }
}

FunctionalSample sample_sup_values(const GaussianLimit& limit, long reps, std::uint64_t seed,
                                   int workers) {
    if (reps < 100) throw std::invalid_argument("sample_sup: reps must be >= 100");
    CounterRng master(seed);
    std::vector<double> sups(reps);
    parallel_for(static_cast<std::size_t>(reps), workers, [&](std::size_t r) {
        CounterRng rng = master.derive(r);
        std::vector<double> field, scratch;
        draw_gamma(limit, rng, field, scratch);
        double sup = 0.0;
        for (double v : field) sup = std::max(sup, std::fabs(v));
        sups[r] = sup;
    });
    std::sort(sups.begin(), sups.end());
    return FunctionalSample{std::move(sups)};
}

QuantileTable sample_sup(const GaussianLimit& limit, long reps, std::uint64_t seed,
                         std::span<const double> levels, int workers) {
    const FunctionalSample sample = sample_sup_values(limit, reps, seed, workers);
    QuantileTable table;
    table.tag = Functional::custom_sup;
    table.levels.assign(levels.begin(), levels.end());
    table.reps = reps;
    table.resolution = static_cast<int>(limit.grid_size());
    table.seed = seed;
    for (double l : table.levels) table.quantiles.push_back(sample.quantile(l));
    return table;
}

} // namespace seqemp
