// Limiting objects: Brownian bridge functionals with their quantiles, and the
// plug-in Gaussian process for the changepoint statistic.
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "seqemp/empproc.hpp"
#include "seqemp/linalg.hpp"
#include "seqemp/rng.hpp"
#include "seqemp/series.hpp"

namespace seqemp {

// Brownian bridge values at k/resolution, k = 0..resolution, pinned to 0 at
// both endpoints: B(s) = W(s) - s W(1) from cumulative gaussian increments.
std::vector<double> simulate_bridge(int resolution, CounterRng rng);

// P(sup_s |B_0(s)| <= x) via the alternating series, truncated when a term
// drops below 1e-12; defined as 0 for x <= 0.
double ks_cdf(double x);
double ks_quantile(double p);

enum class Functional { ks_sup, cvm_integral, custom_sup };
std::string functional_name(Functional f);
Functional functional_from_name(const std::string& name);

struct QuantileTable {
    Functional tag = Functional::ks_sup;
    std::vector<double> levels;
    std::vector<double> quantiles;
    long reps = 0;
    int resolution = 0;
    std::uint64_t seed = 0;
};

// Sorted Monte Carlo sample of a limit functional; supports both quantiles and
// upper-tail p-values.
struct FunctionalSample {
    std::vector<double> sorted_values;

    [[nodiscard]] double quantile(double level) const; // type-7 interpolation
    [[nodiscard]] double upper_p(double x) const;      // (1 + #{v >= x}) / (R + 1)
    [[nodiscard]] double mean() const;
};

FunctionalSample simulate_functional(Functional tag, int resolution, long reps,
                                     std::uint64_t seed, int workers = 1);

QuantileTable functional_quantiles(Functional tag, std::span<const double> levels,
                                   int resolution, long reps, std::uint64_t seed,
                                   int workers = 1);

// Gaussian limit on a product grid (s_grid x z_grid) with separable covariance
// time_cov(i,i') * space_cov(j,j'): time_cov is the bridge covariance
// s ^ s' - s s', space_cov the plug-in threshold covariance. The factor of the
// product covariance is the Kronecker pair (time_factor, space_factor).
struct GaussianLimit {
    std::vector<double> s_grid;
    ZGrid z_grid;
    Matrix time_cov, space_cov;
    Matrix time_factor, space_factor;
    double time_jitter = 0.0, space_jitter = 0.0;

    [[nodiscard]] std::size_t grid_size() const { return s_grid.size() * z_grid.size(); }
    [[nodiscard]] double cov(std::size_t i, std::size_t j, std::size_t i2, std::size_t j2) const {
        return time_cov(i, i2) * space_cov(j, j2);
    }
    // factor * factor^T at the same index pair, for the reproduction check
    [[nodiscard]] double factored_cov(std::size_t i, std::size_t j, std::size_t i2,
                                      std::size_t j2) const;

    static GaussianLimit from_space_covariance(std::vector<double> s_grid, ZGrid z_grid,
                                               Matrix space_cov);
};

// Plug-in limit of the changepoint statistic: space covariance
// K(z, z') = mean(Y^2 I{X <= z^z'}) - G1(z) G1(z') with G1(z) = mean(Y I{X <= z}).
GaussianLimit build_gamma_limit(const RegressionSample& sample,
                                std::span<const double> s_grid, const ZGrid& z_grid);

// One draw of the limit field on the grid, written row-major (s major).
void draw_gamma(const GaussianLimit& limit, CounterRng& rng, std::vector<double>& field,
                std::vector<double>& scratch);

FunctionalSample sample_sup_values(const GaussianLimit& limit, long reps, std::uint64_t seed,
                                   int workers = 1);

QuantileTable sample_sup(const GaussianLimit& limit, long reps, std::uint64_t seed,
                         std::span<const double> levels, int workers = 1);

} // namespace seqemp
