// Monte Carlo verification harness: partial-sum moment scaling, the
// equicontinuity modulus of the empirical process over d-close threshold
// pairs, and finite-dimensional covariance checks for the threshold test
// process.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "seqemp/empproc.hpp"
#include "seqemp/law.hpp"
#include "seqemp/linalg.hpp"
#include "seqemp/series.hpp"

namespace seqemp {

struct MomentScalingConfig {
    enum class Generator { zero, gaussian, mds1 };
    Generator generator = Generator::gaussian;
    double scale = 1.0; // generator scale; tau for the gaussian catalog entry
    int q = 2;          // even moment order
    double tau = 1.0;   // moment cap in the ratio denominator max(n^{-1/2}, tau)
    std::vector<long> n_list = {64, 256, 1024, 4096};
    long reps = 5000;
    std::uint64_t seed = 0;
    int workers = 1;

    void validate() const;
    [[nodiscard]] std::string generator_name() const;
};

struct MomentScalingReport {
    std::vector<long> n_list;
    std::vector<double> m_hat;   // (mean |n^{-1/2} sum Z|^Q)^{1/Q} per n
    std::vector<double> ratios;  // m_hat / max(n^{-1/2}, tau)
    double slope = 0.0;          // least-squares slope of log ratio vs log n
};

MomentScalingReport moment_scaling(const MomentScalingConfig& config);

struct ModulusConfig {
    Law law = Law::uniform01();
    std::vector<double> z_grid; // empty selects the default structured grid
    int q = 4;
    double gamma = 2.0;
    std::vector<double> deltas = {0.9, 0.6, 0.3, 0.15}; // strictly decreasing
    std::vector<long> n_list = {256, 4096};
    long reps = 500;
    std::uint64_t seed = 0;
    int workers = 1;

    void validate() const;
};

// Default threshold grid for the modulus experiment: coarse quantile levels
// plus tight clusters, so the configured delta bands each contain pairs (the
// smallest delta is intentionally below the grid resolution).
std::vector<double> default_modulus_grid(const Law& law);

struct ModulusReport {
    std::vector<double> deltas;
    std::vector<long> n_list;
    Matrix m;                       // rows: n, cols: delta
    std::vector<bool> empty_pairs;  // per delta
    std::vector<std::size_t> pair_counts;
    double grid_min_d = 0.0, grid_max_d = 0.0;
    std::size_t grid_size = 0;
    // standard error of m via the delta method, same shape as m
    Matrix m_se;
};

ModulusReport equicontinuity_modulus(const ModulusConfig& config);

struct FidiConfig {
    long n = 1000;
    long reps = 2000;
    double z1 = 0.0, z2 = 0.0;
    double sigma = 1.0; // H0 generator: Y_t = sigma * eps_t, i.i.d. gaussian
    std::uint64_t seed = 0;
    int workers = 1;
};

struct FidiReport {
    // entries ordered (z1,z1), (z1,z2), (z2,z2)
    double empirical[3] = {0, 0, 0};
    double target[3] = {0, 0, 0};
    double mc_se[3] = {0, 0, 0};
    double max_abs_deviation = 0.0;
    double max_dev_over_se = 0.0;
};

// Monte Carlo covariance of (T_n(z1), T_n(z2)) under the i.i.d. gaussian null
// against sigma^2 (F(z1 ^ z2) - F(z1) F(z2)).
FidiReport fidi_check(const FidiConfig& config);

} // namespace seqemp
