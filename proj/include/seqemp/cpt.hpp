// Changepoint test for the regression model: the CUSUM-type process
// beta_n(s, z) over time fraction and threshold, its sup statistic, and
// plug-in critical values from the simulated Gaussian limit.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "seqemp/empproc.hpp"
#include "seqemp/limits.hpp"
#include "seqemp/series.hpp"

namespace seqemp {

struct CptConfig {
    // 0 selects all step positions i/n for process evaluation; run_cpt_test
    // replaces 0 by a tractable subgrid (the limit simulation cost grows with
    // the product grid) and echoes the grid actually used.
    int s_points = 0;
    int z_cap = 200; // per-axis cap on the observed-value threshold grid
    long gamma_reps = 10000;
    double level = 0.05;
    std::uint64_t seed = 0;
    int workers = 1;

    void validate() const;
};

// Observed-value threshold grid, subsampled to at most cap points per axis
// (always keeping the extremes; the saturated corner carries the raw CUSUM).
ZGrid observed_z_grid(const RegressionSample& sample, int cap);

// beta_n(s, z) = n^{-1/2} (sum_{i<=floor(ns)} Y_i I{X_i<=z}
//                          - floor(ns)/n * sum_{i<=n} Y_i I{X_i<=z}).
ProcessPath beta_process(const RegressionSample& sample, const CptConfig& config);

// alpha_n(s, z) with a supplied centering table over the z grid (simulation
// studies only; population centerings are unknown on real data).
ProcessPath alpha_process(const RegressionSample& sample, const Centering& centering,
                          const CptConfig& config);

struct CptReport {
    std::size_t n = 0;
    std::size_t d = 1;
    double statistic = 0.0;
    double critical = 0.0;
    double p_value = 1.0;
    bool reject = false;
    double argmax_s = 0.0;
    std::vector<double> argmax_z;
    double cvm_secondary = 0.0; // diagnostic integral statistic, no calibrated critical value
    double level = 0.05;
    std::size_t s_grid_size = 0, z_grid_size = 0;
    long gamma_reps = 0;
    double time_jitter = 0.0, space_jitter = 0.0;
    std::string critical_value_kind = "plug-in asymptotic";
    std::uint64_t seed = 0;
};

CptReport run_cpt_test(const RegressionSample& sample, const CptConfig& config);

} // namespace seqemp
