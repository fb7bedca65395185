// Threshold test for the two-regime mean model: regime-mean estimators, the
// weighted difference process T_n(z), the sup and integral statistics, and
// p-values against the pivotal Brownian bridge limits.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "seqemp/empproc.hpp"
#include "seqemp/limits.hpp"
#include "seqemp/series.hpp"

namespace seqemp {

struct RegimeMeans {
    double mu1 = 0.0;   // NaN when regime 1 is empty
    double mu2 = 0.0;   // NaN when regime 2 is empty
    double f_hat = 0.0; // fraction of lagged values <= z
};

// mu1(z), mu2(z) and F_hat(z) from the lagged pairs (Y_{i-1}, Y_i), i = 1..n.
RegimeMeans regime_means(const UnivariateSeries& series, double z);

// T_n(z) = n^{-1/2} sum_i Y_i (I{Y_{i-1} <= z} - F_hat(z)); equals
// sqrt(n) F_hat (1 - F_hat) (mu1 - mu2) wherever both regimes are nonempty,
// and 0 where F_hat is 0 or 1.
double t_at(const UnivariateSeries& series, double z);

// T_n evaluated exactly over the lag jump grid (s fixed at 1).
ProcessPath t_process(const UnivariateSeries& series);

// sigma^2 estimate: sample variance of Y_1..Y_n. Throws DegenerateDataError
// for a constant series.
double sigma2_hat(const UnivariateSeries& series);

struct SetarTestConfig {
    enum class Statistic { ks, cvm, both };
    Statistic statistic = Statistic::both;
    double level = 0.05;
    enum class KsSource { series, monte_carlo };
    KsSource ks_source = KsSource::series;
    long cvm_reps = 100000;
    int bridge_resolution = 1024;
    std::uint64_t seed = 0;
    int workers = 1;
    // Optional user weighting for the integral statistic: (grid, weights).
    // The default empirical-measure weighting keeps the limit pivotal.
    std::optional<std::pair<std::vector<double>, std::vector<double>>> weight_table;

    void validate() const;
};

struct StatisticResult {
    double value = 0.0;
    double critical = 0.0;
    double p_value = 1.0;
    bool reject = false;
};

struct SetarReport {
    std::size_t n = 0;
    double sigma2 = 0.0;
    double level = 0.05;
    std::optional<StatisticResult> ks;
    std::optional<StatisticResult> cvm;
    double argmax_z = 0.0; // z attaining sup |T_n|
    bool pivotal_weighting = true;
    std::string ks_quantile_source;
    std::uint64_t seed = 0;

    [[nodiscard]] bool any_rejection() const {
        return (ks && ks->reject) || (cvm && cvm->reject);
    }
};

// Runs the configured statistics; a prebuilt Monte Carlo sample of the
// integral functional can be shared across calls (size/power loops).
SetarReport run_setar_test(const UnivariateSeries& series, const SetarTestConfig& config,
                           const FunctionalSample* cvm_table = nullptr);

} // namespace seqemp
