#include "seqemp/setar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace seqemp {

RegimeMeans regime_means(const UnivariateSeries& series, double z) {
    series.validate();
    const std::size_t n = series.n;
    std::size_t count1 = 0;
    double sum1 = 0.0, sum2 = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
        if (series.lag(i) <= z) {
            ++count1;
            sum1 += series.response(i);
        } else {
            sum2 += series.response(i);
        }
    }
    RegimeMeans rm;
    rm.f_hat = static_cast<double>(count1) / static_cast<double>(n);
    rm.mu1 = count1 > 0 ? sum1 / static_cast<double>(count1)
                        : std::numeric_limits<double>::quiet_NaN();
    rm.mu2 = count1 < n ? sum2 / static_cast<double>(n - count1)
                        : std::numeric_limits<double>::quiet_NaN();
    return rm;
}

double t_at(const UnivariateSeries& series, double z) {
    const std::size_t n = series.n;
    std::size_t count1 = 0;
    double sum1 = 0.0, sum_all = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
        const double y = series.response(i);
        sum_all += y;
        if (series.lag(i) <= z) {
            ++count1;
            sum1 += y;
        }
    }
    const double f = static_cast<double>(count1) / static_cast<double>(n);
    // sum_i Y_i (I - F_hat) = sum1 - F_hat * sum_all
    return (sum1 - f * sum_all) / std::sqrt(static_cast<double>(n));
}

ProcessPath t_process(const UnivariateSeries& series) {
    series.validate();
    if (series.n < 2) throw std::invalid_argument("t_process: n must be at least 2");
    const std::size_t n = series.n;

    // T_n is a right-continuous step map of z with jumps at the lag values;
    // evaluating at the sorted unique lags plus sentinels is exact.
    std::vector<double> lags(series.values.begin(), series.values.begin() + n);
    const std::vector<double> grid = jump_grid(lags);

    // Sort (lag, response) pairs once; T at grid point z uses the prefix of
    // responses whose lag is <= z.
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return lags[a] < lags[b]; });

    std::vector<double> sorted_lags(n), prefix_resp(n + 1);
    double sum_all = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        sorted_lags[k] = lags[order[k]];
        const double y = series.response(order[k] + 1);
        prefix_resp[k + 1] = prefix_resp[k] + y;
        sum_all += y;
    }

    ProcessPath path;
    path.s_grid = {1.0};
    path.z_grid = ZGrid::scalar(grid);
    path.n = n;
    path.values = Matrix(1, grid.size());
    const double root_n = std::sqrt(static_cast<double>(n));
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const auto k = static_cast<std::size_t>(
            std::upper_bound(sorted_lags.begin(), sorted_lags.end(), grid[j]) -
            sorted_lags.begin());
        const double f = static_cast<double>(k) / static_cast<double>(n);
        path.values(0, j) = (prefix_resp[k] - f * sum_all) / root_n;
    }
    return path;
}

double sigma2_hat(const UnivariateSeries& series) {
    series.validate();
    if (series.n < 2) throw std::invalid_argument("sigma2_hat: n must be at least 2");
    const std::size_t n = series.n;
    double mean = 0.0;
    for (std::size_t i = 1; i <= n; ++i) mean += series.response(i);
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
        const double d = series.response(i) - mean;
        ss += d * d;
    }
    const double v = ss / static_cast<double>(n);
    if (!(v > 0.0)) throw DegenerateDataError("sigma2_hat: series is constant");
    return v;
}

void SetarTestConfig::validate() const {
    if (!(level > 0.0 && level < 1.0)) {
        throw std::invalid_argument("SetarTestConfig: level must lie in (0,1)");
    }
    if (cvm_reps < 1000) throw std::invalid_argument("SetarTestConfig: cvm_reps must be >= 1000");
    if (bridge_resolution < 2) {
        throw std::invalid_argument("SetarTestConfig: bridge resolution must be >= 2");
    }
    if (weight_table) {
        if (weight_table->first.size() != weight_table->second.size() ||
            weight_table->first.empty()) {
            throw std::invalid_argument("SetarTestConfig: weight table shape mismatch");
        }
    }
}

SetarReport run_setar_test(const UnivariateSeries& series, const SetarTestConfig& config,
                           const FunctionalSample* cvm_table) {
    config.validate();
    series.validate();
    if (series.n < 10) throw std::invalid_argument("run_setar_test: n must be at least 10");

    const double s2 = sigma2_hat(series);
    const double sigma = std::sqrt(s2);
    const std::size_t n = series.n;

    // One sorted pass gives the exact sup over the jump grid and the
    // empirical-measure integral statistic (each lag value with multiplicity).
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return series.lag(a + 1) < series.lag(b + 1);
    });
    std::vector<double> t_sorted(n);
    {
        double sum_all = 0.0;
        for (std::size_t i = 1; i <= n; ++i) sum_all += series.response(i);
        const double root_n = std::sqrt(static_cast<double>(n));
        double prefix = 0.0;
        std::size_t k = 0;
        while (k < n) {
            std::size_t k2 = k;
            // advance across ties so the indicator uses <=
            while (k2 < n &&
                   series.lag(order[k2] + 1) == series.lag(order[k] + 1)) {
                prefix += series.response(order[k2] + 1);
                ++k2;
            }
            const double f = static_cast<double>(k2) / static_cast<double>(n);
            const double t = (prefix - f * sum_all) / root_n;
            for (std::size_t j = k; j < k2; ++j) t_sorted[j] = t;
            k = k2;
        }
    }
    double sup = 0.0;
    double argmax_z = series.lag(order[0] + 1);
    double cvm_sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double a = std::fabs(t_sorted[k]);
        if (a > sup) {
            sup = a;
            argmax_z = series.lag(order[k] + 1);
        }
        cvm_sum += t_sorted[k] * t_sorted[k];
    }

    SetarReport report;
    report.n = series.n;
    report.sigma2 = s2;
    report.level = config.level;
    report.argmax_z = argmax_z;
    report.seed = config.seed;

    const bool want_ks = config.statistic != SetarTestConfig::Statistic::cvm;
    const bool want_cvm = config.statistic != SetarTestConfig::Statistic::ks;

    if (want_ks) {
        StatisticResult ks;
        ks.value = sup / sigma;
        if (config.ks_source == SetarTestConfig::KsSource::series) {
            ks.critical = ks_quantile(1.0 - config.level);
            ks.p_value = 1.0 - ks_cdf(ks.value);
            report.ks_quantile_source = "series";
        } else {
            const FunctionalSample mc = simulate_functional(
                Functional::ks_sup, config.bridge_resolution, config.cvm_reps,
                CounterRng(config.seed).derive(101).key(), config.workers);
            ks.critical = mc.quantile(1.0 - config.level);
            ks.p_value = mc.upper_p(ks.value);
            report.ks_quantile_source = "monte-carlo";
        }
        ks.reject = ks.value > ks.critical;
        report.ks = ks;
    }

    if (want_cvm) {
        StatisticResult cvm;
        if (config.weight_table) {
            // user-supplied weighting: non-pivotal, critical values still come
            // from the pivotal table, so the report flags the weighting
            report.pivotal_weighting = false;
            double acc = 0.0;
            const auto& [grid, weights] = *config.weight_table;
            for (std::size_t k = 0; k < grid.size(); ++k) {
                const double t = t_at(series, grid[k]);
                acc += weights[k] * t * t;
            }
            cvm.value = acc / s2;
        } else {
            // empirical-measure weighting over the lagged values
            cvm.value = cvm_sum / (s2 * static_cast<double>(n));
        }
        FunctionalSample local;
        const FunctionalSample* table = cvm_table;
        if (table == nullptr) {
            local = simulate_functional(Functional::cvm_integral, config.bridge_resolution,
                                        config.cvm_reps,
                                        CounterRng(config.seed).derive(102).key(),
                                        config.workers);
            table = &local;
        }
        cvm.critical = table->quantile(1.0 - config.level);
        cvm.p_value = table->upper_p(cvm.value);
        cvm.reject = cvm.value > cvm.critical;
        report.cvm = cvm;
    }
    return report;
}

} // namespace seqemp
