#include "seqemp/cpt.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace seqemp {

void CptConfig::validate() const {
    if (!(level > 0.0 && level < 1.0)) {
        throw std::invalid_argument("CptConfig: level must lie in (0,1)");
    }
    if (gamma_reps < 100) throw std::invalid_argument("CptConfig: reps must be >= 100");
    if (s_points < 0 || z_cap < 1) throw std::invalid_argument("CptConfig: bad grid policy");
}

namespace {

std::vector<double> subsample_sorted(std::vector<double> sorted_unique, int cap) {
    const std::size_t m = sorted_unique.size();
    if (cap <= 0 || m <= static_cast<std::size_t>(cap)) return sorted_unique;
    std::vector<double> out;
    out.reserve(cap);
    for (int k = 0; k < cap; ++k) {
        // evenly spaced order statistics, endpoints included
        const std::size_t idx = static_cast<std::size_t>(
            std::llround(static_cast<double>(k) * static_cast<double>(m - 1) / (cap - 1)));
        out.push_back(sorted_unique[idx]);
    }
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<double> s_grid_for(std::size_t n, int s_points) {
    std::vector<double> s;
    if (s_points <= 0 || static_cast<std::size_t>(s_points) >= n + 1) {
        s.reserve(n + 1);
        for (std::size_t i = 0; i <= n; ++i) {
            s.push_back(static_cast<double>(i) / static_cast<double>(n));
        }
    } else {
        // subset of the step positions i/n, endpoints included
        s.reserve(s_points);
        for (int k = 0; k < s_points; ++k) {
            const auto i = static_cast<std::size_t>(
                std::llround(static_cast<double>(k) * static_cast<double>(n) / (s_points - 1)));
            s.push_back(static_cast<double>(i) / static_cast<double>(n));
        }
        s.erase(std::unique(s.begin(), s.end()), s.end());
    }
    return s;
}

} // namespace

ZGrid observed_z_grid(const RegressionSample& sample, int cap) {
    sample.validate();
    if (sample.d == 1) {
        std::vector<double> vals;
        vals.reserve(sample.n());
        for (const auto& x : sample.regressors) vals.push_back(x[0]);
        std::sort(vals.begin(), vals.end());
        vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
        return ZGrid::scalar(subsample_sorted(std::move(vals), cap));
    }
    // product of per-axis observed values, each axis capped
    std::vector<std::vector<double>> axes(sample.d);
    for (std::size_t k = 0; k < sample.d; ++k) {
        std::vector<double> vals;
        vals.reserve(sample.n());
        for (const auto& x : sample.regressors) vals.push_back(x[k]);
        std::sort(vals.begin(), vals.end());
        vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
        axes[k] = subsample_sorted(std::move(vals), cap);
    }
    std::vector<std::vector<double>> pts;
    std::vector<std::size_t> idx(sample.d, 0);
    while (true) {
        std::vector<double> p(sample.d);
        for (std::size_t k = 0; k < sample.d; ++k) p[k] = axes[k][idx[k]];
        pts.push_back(std::move(p));
        std::size_t k = sample.d;
        while (k > 0) {
            --k;
            if (++idx[k] < axes[k].size()) break;
            idx[k] = 0;
            if (k == 0) {
                std::sort(pts.begin(), pts.end());
                return ZGrid::multi(std::move(pts));
            }
        }
    }
}

ProcessPath beta_process(const RegressionSample& sample, const CptConfig& config) {
    config.validate();
    sample.validate();
    const std::size_t n = sample.n();
    if (n < 2) throw std::invalid_argument("beta_process: n must be at least 2");

    const ZGrid z = observed_z_grid(sample, config.z_cap);
    const std::vector<double> s = s_grid_for(n, config.s_points);
    if (z.size() == 0 || s.empty()) throw std::invalid_argument("beta_process: empty grids");

    ProcessPath path;
    path.s_grid = s;
    path.z_grid = z;
    path.n = n;
    path.values = Matrix(s.size(), z.size());

    const double root_n = std::sqrt(static_cast<double>(n));
    std::vector<double> prefix(n + 1);
    for (std::size_t j = 0; j < z.size(); ++j) {
        prefix[0] = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double v = z.leq(sample.regressors[i], j) ? sample.responses[i] : 0.0;
            prefix[i + 1] = prefix[i] + v;
        }
        const double total = prefix[n];
        for (std::size_t si = 0; si < s.size(); ++si) {
            const auto k = static_cast<std::size_t>(
                std::floor(s[si] * static_cast<double>(n)));
            const double kk = static_cast<double>(std::min(k, n));
            path.values(si, j) =
                (prefix[std::min(k, n)] - kk / static_cast<double>(n) * total) / root_n;
        }
    }
    return path;
}

ProcessPath alpha_process(const RegressionSample& sample, const Centering& centering,
                          const CptConfig& config) {
    config.validate();
    sample.validate();
    const ZGrid z = observed_z_grid(sample, config.z_cap);
    if (centering.mode == Centering::Mode::table && centering.table.size() != z.size()) {
        throw std::invalid_argument("alpha_process: centering table missing a grid point");
    }
    ThresholdFamily family;
    family.kind = ThresholdFamily::Kind::response_indicator;
    family.z_grid = z;
    family.centering = centering;
    const std::vector<double> s = s_grid_for(sample.n(), config.s_points);
    return eval_process(family, EmpSample::regression(sample), s);
}

CptReport run_cpt_test(const RegressionSample& sample, const CptConfig& config) {
    config.validate();
    sample.validate();
    const std::size_t n = sample.n();
    if (n < 20) throw std::invalid_argument("run_cpt_test: n must be at least 20");
    bool all_zero = true;
    for (double y : sample.responses) {
        if (y != 0.0) { all_zero = false; break; }
    }
    if (all_zero) throw DegenerateDataError("run_cpt_test: all responses are zero");

    // A product grid of every step position times every observed threshold
    // makes the limit simulation intractable; 0 selects a moderate default.
    CptConfig effective = config;
    if (effective.s_points == 0) effective.s_points = 33;
    if (effective.z_cap > 64) effective.z_cap = 64;

    const ProcessPath beta = beta_process(sample, effective);
    const std::size_t ns = beta.s_grid.size(), nz = beta.z_grid.size();

    double sup = -1.0;
    std::size_t arg_si = 0, arg_zj = 0;
    for (std::size_t si = 0; si < ns; ++si) {
        for (std::size_t j = 0; j < nz; ++j) {
            const double a = std::fabs(beta.values(si, j));
            if (a > sup) {
                sup = a;
                arg_si = si;
                arg_zj = j;
            }
        }
    }

    // secondary integral diagnostic: mean over s of the z-average of beta^2
    // weighted by the empirical threshold-bucket masses
    std::vector<double> bucket_mass(nz, 0.0);
    {
        std::vector<double> cum(nz, 0.0);
        for (std::size_t j = 0; j < nz; ++j) {
            std::size_t cnt = 0;
            for (std::size_t i = 0; i < n; ++i) {
                cnt += beta.z_grid.leq(sample.regressors[i], j) ? 1 : 0;
            }
            cum[j] = static_cast<double>(cnt) / static_cast<double>(n);
        }
        for (std::size_t j = 0; j < nz; ++j) {
            bucket_mass[j] = cum[j] - (j > 0 && beta.z_grid.dim == 1 ? cum[j - 1] : 0.0);
        }
    }
    double cvm = 0.0;
    for (std::size_t si = 0; si < ns; ++si) {
        double row = 0.0;
        for (std::size_t j = 0; j < nz; ++j) {
            row += bucket_mass[j] * beta.values(si, j) * beta.values(si, j);
        }
        cvm += row;
    }
    cvm /= static_cast<double>(ns);

    const GaussianLimit limit = build_gamma_limit(sample, beta.s_grid, beta.z_grid);
    const FunctionalSample sups = sample_sup_values(
        limit, effective.gamma_reps, CounterRng(effective.seed).derive(201).key(),
        effective.workers);

    CptReport report;
    report.n = n;
    report.d = sample.d;
    report.statistic = sup;
    report.critical = sups.quantile(1.0 - effective.level);
    report.p_value = sups.upper_p(sup);
    report.reject = report.statistic > report.critical;
    report.argmax_s = beta.s_grid[arg_si];
    report.argmax_z = beta.z_grid.dim == 1
                          ? std::vector<double>{beta.z_grid.scalar_at(arg_zj)}
                          : beta.z_grid.mpts[arg_zj];
    report.cvm_secondary = cvm;
    report.level = effective.level;
    report.s_grid_size = ns;
    report.z_grid_size = nz;
    report.gamma_reps = effective.gamma_reps;
    report.time_jitter = limit.time_jitter;
    report.space_jitter = limit.space_jitter;
    report.seed = effective.seed;
    return report;
}

} // namespace seqemp
