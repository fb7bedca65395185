#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "seqemp/cpt.hpp"
#include "seqemp/rng.hpp"
#include "seqemp/seriesgen.hpp"

using namespace seqemp;

namespace {

RegressionSample sample_of(std::vector<double> y, std::vector<double> x) {
    RegressionSample s;
    s.d = 1;
    s.responses = std::move(y);
    for (double v : x) s.regressors.push_back({v});
    return s;
}

RegressionSample random_sample(std::size_t n, std::uint64_t seed, double mean = 0.0) {
    CounterRng rng(seed);
    RegressionSample s;
    s.d = 1;
    for (std::size_t i = 0; i < n; ++i) {
        s.regressors.push_back({rng.next_unit()});
        s.responses.push_back(mean + rng.next_normal());
    }
    return s;
}

// beta at an arbitrary time fraction, reimplemented in place as the oracle
double beta_oracle(const RegressionSample& s, double time_fraction, double z) {
    const std::size_t n = s.n();
    const auto k = static_cast<std::size_t>(std::floor(time_fraction * n));
    double head = 0.0, total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double v = s.regressors[i][0] <= z ? s.responses[i] : 0.0;
        total += v;
        if (i < k) head += v;
    }
    return (head - static_cast<double>(k) / static_cast<double>(n) * total) /
           std::sqrt(static_cast<double>(n));
}

} // namespace

TEST_CASE("beta hand evaluation at n = 2") {
    const auto s = sample_of({1.0, 3.0}, {0.1, 0.9});
    CptConfig cfg;
    const auto path = beta_process(s, cfg);
    // s grid is {0, 1/2, 1}; z grid the observed {0.1, 0.9}; thresholds at
    // 0.5 and 0.1 index the same bucket
    REQUIRE(path.s_grid.size() == 3);
    REQUIRE(path.z_grid.size() == 2);
    CHECK(path.value(1, 0) == doctest::Approx(0.5 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(beta_oracle(s, 0.5, 0.5) == doctest::Approx(0.5 / std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("beta vanishes identically at s = 0 and s = 1") {
    const auto s = random_sample(37, 11);
    CptConfig cfg;
    const auto path = beta_process(s, cfg);
    const std::size_t last = path.s_grid.size() - 1;
    for (std::size_t j = 0; j < path.z_grid.size(); ++j) {
        CHECK(path.value(0, j) == 0.0);
        CHECK(path.value(last, j) == 0.0);
    }
}

TEST_CASE("saturated threshold face reduces to the raw response cusum") {
    const auto s = random_sample(50, 12, 1.0);
    CptConfig cfg;
    const auto path = beta_process(s, cfg);
    const std::size_t jmax = path.z_grid.size() - 1; // largest observed value
    for (std::size_t si = 0; si < path.s_grid.size(); ++si) {
        const std::size_t k = static_cast<std::size_t>(
            std::floor(path.s_grid[si] * static_cast<double>(s.n())));
        double head = 0.0, total = 0.0;
        for (std::size_t i = 0; i < s.n(); ++i) {
            total += s.responses[i];
            if (i < k) head += s.responses[i];
        }
        const double cusum =
            (head - static_cast<double>(k) / static_cast<double>(s.n()) * total) /
            std::sqrt(static_cast<double>(s.n()));
        CHECK(path.value(si, jmax) == doctest::Approx(cusum).epsilon(1e-12));
    }
}

TEST_CASE("negating responses negates beta and preserves the statistic") {
    const auto s = random_sample(60, 13);
    auto neg = s;
    for (auto& y : neg.responses) y = -y;
    CptConfig cfg;
    cfg.gamma_reps = 400;
    cfg.seed = 5;
    const auto p1 = beta_process(s, cfg);
    const auto p2 = beta_process(neg, cfg);
    for (std::size_t i = 0; i < p1.s_grid.size(); ++i) {
        for (std::size_t j = 0; j < p1.z_grid.size(); ++j) {
            CHECK(p2.value(i, j) == doctest::Approx(-p1.value(i, j)).epsilon(1e-14));
        }
    }
    const auto r1 = run_cpt_test(s, cfg);
    const auto r2 = run_cpt_test(neg, cfg);
    CHECK(r1.statistic == doctest::Approx(r2.statistic).epsilon(1e-12));
    CHECK(r1.critical == doctest::Approx(r2.critical).epsilon(1e-12));
}

TEST_CASE("permuting observations conserves the threshold totals") {
    const auto s = random_sample(40, 14);
    auto perm = s;
    std::reverse(perm.responses.begin(), perm.responses.end());
    std::reverse(perm.regressors.begin(), perm.regressors.end());
    for (double z : {0.2, 0.5, 0.8}) {
        double t1 = 0.0, t2 = 0.0;
        for (std::size_t i = 0; i < s.n(); ++i) {
            if (s.regressors[i][0] <= z) t1 += s.responses[i];
            if (perm.regressors[i][0] <= z) t2 += perm.responses[i];
        }
        CHECK(t1 == doctest::Approx(t2).epsilon(1e-12));
    }
}

TEST_CASE("alpha process with a centering table and the decomposition") {
    const auto s = random_sample(50, 15);
    CptConfig cfg;
    SUBCASE("zero responses with zero centering vanish") {
        auto zero = s;
        for (auto& y : zero.responses) y = 0.0;
        const ZGrid grid = observed_z_grid(zero, cfg.z_cap);
        const Centering c = Centering::from_table(std::vector<double>(grid.size(), 0.0));
        const auto path = alpha_process(zero, c, cfg);
        for (std::size_t i = 0; i < path.s_grid.size(); ++i) {
            for (std::size_t j = 0; j < path.z_grid.size(); ++j) {
                CHECK(path.value(i, j) == 0.0);
            }
        }
    }
    SUBCASE("alpha matches the generic evaluator bitwise") {
        const ZGrid grid = observed_z_grid(s, cfg.z_cap);
        const Centering c = Centering::from_table(std::vector<double>(grid.size(), 0.1));
        const auto a = alpha_process(s, c, cfg);
        ThresholdFamily fam;
        fam.kind = ThresholdFamily::Kind::response_indicator;
        fam.z_grid = grid;
        fam.centering = c;
        std::vector<double> sg;
        for (std::size_t i = 0; i <= s.n(); ++i) {
            sg.push_back(static_cast<double>(i) / static_cast<double>(s.n()));
        }
        const auto b = eval_process(fam, EmpSample::regression(s), sg);
        REQUIRE(a.s_grid == b.s_grid);
        for (std::size_t i = 0; i < a.s_grid.size(); ++i) {
            for (std::size_t j = 0; j < a.z_grid.size(); ++j) {
                CHECK(a.value(i, j) == b.value(i, j));
            }
        }
    }
    SUBCASE("beta decomposes into alpha minus s alpha(1) plus a floor term") {
        const ZGrid grid = observed_z_grid(s, cfg.z_cap);
        // population centering is irrelevant for the identity; any table works
        const Centering c = Centering::from_table(std::vector<double>(grid.size(), 0.25));
        ThresholdFamily fam;
        fam.kind = ThresholdFamily::Kind::response_indicator;
        fam.z_grid = grid;
        fam.centering = c;
        const std::vector<double> off_grid{0.137, 0.37, 0.613, 0.881, 1.0};
        const auto alpha = eval_process(fam, EmpSample::regression(s), off_grid);
        const std::size_t last = off_grid.size() - 1;
        for (std::size_t si = 0; si + 1 < off_grid.size(); ++si) {
            const double sv = off_grid[si];
            const double floor_frac =
                std::floor(sv * static_cast<double>(s.n())) / static_cast<double>(s.n());
            for (std::size_t j = 0; j < grid.size(); ++j) {
                const double beta = beta_oracle(s, sv, grid.dim == 1 ? grid.scalar_at(j) : 0.0);
                const double decomposition =
                    alpha.value(si, j) - sv * alpha.value(last, j) +
                    (sv - floor_frac) * alpha.value(last, j);
                CHECK(beta == doctest::Approx(decomposition).epsilon(1e-10));
                // the residual obeys the discretization bound
                const double residual = beta - (alpha.value(si, j) - sv * alpha.value(last, j));
                CHECK(std::fabs(residual) <=
                      (1.0 / static_cast<double>(s.n())) * std::fabs(alpha.value(last, j)) + 1e-12);
            }
        }
    }
    SUBCASE("missing centering entries are detected") {
        const Centering c = Centering::from_table({0.0});
        CHECK_THROWS_AS(alpha_process(s, c, cfg), std::invalid_argument);
    }
}

TEST_CASE("plug-in covariance at the saturated corner equals the response variance") {
    const auto s = random_sample(45, 16, 0.7);
    const double zmax = [&] {
        double m = s.regressors[0][0];
        for (const auto& x : s.regressors) m = std::max(m, x[0]);
        return m;
    }();
    const std::vector<double> sg{0.5};
    const auto limit = build_gamma_limit(s, sg, ZGrid::scalar({zmax}));
    double mean = 0.0, mean2 = 0.0;
    for (double y : s.responses) {
        mean += y;
        mean2 += y * y;
    }
    mean /= s.n();
    mean2 /= s.n();
    CHECK(limit.cov(0, 0, 0, 0) ==
          doctest::Approx(0.25 * (mean2 - mean * mean)).epsilon(1e-12));
}

TEST_CASE("changepoint test report wiring") {
    CptConfig cfg;
    cfg.gamma_reps = 500;
    cfg.seed = 3;
    SUBCASE("null data produce a coherent report") {
        const auto s = random_sample(80, 17);
        const auto r = run_cpt_test(s, cfg);
        CHECK(r.n == 80);
        CHECK(r.p_value > 0.0);
        CHECK(r.p_value <= 1.0);
        CHECK(r.reject == (r.statistic > r.critical));
        CHECK(r.argmax_s >= 0.0);
        CHECK(r.argmax_s <= 1.0);
        CHECK(r.s_grid_size > 2);
        CHECK(r.z_grid_size > 2);
    }
    SUBCASE("a large mean shift is detected and located") {
        RegressionSpec spec;
        spec.n = 300;
        spec.mean_fn = FnDescriptor::constant(0.0);
        spec.mean_fn_after = FnDescriptor::constant(2.0);
        spec.theta = 0.5;
        const auto s = gen_regression(spec, 19);
        const auto r = run_cpt_test(s, cfg);
        CHECK(r.reject);
        CHECK(r.argmax_s > 0.25);
        CHECK(r.argmax_s < 0.75);
    }
    SUBCASE("guards") {
        CHECK_THROWS_AS(run_cpt_test(random_sample(10, 18), cfg), std::invalid_argument);
        auto zeros = random_sample(30, 19);
        for (auto& y : zeros.responses) y = 0.0;
        CHECK_THROWS_AS(run_cpt_test(zeros, cfg), DegenerateDataError);
        CptConfig bad = cfg;
        bad.gamma_reps = 10;
        CHECK_THROWS_AS(run_cpt_test(random_sample(30, 20), bad), std::invalid_argument);
    }
}

TEST_CASE("multivariate thresholds flow through the changepoint machinery") {
    CounterRng rng(21);
    RegressionSample s;
    s.d = 2;
    for (int i = 0; i < 60; ++i) {
        s.regressors.push_back({rng.next_unit(), rng.next_unit()});
        s.responses.push_back(rng.next_normal());
    }
    CptConfig cfg;
    cfg.z_cap = 5;
    cfg.gamma_reps = 300;
    cfg.seed = 9;
    const auto path = beta_process(s, cfg);
    CHECK(path.z_grid.dim == 2);
    CHECK(path.z_grid.size() <= 25);
    const auto r = run_cpt_test(s, cfg);
    CHECK(r.argmax_z.size() == 2);
    CHECK(r.p_value > 0.0);
}
