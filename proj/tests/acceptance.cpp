// Acceptance suite: one pass/fail line per criterion. Every criterion is a
// pure function of (master seed, worker count) returning a digest of its key
// statistics; the final criterion re-executes the others with a different
// worker count and demands bit-identical digests.
//
// Usage: acceptance [--seed S] [--workers K] [--criterion N]

#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "seqemp/cpt.hpp"
#include "seqemp/empproc.hpp"
#include "seqemp/entropy.hpp"
#include "seqemp/limits.hpp"
#include "seqemp/parallel.hpp"
#include "seqemp/rng.hpp"
#include "seqemp/seriesgen.hpp"
#include "seqemp/setar.hpp"
#include "seqemp/verify.hpp"

using namespace seqemp;

namespace {

struct CriterionResult {
    bool pass = false;
    std::string detail;
    std::vector<double> digest;
};

struct Check {
    bool ok = true;
    std::string notes;

    void require(bool cond, const std::string& what) {
        ok = ok && cond;
        if (!notes.empty()) notes += "; ";
        notes += what + (cond ? " ok" : " FAILED");
    }
};

// ---------------------------------------------------------------- criterion 1
// SETAR size under the i.i.d. gaussian null: n = 500, 2000 replications,
// level 0.05; both rejection rates inside [0.035, 0.065].
CriterionResult criterion1(std::uint64_t seed, int workers) {
    const int n = 500;
    const long reps = 2000;
    CounterRng master = CounterRng(seed).derive(1);

    const FunctionalSample cvm_table = simulate_functional(
        Functional::cvm_integral, 1024, 100000, master.derive(999).key(), workers);

    SetarTestConfig cfg;
    cfg.statistic = SetarTestConfig::Statistic::both;
    cfg.level = 0.05;
    cfg.seed = seed;

    std::vector<char> rej_ks(reps), rej_cvm(reps);
    parallel_for(reps, workers, [&](std::size_t r) {
        const auto series =
            gen_setar(n, 0.0, 0.0, 0.0, Innovation::gaussian(1.0), master.derive(r).key());
        const auto report = run_setar_test(series, cfg, &cvm_table);
        rej_ks[r] = report.ks->reject ? 1 : 0;
        rej_cvm[r] = report.cvm->reject ? 1 : 0;
    });
    double ks_rate = 0.0, cvm_rate = 0.0;
    for (long r = 0; r < reps; ++r) {
        ks_rate += rej_ks[r];
        cvm_rate += rej_cvm[r];
    }
    ks_rate /= reps;
    cvm_rate /= reps;

    Check c;
    c.require(ks_rate >= 0.035 && ks_rate <= 0.065, "KS size in [0.035,0.065]");
    c.require(cvm_rate >= 0.035 && cvm_rate <= 0.065, "CvM size in [0.035,0.065]");
    char buf[128];
    std::snprintf(buf, sizeof buf, "KS rate %.4f, CvM rate %.4f", ks_rate, cvm_rate);
    return {c.ok, std::string(buf) + " | " + c.notes, {ks_rate, cvm_rate}};
}

// ---------------------------------------------------------------- criterion 2
// SETAR power: mu1 = 0, mu2 = 1, z = 0, sigma = 1; power at n = 500 exceeds
// the size run by >= 0.3 for both statistics; power is monotone from n = 250
// to n = 1000 (1000 replications each).
CriterionResult criterion2(std::uint64_t seed, int workers) {
    CounterRng master = CounterRng(seed).derive(2);
    const FunctionalSample cvm_table = simulate_functional(
        Functional::cvm_integral, 1024, 100000, master.derive(999).key(), workers);

    SetarTestConfig cfg;
    cfg.level = 0.05;
    cfg.seed = seed;

    auto power = [&](int n, std::uint64_t stream, double mu2, double& ks_rate,
                     double& cvm_rate) {
        const long reps = 1000;
        std::vector<char> rej_ks(reps), rej_cvm(reps);
        CounterRng sub = master.derive(stream);
        parallel_for(reps, workers, [&](std::size_t r) {
            const auto series =
                gen_setar(n, 0.0, mu2, 0.0, Innovation::gaussian(1.0), sub.derive(r).key());
            const auto report = run_setar_test(series, cfg, &cvm_table);
            rej_ks[r] = report.ks->reject ? 1 : 0;
            rej_cvm[r] = report.cvm->reject ? 1 : 0;
        });
        ks_rate = 0.0;
        cvm_rate = 0.0;
        for (long r = 0; r < reps; ++r) {
            ks_rate += rej_ks[r];
            cvm_rate += rej_cvm[r];
        }
        ks_rate /= reps;
        cvm_rate /= reps;
    };

    double size_ks, size_cvm, pow_ks_250, pow_cvm_250, pow_ks_500, pow_cvm_500, pow_ks_1000,
        pow_cvm_1000;
    power(500, 10, 0.0, size_ks, size_cvm);
    power(250, 11, 1.0, pow_ks_250, pow_cvm_250);
    power(500, 12, 1.0, pow_ks_500, pow_cvm_500);
    power(1000, 13, 1.0, pow_ks_1000, pow_cvm_1000);

    Check c;
    c.require(pow_ks_500 >= size_ks + 0.3, "KS power exceeds size by 0.3");
    c.require(pow_cvm_500 >= size_cvm + 0.3, "CvM power exceeds size by 0.3");
    c.require(pow_ks_1000 >= pow_ks_250, "KS power monotone in n");
    c.require(pow_cvm_1000 >= pow_cvm_250, "CvM power monotone in n");
    char buf[192];
    std::snprintf(buf, sizeof buf,
                  "size (%.3f, %.3f), power n=250 (%.3f, %.3f), n=500 (%.3f, %.3f), n=1000 "
                  "(%.3f, %.3f)",
                  size_ks, size_cvm, pow_ks_250, pow_cvm_250, pow_ks_500, pow_cvm_500,
                  pow_ks_1000, pow_cvm_1000);
    return {c.ok, std::string(buf) + " | " + c.notes,
            {size_ks, size_cvm, pow_ks_250, pow_cvm_250, pow_ks_500, pow_cvm_500, pow_ks_1000,
             pow_cvm_1000}};
}

// ---------------------------------------------------------------- criterion 3
// Pivotal limits: the series inversion of the sup law agrees with Monte Carlo
// (1e5 paths, resolution 2000) within 0.02 at the 95% level, and the integral
// functional has mean 1/6 within 3 Monte Carlo standard errors.
CriterionResult criterion3(std::uint64_t seed, int workers) {
    CounterRng master = CounterRng(seed).derive(3);
    const FunctionalSample ks = simulate_functional(Functional::ks_sup, 2000, 100000,
                                                    master.derive(1).key(), workers);
    const double mc_q95 = ks.quantile(0.95);
    const double series_q95 = ks_quantile(0.95);

    const FunctionalSample cvm = simulate_functional(Functional::cvm_integral, 1024, 100000,
                                                     master.derive(2).key(), workers);
    const double mean = cvm.mean();
    double var = 0.0;
    for (double v : cvm.sorted_values) var += (v - mean) * (v - mean);
    var /= static_cast<double>(cvm.sorted_values.size());
    const double se = std::sqrt(var / static_cast<double>(cvm.sorted_values.size()));

    Check c;
    c.require(std::fabs(mc_q95 - series_q95) < 0.02, "KS 95% quantile within 0.02 of inversion");
    c.require(std::fabs(mean - 1.0 / 6.0) < 3.0 * se, "CvM mean within 3 SE of 1/6");
    char buf[160];
    std::snprintf(buf, sizeof buf, "MC q95 %.4f vs series %.4f; CvM mean %.5f (target %.5f, se %.5f)",
                  mc_q95, series_q95, mean, 1.0 / 6.0, se);
    return {c.ok, std::string(buf) + " | " + c.notes, {mc_q95, series_q95, mean, se}};
}

// ---------------------------------------------------------------- criterion 4
// Changepoint size: m == 0, sigma == 1, one-dependent mds innovations, d = 1,
// n = 500, 1000 replications; rejection rate at level 0.05 inside [0.03, 0.07]
// with plug-in critical values from 1e4 sup draws.
CriterionResult criterion4(std::uint64_t seed, int workers, double* out_rate = nullptr) {
    const int n = 500;
    const long reps = 1000;
    CounterRng master = CounterRng(seed).derive(4);

    std::vector<char> rej(reps);
    parallel_for(reps, workers, [&](std::size_t r) {
        RegressionSpec spec;
        spec.n = n;
        spec.innovation = Innovation::mds1();
        const auto sample = gen_regression(spec, master.derive(r).key());
        CptConfig cfg;
        cfg.s_points = 25;
        cfg.z_cap = 25;
        cfg.gamma_reps = 10000;
        cfg.level = 0.05;
        cfg.seed = master.derive(r).derive(1).key();
        cfg.workers = 1; // replication level parallelism only
        rej[r] = run_cpt_test(sample, cfg).reject ? 1 : 0;
    });
    double rate = 0.0;
    for (long r = 0; r < reps; ++r) rate += rej[r];
    rate /= reps;
    if (out_rate != nullptr) *out_rate = rate;

    Check c;
    c.require(rate >= 0.03 && rate <= 0.07, "size in [0.03,0.07]");
    char buf[96];
    std::snprintf(buf, sizeof buf, "rejection rate %.4f", rate);
    return {c.ok, std::string(buf) + " | " + c.notes, {rate}};
}

// criterion 5 reuses the criterion-4 size run with the same (seed, workers);
// memoizing keeps the suite from repeating its longest computation
CriterionResult criterion4_memo(std::uint64_t seed, int workers, double* out_rate = nullptr) {
    static std::map<std::pair<std::uint64_t, int>, CriterionResult> cache;
    const auto key = std::make_pair(seed, workers);
    const auto it = cache.find(key);
    if (it == cache.end()) {
        cache[key] = criterion4(seed, workers);
    }
    const CriterionResult& r = cache[key];
    if (out_rate != nullptr) *out_rate = r.digest[0];
    return r;
}

// ---------------------------------------------------------------- criterion 5
// Changepoint power and localization: mean shift +1 at theta = 0.5, n = 500;
// rejection rate >= size + 0.3 and the median argmax s over rejecting
// replications lies in [0.35, 0.65].
CriterionResult criterion5(std::uint64_t seed, int workers) {
    const int n = 500;
    const long reps = 1000;
    CounterRng master = CounterRng(seed).derive(5);

    double size_rate = 0.0;
    criterion4_memo(seed, workers, &size_rate);

    std::vector<char> rej(reps);
    std::vector<double> argmax(reps);
    parallel_for(reps, workers, [&](std::size_t r) {
        RegressionSpec spec;
        spec.n = n;
        spec.innovation = Innovation::mds1();
        spec.mean_fn = FnDescriptor::constant(0.0);
        spec.mean_fn_after = FnDescriptor::constant(1.0);
        spec.theta = 0.5;
        const auto sample = gen_regression(spec, master.derive(r).key());
        CptConfig cfg;
        cfg.s_points = 25;
        cfg.z_cap = 25;
        cfg.gamma_reps = 10000;
        cfg.level = 0.05;
        cfg.seed = master.derive(r).derive(1).key();
        cfg.workers = 1;
        const auto report = run_cpt_test(sample, cfg);
        rej[r] = report.reject ? 1 : 0;
        argmax[r] = report.argmax_s;
    });
    double rate = 0.0;
    std::vector<double> rejecting_argmax;
    for (long r = 0; r < reps; ++r) {
        rate += rej[r];
        if (rej[r]) rejecting_argmax.push_back(argmax[r]);
    }
    rate /= reps;
    std::sort(rejecting_argmax.begin(), rejecting_argmax.end());
    const double median_s = rejecting_argmax.empty()
                                ? -1.0
                                : rejecting_argmax[rejecting_argmax.size() / 2];

    Check c;
    c.require(rate >= size_rate + 0.3, "power exceeds size by 0.3");
    c.require(median_s >= 0.35 && median_s <= 0.65, "median argmax s in [0.35,0.65]");
    char buf[128];
    std::snprintf(buf, sizeof buf, "power %.4f (size %.4f), median argmax s %.4f", rate,
                  size_rate, median_s);
    return {c.ok, std::string(buf) + " | " + c.notes, {rate, size_rate, median_s}};
}

// ---------------------------------------------------------------- criterion 6
// Moment inequality scaling: gaussian and one-dependent mds generators,
// Q in {2, 4}, n in {64..4096}, 5000 replications; the log-log slope of the
// ratio stays <= 0.05 and the gaussian ratios match the exact moments.
CriterionResult criterion6(std::uint64_t seed, int workers) {
    CounterRng master = CounterRng(seed).derive(6);
    Check c;
    std::vector<double> digest;
    char buf[256];
    std::string detail;

    int stream = 0;
    for (const auto generator : {MomentScalingConfig::Generator::gaussian,
                                 MomentScalingConfig::Generator::mds1}) {
        for (const int q : {2, 4}) {
            MomentScalingConfig cfg;
            cfg.generator = generator;
            cfg.q = q;
            cfg.tau = 1.0;
            cfg.scale = 1.0;
            cfg.n_list = {64, 256, 1024, 4096};
            cfg.reps = 5000;
            cfg.seed = master.derive(++stream).key();
            cfg.workers = workers;
            const auto report = moment_scaling(cfg);
            digest.insert(digest.end(), report.ratios.begin(), report.ratios.end());
            digest.push_back(report.slope);

            const bool gaussian = generator == MomentScalingConfig::Generator::gaussian;
            const char* name = gaussian ? "gaussian" : "mds1";
            c.require(report.slope <= 0.05, std::string(name) + " Q=" + std::to_string(q) +
                                                " slope <= 0.05");
            if (gaussian) {
                const double target = q == 2 ? 1.0 : std::pow(3.0, 0.25);
                const double ratio_4096 = report.ratios.back();
                c.require(std::fabs(ratio_4096 - target) < 0.1 * target,
                          std::string(name) + " Q=" + std::to_string(q) +
                              " ratio at n=4096 within 10%");
                std::snprintf(buf, sizeof buf, "%s Q=%d slope %.4f ratio(4096) %.4f; ", name, q,
                              report.slope, ratio_4096);
            } else {
                std::snprintf(buf, sizeof buf, "%s Q=%d slope %.4f; ", name, q, report.slope);
            }
            detail += buf;
        }
    }
    return {c.ok, detail + "| " + c.notes, digest};
}

// ---------------------------------------------------------------- criterion 7
// Equicontinuity modulus: uniform indicators, Q = 4, gamma = 2, n = 4096,
// 500 replications, deltas {0.9, 0.6, 0.3, 0.15}; strictly decreasing in
// delta, and the smallest delta shows no growth from n = 256 to n = 4096.
CriterionResult criterion7(std::uint64_t seed, int workers) {
    ModulusConfig cfg;
    cfg.q = 4;
    cfg.gamma = 2.0;
    cfg.deltas = {0.9, 0.6, 0.3, 0.15};
    cfg.n_list = {256, 4096};
    cfg.reps = 500;
    cfg.seed = CounterRng(seed).derive(7).key();
    cfg.workers = workers;
    const auto report = equicontinuity_modulus(cfg);

    Check c;
    // strict decrease across the delta list at n = 4096 (row 1)
    bool strict = true;
    for (std::size_t k = 1; k < cfg.deltas.size(); ++k) {
        strict = strict && (report.m(1, k) < report.m(1, k - 1));
    }
    c.require(strict, "M(delta, 4096) strictly decreasing across deltas");
    // within-replication nested-sup monotonicity is structural (nested pair
    // prefixes); the row check above plus the n = 256 row double-checks it
    bool nested = true;
    for (std::size_t ni = 0; ni < cfg.n_list.size(); ++ni) {
        for (std::size_t k = 1; k < cfg.deltas.size(); ++k) {
            nested = nested && (report.m(ni, k) <= report.m(ni, k - 1));
        }
    }
    c.require(nested, "nested-sup monotonicity on every row");
    const double pooled_se = std::sqrt(report.m_se(0, 3) * report.m_se(0, 3) +
                                       report.m_se(1, 3) * report.m_se(1, 3));
    c.require(report.m(1, 3) <= report.m(0, 3) + 3.0 * pooled_se,
              "M(0.15, 4096) <= M(0.15, 256) + 3 pooled SE");
    char buf[224];
    std::snprintf(buf, sizeof buf,
                  "M(4096,:) = %.4f %.4f %.4f %.4f; M(0.15): n256 %.5f n4096 %.5f (pooled se %.5f)",
                  report.m(1, 0), report.m(1, 1), report.m(1, 2), report.m(1, 3), report.m(0, 3),
                  report.m(1, 3), pooled_se);
    std::vector<double> digest;
    for (std::size_t ni = 0; ni < 2; ++ni) {
        for (std::size_t k = 0; k < 4; ++k) digest.push_back(report.m(ni, k));
    }
    return {c.ok, std::string(buf) + " | " + c.notes, digest};
}

// ---------------------------------------------------------------- criterion 8
// Finite-dimensional covariance of the threshold process under the gaussian
// null at the 0.3/0.7 population quantiles, n = 1000, 2000 replications;
// every entry within 5 Monte Carlo standard errors of the closed form.
CriterionResult criterion8(std::uint64_t seed, int workers) {
    FidiConfig cfg;
    cfg.n = 1000;
    cfg.reps = 2000;
    cfg.sigma = 1.0;
    cfg.z1 = normal_quantile(0.3);
    cfg.z2 = normal_quantile(0.7);
    cfg.seed = CounterRng(seed).derive(8).key();
    cfg.workers = workers;
    const auto report = fidi_check(cfg);

    Check c;
    c.require(report.max_dev_over_se < 5.0, "all covariance entries within 5 MC SE");
    char buf[192];
    std::snprintf(buf, sizeof buf,
                  "cross cov %.5f vs target %.5f (se %.5f); max |dev|/se %.2f",
                  report.empirical[1], report.target[1], report.mc_se[1],
                  report.max_dev_over_se);
    return {c.ok, std::string(buf) + " | " + c.notes,
            {report.empirical[0], report.empirical[1], report.empirical[2],
             report.max_dev_over_se}};
}

// ---------------------------------------------------------------- criterion 9
// Entropy and mixing checkers: closed-form verdicts agree with numeric ones on
// a 20-configuration grid spanning both boundary sides, and bracket coverage
// plus strict rho(b) < eps hold exactly on randomized checks.
CriterionResult criterion9(std::uint64_t seed, int workers) {
    (void)workers;
    Check c;

    // A1 grid: polynomial decay on both sides of beta = (Q-1)(2/gamma + 1),
    // including the exact boundary, plus always-summable forms.
    struct A1Case { int q; double gamma, beta; };
    const std::vector<A1Case> a1_cases = {
        {2, 1.0, 3.0 - 0.7}, {2, 1.0, 3.0 + 0.7},   // boundary 3
        {2, 2.0, 2.0 - 0.6}, {2, 2.0, 2.0 + 0.6},   // boundary 2
        {4, 1.0, 9.0 - 1.0}, {4, 1.0, 9.0 + 1.0},   // boundary 9
        {4, 2.0, 6.0 - 0.8}, {4, 2.0, 6.0 + 0.8},   // boundary 6
        {4, 2.0, 6.0},                              // exact boundary: fail side
        {6, 2.0, 10.0 + 1.0},                       // boundary 10
    };
    bool a1_agree = true;
    for (const auto& cs : a1_cases) {
        EntropyBudget b;
        b.q = cs.q;
        b.gamma = cs.gamma;
        b.bracket_exponent = 2.0;
        b.mixing = MixingSpec::polynomial(1.0, cs.beta);
        const bool closed = check_A1(b, 1000).pass;
        const bool numeric = a1_numeric_verdict(b);
        a1_agree = a1_agree && (closed == numeric);
    }
    c.require(a1_agree, "A1 closed form agrees with the numeric decay verdict (10 configs)");

    // A2 grid: both sides of Q = d(gamma/2 + 1), margins wide enough for the
    // truncated-integral stability test to resolve.
    struct A2Case { int q; double gamma, d; };
    const std::vector<A2Case> a2_cases = {
        {6, 2.0, 2.0}, {4, 2.0, 1.0}, {8, 2.0, 2.0}, {4, 1.0, 1.0}, {6, 1.0, 2.0}, // pass side
        {4, 2.0, 2.0},                                                             // boundary
        {2, 2.0, 2.0}, {4, 4.0, 2.0}, {2, 2.0, 1.0}, {2, 4.0, 1.0},                // fail side
    };
    bool a2_agree = true;
    for (const auto& cs : a2_cases) {
        EntropyBudget b;
        b.q = cs.q;
        b.gamma = cs.gamma;
        b.bracket_exponent = cs.d;
        const auto closed = check_A2_integral(b);
        const bool numeric = a2_numeric_verdict(b);
        a2_agree = a2_agree && (closed.pass == numeric);
        if (closed.pass) a2_agree = a2_agree && closed.relative_error < 1e-6;
    }
    c.require(a2_agree, "A2 closed form agrees with the quadrature verdict (10 configs)");

    // bracket construction: exact coverage over 1e3 random thresholds times
    // 1e3 random data points, and strict rho at the named radii
    CounterRng rng = CounterRng(seed).derive(9);
    bool coverage = true, strict_rho = true;
    long total_checks = 0;
    for (double eps : {0.5, 0.2, 0.1}) {
        for (const Law& law : {Law::uniform01(), Law::gaussian01()}) {
            const BracketSet set = build_brackets(eps, law);
            for (const auto& b : set.bounding) {
                strict_rho = strict_rho && (std::sqrt(b.mass) < eps);
            }
            std::vector<double> zs(1000), ys(1000);
            for (auto& z : zs) {
                z = law.draw(rng) + (rng.next_unit() < 0.1 ? (rng.next_unit() - 0.5) * 8.0 : 0.0);
            }
            for (auto& y : ys) y = law.draw(rng);
            for (double z : zs) {
                const std::size_t k = set.bucket_of(z);
                const double q = set.approximating[k];
                const IntervalIndicator& b = set.bounding[k];
                for (double y : ys) {
                    const double a = (y <= q) ? 1.0 : 0.0;
                    const double phi = (y <= z) ? 1.0 : 0.0;
                    coverage = coverage && (std::fabs(phi - a) <= b.eval(y));
                    ++total_checks;
                }
            }
        }
    }
    c.require(coverage, "bracket coverage exact on randomized checks");
    c.require(strict_rho, "rho(b) < eps strict for every bounding member");

    char buf[96];
    std::snprintf(buf, sizeof buf, "20 closed-form configs, %ld coverage checks", total_checks);
    return {c.ok, std::string(buf) + " | " + c.notes,
            {a1_agree ? 1.0 : 0.0, a2_agree ? 1.0 : 0.0, coverage ? 1.0 : 0.0,
             strict_rho ? 1.0 : 0.0}};
}

using CriterionFn = std::function<CriterionResult(std::uint64_t, int)>;

} // namespace

int main(int argc, char** argv) {
    std::uint64_t seed = 20260808;
    int workers = 2;
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc) {
            seed = std::strtoull(argv[++i], nullptr, 10);
        } else if (std::strcmp(argv[i], "--workers") == 0 && i + 1 < argc) {
            workers = std::atoi(argv[++i]);
        } else if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else {
            std::fprintf(stderr, "usage: acceptance [--seed S] [--workers K] [--criterion N]\n");
            return 2;
        }
    }

    const std::vector<std::pair<std::string, CriterionFn>> criteria = {
        {"SETAR size at level 0.05", [](std::uint64_t s, int w) { return criterion1(s, w); }},
        {"SETAR power and consistency", [](std::uint64_t s, int w) { return criterion2(s, w); }},
        {"pivotal bridge limits", [](std::uint64_t s, int w) { return criterion3(s, w); }},
        {"changepoint size at level 0.05",
         [](std::uint64_t s, int w) { return criterion4_memo(s, w); }},
        {"changepoint power and localization",
         [](std::uint64_t s, int w) { return criterion5(s, w); }},
        {"partial-sum moment scaling", [](std::uint64_t s, int w) { return criterion6(s, w); }},
        {"equicontinuity modulus", [](std::uint64_t s, int w) { return criterion7(s, w); }},
        {"fidi covariance of the threshold process",
         [](std::uint64_t s, int w) { return criterion8(s, w); }},
        {"entropy and mixing checkers", [](std::uint64_t s, int w) { return criterion9(s, w); }},
    };

    int failures = 0;
    std::vector<CriterionResult> first_run(criteria.size());
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        if (only != 0 && only != static_cast<int>(k + 1)) continue;
        first_run[k] = criteria[k].second(seed, workers);
        const auto& r = first_run[k];
        std::printf("[%s] criterion %zu: %s: %s\n", r.pass ? "PASS" : "FAIL", k + 1,
                    criteria[k].first.c_str(), r.detail.c_str());
        std::fflush(stdout);
        failures += r.pass ? 0 : 1;
    }

    // criterion 10: every run above, re-executed with the same master seed and
    // a different worker count, reproduces its statistics bit-identically
    if (only == 0 || only == 10) {
        bool identical = true;
        std::string bad;
        const int other_workers = workers == 1 ? 2 : workers + 1;
        for (std::size_t k = 0; k < criteria.size(); ++k) {
            if (first_run[k].digest.empty()) first_run[k] = criteria[k].second(seed, workers);
            const auto rerun = criteria[k].second(seed, other_workers);
            if (rerun.digest.size() != first_run[k].digest.size() ||
                std::memcmp(rerun.digest.data(), first_run[k].digest.data(),
                            rerun.digest.size() * sizeof(double)) != 0) {
                identical = false;
                bad += " criterion " + std::to_string(k + 1);
            }
        }
        std::printf("[%s] criterion 10: determinism across worker counts: %s\n",
                    identical ? "PASS" : "FAIL",
                    identical ? ("digests bit-identical at workers=" + std::to_string(workers) +
                                 " and workers=" + std::to_string(other_workers))
                                    .c_str()
                              : ("mismatch at" + bad).c_str());
        failures += identical ? 0 : 1;
    }

    return failures == 0 ? 0 : 1;
}
