#include "seqemp/seriesgen.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "seqemp/law.hpp"

namespace seqemp {

namespace {

constexpr std::uint64_t kStreamInnovations = 1;
constexpr std::uint64_t kStreamRegressors = 2;

double normal_pdf(double x) {
    return std::exp(-0.5 * x * x) * 0.3989422804014326779;
}

// E[(1 + 0.5*tanh(eta))^2] under eta ~ N(0,1), via composite Simpson on
// [-10, 10]; the integrand decays like the normal density, so the truncation
// error is far below the quadrature tolerance.
double mds_second_moment_raw() {
    const int half_steps = 4000;
    const double lo = -10.0, hi = 10.0;
    const double h = (hi - lo) / (2.0 * half_steps);
    auto f = [](double x) {
        const double g = 1.0 + 0.5 * std::tanh(x);
        return g * g * normal_pdf(x);
    };
    double sum = f(lo) + f(hi);
    for (int k = 1; k < 2 * half_steps; ++k) {
        sum += (k % 2 == 1 ? 4.0 : 2.0) * f(lo + k * h);
    }
    return sum * h / 3.0;
}

} // namespace

double mds_scale_constant() {
    static const double a = 1.0 / std::sqrt(mds_second_moment_raw());
    return a;
}

InnovationStream::InnovationStream(const Innovation& spec, CounterRng rng)
    : spec_(spec), rng_(rng) {
    spec_.validate();
    if (spec_.kind == Innovation::Kind::student_t) {
        // variance of t_nu is nu/(nu-2); rescale to sigma^2
        t_scale_ = spec_.sigma * std::sqrt((spec_.nu - 2.0) / spec_.nu);
    }
    if (spec_.kind == Innovation::Kind::mds1) {
        eta_prev_ = rng_.next_normal();
    }
}

double InnovationStream::next() {
    switch (spec_.kind) {
    case Innovation::Kind::gaussian:
        return spec_.sigma * rng_.next_normal();
    case Innovation::Kind::student_t: {
        const double z = rng_.next_normal();
        double chi2 = 0.0;
        for (int k = 0; k < spec_.nu; ++k) {
            const double g = rng_.next_normal();
            chi2 += g * g;
        }
        return t_scale_ * z / std::sqrt(chi2 / spec_.nu);
    }
    case Innovation::Kind::mds1: {
        const double eta = rng_.next_normal();
        const double g = mds_scale_constant() * (1.0 + 0.5 * std::tanh(eta_prev_));
        eta_prev_ = eta;
        return spec_.sigma * eta * g;
    }
    case Innovation::Kind::none:
        return 0.0;
    }
    return 0.0;
}

UnivariateSeries gen_setar(int n, double mu1, double mu2, double threshold,
                           const Innovation& innovation, std::uint64_t seed,
                           int burn_in, std::optional<double> y0_override) {
    if (n < 2) throw std::invalid_argument("gen_setar: n must be at least 2");
    if (burn_in < 0) throw std::invalid_argument("gen_setar: burn_in must be nonnegative");
    if (!std::isfinite(mu1) || !std::isfinite(mu2) || !std::isfinite(threshold)) {
        throw std::invalid_argument("gen_setar: nonfinite parameter");
    }
    innovation.validate();

    CounterRng rng(seed);
    InnovationStream eps(innovation, rng.derive(kStreamInnovations));

    double y = y0_override ? *y0_override : mu1 + eps.next();
    for (int b = 0; b < burn_in; ++b) {
        y = (y <= threshold ? mu1 : mu2) + eps.next();
    }

    UnivariateSeries series;
    series.n = static_cast<std::size_t>(n);
    series.values.reserve(series.n + 1);
    series.values.push_back(y);
    for (int t = 1; t <= n; ++t) {
        y = (y <= threshold ? mu1 : mu2) + eps.next();
        series.values.push_back(y);
    }
    series.origin = "setar(n=" + std::to_string(n) + ",innovation=" + innovation.name() +
                    ",seed=" + std::to_string(seed) + ")";
    series.validate();
    return series;
}

double FnDescriptor::eval(std::span<const double> x) const {
    double xm = 0.0;
    if (kind != Kind::constant) {
        xm = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
    }
    switch (kind) {
    case Kind::constant: return b;
    case Kind::linear: return a * xm + b;
    case Kind::sinusoid: return a * std::sin(omega * xm) + b;
    }
    return 0.0;
}

std::string FnDescriptor::name() const {
    switch (kind) {
    case Kind::constant: return "constant(" + std::to_string(b) + ")";
    case Kind::linear: return "linear(" + std::to_string(a) + "," + std::to_string(b) + ")";
    case Kind::sinusoid:
        return "sinusoid(" + std::to_string(a) + "," + std::to_string(omega) + "," + std::to_string(b) + ")";
    }
    return "?";
}

RegressionSample gen_regression(const RegressionSpec& spec, std::uint64_t seed) {
    if (spec.n < 1) throw std::invalid_argument("gen_regression: n must be positive");
    if (spec.d < 1) throw std::invalid_argument("gen_regression: d must be positive");
    if (spec.mean_fn_after && !(spec.theta > 0.0 && spec.theta < 1.0)) {
        throw std::invalid_argument("gen_regression: changepoint theta must lie in (0,1)");
    }
    spec.innovation.validate();

    CounterRng rng(seed);
    CounterRng xr = rng.derive(kStreamRegressors);
    InnovationStream eps(spec.innovation, rng.derive(kStreamInnovations));

    RegressionSample sample;
    sample.d = static_cast<std::size_t>(spec.d);
    sample.responses.reserve(spec.n);
    sample.regressors.reserve(spec.n);

    const long switch_after = spec.mean_fn_after
        ? static_cast<long>(std::floor(spec.theta * spec.n))
        : static_cast<long>(spec.n);

    for (int i = 1; i <= spec.n; ++i) {
        std::vector<double> x(sample.d);
        for (auto& v : x) {
            v = spec.regressor_law == RegressionSpec::RegressorLaw::uniform_cube
                    ? xr.next_unit()
                    : xr.next_normal();
        }
        const FnDescriptor& mean = (i <= switch_after) ? spec.mean_fn : *spec.mean_fn_after;
        const double m = mean.eval(x);
        const double s = spec.scale_fn.eval(x);
        if (s < 0.0) {
            throw std::invalid_argument("gen_regression: scale_fn must be nonnegative on its domain");
        }
        sample.responses.push_back(m + s * eps.next());
        sample.regressors.push_back(std::move(x));
    }
    sample.origin = "regression(n=" + std::to_string(spec.n) + ",d=" + std::to_string(spec.d) +
                    ",mean=" + spec.mean_fn.name() + ",seed=" + std::to_string(seed) + ")";
    sample.validate();
    return sample;
}

std::vector<double> gen_mds_innovations(int n, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("gen_mds_innovations: n must be at least 2");
    CounterRng rng(seed);
    InnovationStream eps(Innovation::mds1(), rng.derive(kStreamInnovations));
    std::vector<double> out;
    out.reserve(n);
    for (int t = 0; t < n; ++t) out.push_back(eps.next());
    return out;
}

} // namespace seqemp
