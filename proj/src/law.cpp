#include "seqemp/law.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace seqemp {

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x * 0.7071067811865475244);
}

// PPND16 (AS 241), accurate to ~1e-15 over (0, 1).
double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::invalid_argument("normal_quantile: p must lie strictly in (0,1)");
    }
    const double q = p - 0.5;
    double r;
    if (std::fabs(q) <= 0.425) {
        r = 0.180625 - q * q;
        return q *
               (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                     6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
                   1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
                 1.3314166789178437745e2) * r + 3.3871328727963666080e0) /
               (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                     3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
                   5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
                 4.2313330701600911252e1) * r + 1.0);
    }
    r = (q < 0.0) ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double val;
    if (r <= 5.0) {
        r -= 1.6;
        val = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                    2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
                  3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
                4.63033784615654529590e0) * r + 1.42343711074968357734e0) /
              (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                    1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                  6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
                2.05319162663775882187e0) * r + 1.0);
    } else {
        r -= 5.0;
        val = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                    1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                  2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
                5.46378491116411436990e0) * r + 6.65790464350110377720e0) /
              (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                    1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                  1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
                5.99832206555887937690e-1) * r + 1.0);
    }
    return (q < 0.0) ? -val : val;
}

Law Law::empirical(std::vector<double> values) {
    if (values.empty()) {
        throw std::invalid_argument("Law::empirical: sample must be nonempty");
    }
    std::sort(values.begin(), values.end());
    return Law{LawKind::empirical, std::move(values)};
}

double Law::cdf(double x) const {
    switch (kind) {
    case LawKind::uniform01:
        return std::clamp(x, 0.0, 1.0);
    case LawKind::gaussian01:
        return normal_cdf(x);
    case LawKind::empirical: {
        const auto it = std::upper_bound(sample.begin(), sample.end(), x);
        return static_cast<double>(it - sample.begin()) / static_cast<double>(sample.size());
    }
    }
    return 0.0;
}

double Law::quantile(double u) const {
    switch (kind) {
    case LawKind::uniform01:
        if (!(u >= 0.0 && u <= 1.0)) {
            throw std::invalid_argument("Law::quantile: level outside [0,1]");
        }
        return u;
    case LawKind::gaussian01:
        return normal_quantile(u);
    case LawKind::empirical: {
        if (!(u >= 0.0 && u <= 1.0)) {
            throw std::invalid_argument("Law::quantile: level outside [0,1]");
        }
        const std::size_t n = sample.size();
        const std::size_t k = std::min<std::size_t>(
            n - 1, static_cast<std::size_t>(std::ceil(u * static_cast<double>(n))) == 0
                       ? 0
                       : static_cast<std::size_t>(std::ceil(u * static_cast<double>(n))) - 1);
        return sample[k];
    }
    }
    return 0.0;
}

double Law::draw(CounterRng& rng) const {
    switch (kind) {
    case LawKind::uniform01:
        return rng.next_unit();
    case LawKind::gaussian01:
        return rng.next_normal();
    case LawKind::empirical: {
        const std::size_t k = static_cast<std::size_t>(rng.next_u64() % sample.size());
        return sample[k];
    }
    }
    return 0.0;
}

std::string Law::name() const {
    switch (kind) {
    case LawKind::uniform01:
        return "uniform01";
    case LawKind::gaussian01:
        return "gaussian01";
    case LawKind::empirical:
        return "empirical";
    }
    return "?";
}

Law Law::from_name(const std::string& name) {
    if (name == "uniform01") return uniform01();
    if (name == "gaussian01") return gaussian01();
    throw std::invalid_argument("Law::from_name: unknown catalog law '" + name + "'");
}

} // namespace seqemp
