#include "seqemp/series.hpp"

#include <cmath>
#include <stdexcept>

namespace seqemp {

void UnivariateSeries::validate() const {
    if (n == 0 || values.size() != n + 1) {
        throw std::invalid_argument("UnivariateSeries: values must have length n+1");
    }
    for (double v : values) {
        if (!std::isfinite(v)) throw std::invalid_argument("UnivariateSeries: nonfinite entry");
    }
}

void RegressionSample::validate() const {
    if (responses.empty() || regressors.size() != responses.size()) {
        throw std::invalid_argument("RegressionSample: responses and regressors must have equal length >= 1");
    }
    if (d == 0) throw std::invalid_argument("RegressionSample: d must be positive");
    for (double y : responses) {
        if (!std::isfinite(y)) throw std::invalid_argument("RegressionSample: nonfinite response");
    }
    for (const auto& x : regressors) {
        if (x.size() != d) throw std::invalid_argument("RegressionSample: regressor dimension mismatch");
        for (double v : x) {
            if (!std::isfinite(v)) throw std::invalid_argument("RegressionSample: nonfinite regressor");
        }
    }
}

MixingSpec MixingSpec::m_dependent(int m) {
    MixingSpec s;
    s.form = Form::m_dependent;
    s.m = m;
    s.validate();
    return s;
}

MixingSpec MixingSpec::polynomial(double c, double beta) {
    MixingSpec s;
    s.form = Form::polynomial;
    s.c = c;
    s.beta = beta;
    s.validate();
    return s;
}

MixingSpec MixingSpec::geometric(double c, double rho) {
    MixingSpec s;
    s.form = Form::geometric;
    s.c = c;
    s.rho = rho;
    s.validate();
    return s;
}

void MixingSpec::validate() const {
    switch (form) {
    case Form::independent:
        break;
    case Form::m_dependent:
        if (m < 0) throw std::invalid_argument("MixingSpec: m must be nonnegative");
        break;
    case Form::polynomial:
        if (!(c >= 0.0) || !(beta >= 0.0) || !std::isfinite(c) || !std::isfinite(beta)) {
            throw std::invalid_argument("MixingSpec: polynomial parameters must be nonnegative");
        }
        break;
    case Form::geometric:
        if (!(c >= 0.0) || !std::isfinite(c) || !(rho > 0.0 && rho < 1.0)) {
            throw std::invalid_argument("MixingSpec: geometric needs c >= 0 and rho in (0,1)");
        }
        break;
    }
}

std::string MixingSpec::name() const {
    switch (form) {
    case Form::independent: return "independent";
    case Form::m_dependent: return "m-dependent";
    case Form::polynomial: return "polynomial";
    case Form::geometric: return "geometric";
    }
    return "?";
}

double alpha_of(const MixingSpec& spec, int t) {
    if (t < 0) throw std::invalid_argument("alpha_of: t must be nonnegative");
    if (t == 0) return 1.0;
    constexpr double cap = 0.25; // alpha coefficients never exceed 1/4
    switch (spec.form) {
    case MixingSpec::Form::independent:
        return 0.0;
    case MixingSpec::Form::m_dependent:
        return t > spec.m ? 0.0 : cap;
    case MixingSpec::Form::polynomial:
        return std::min(cap, spec.c * std::pow(static_cast<double>(t), -spec.beta));
    case MixingSpec::Form::geometric:
        return std::min(cap, spec.c * std::pow(spec.rho, static_cast<double>(t)));
    }
    return 0.0;
}

void Innovation::validate() const {
    if (!std::isfinite(sigma) || sigma < 0.0) {
        throw std::invalid_argument("Innovation: sigma must be finite and nonnegative");
    }
    if (kind == Kind::student_t) {
        if (nu <= 2) throw std::invalid_argument("Innovation: student_t needs nu > 2 for unit-variance scaling");
        if (nu <= moment_order) {
            throw std::invalid_argument("Innovation: student_t nu too small for requested moment order");
        }
    }
}

std::string Innovation::name() const {
    switch (kind) {
    case Kind::gaussian: return "gaussian";
    case Kind::student_t: return "student-t";
    case Kind::mds1: return "mds1";
    case Kind::none: return "none";
    }
    return "?";
}

} // namespace seqemp
