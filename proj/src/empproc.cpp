#include "seqemp/empproc.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace seqemp {

ZGrid ZGrid::scalar(std::vector<double> pts) {
    ZGrid g;
    g.dim = 1;
    g.pts = std::move(pts);
    g.validate();
    return g;
}

ZGrid ZGrid::multi(std::vector<std::vector<double>> pts) {
    ZGrid g;
    if (pts.empty()) throw std::invalid_argument("ZGrid: empty grid");
    g.dim = pts.front().size();
    if (g.dim == 1) {
        g.pts.reserve(pts.size());
        for (const auto& p : pts) g.pts.push_back(p.front());
    } else {
        g.mpts = std::move(pts);
    }
    g.validate();
    return g;
}

void ZGrid::validate() const {
    if (dim == 0) throw std::invalid_argument("ZGrid: dimension must be positive");
    if (dim == 1) {
        if (pts.empty()) throw std::invalid_argument("ZGrid: empty grid");
        for (std::size_t j = 1; j < pts.size(); ++j) {
            if (!(pts[j - 1] < pts[j])) {
                throw std::invalid_argument("ZGrid: grid must be strictly increasing");
            }
        }
    } else {
        if (mpts.empty()) throw std::invalid_argument("ZGrid: empty grid");
        for (const auto& p : mpts) {
            if (p.size() != dim) throw std::invalid_argument("ZGrid: point dimension mismatch");
        }
        for (std::size_t j = 1; j < mpts.size(); ++j) {
            if (!(mpts[j - 1] < mpts[j])) {
                throw std::invalid_argument("ZGrid: grid must be lexicographically increasing");
            }
        }
    }
}

bool ZGrid::leq(std::span<const double> x, std::size_t j) const {
    if (dim == 1) return x[0] <= pts[j];
    const auto& z = mpts[j];
    for (std::size_t k = 0; k < dim; ++k) {
        if (!(x[k] <= z[k])) return false;
    }
    return true;
}

std::string ZGrid::label(std::size_t j) const {
    if (dim == 1) {
        std::ostringstream os;
        os << pts[j];
        return os.str();
    }
    std::ostringstream os;
    for (std::size_t k = 0; k < dim; ++k) {
        if (k) os << ':';
        os << mpts[j][k];
    }
    return os.str();
}

void ThresholdFamily::validate() const {
    z_grid.validate();
    if (kind != Kind::response_indicator && z_grid.dim != 1) {
        throw std::invalid_argument("ThresholdFamily: only response_indicator supports d > 1");
    }
    if (centering.mode == Centering::Mode::table && centering.table.size() != z_grid.size()) {
        throw std::invalid_argument("ThresholdFamily: centering table missing a grid point");
    }
    if (kind == Kind::residual_indicator && !f_table.empty() && f_table.size() != z_grid.size()) {
        throw std::invalid_argument("ThresholdFamily: plug-in F table missing a grid point");
    }
    if (!std::isfinite(member_scale)) {
        throw std::invalid_argument("ThresholdFamily: nonfinite member scale");
    }
}

EmpSample EmpSample::univariate(std::vector<double> values) {
    EmpSample s;
    s.points = std::move(values);
    return s;
}

EmpSample EmpSample::pairs(std::vector<double> errors, std::vector<double> lags) {
    if (errors.size() != lags.size()) {
        throw std::invalid_argument("EmpSample::pairs: errors and lags must have equal length");
    }
    EmpSample s;
    s.errors = std::move(errors);
    s.lags = std::move(lags);
    return s;
}

EmpSample EmpSample::regression(const RegressionSample& sample) {
    sample.validate();
    EmpSample s;
    s.responses = sample.responses;
    s.regressors = sample.regressors;
    return s;
}

std::size_t EmpSample::size(ThresholdFamily::Kind kind) const {
    switch (kind) {
    case ThresholdFamily::Kind::indicator: return points.size();
    case ThresholdFamily::Kind::residual_indicator: return errors.size();
    case ThresholdFamily::Kind::response_indicator: return responses.size();
    }
    return 0;
}

void ProcessPath::write_csv(std::ostream& os) const {
    os << "s,z,value\n";
    char buf[64];
    for (std::size_t i = 0; i < s_grid.size(); ++i) {
        for (std::size_t j = 0; j < z_grid.size(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", s_grid[i]);
            os << buf << ',' << z_grid.label(j) << ',';
            std::snprintf(buf, sizeof buf, "%.17g", values(i, j));
            os << buf << '\n';
        }
    }
}

namespace {

// phi values for column j as a function of the data index.
std::vector<double> column_values(const ThresholdFamily& family, const EmpSample& data,
                                  std::size_t j) {
    const std::size_t n = data.size(family.kind);
    std::vector<double> v(n);
    switch (family.kind) {
    case ThresholdFamily::Kind::indicator: {
        const double z = family.z_grid.scalar_at(j);
        for (std::size_t i = 0; i < n; ++i) v[i] = data.points[i] <= z ? 1.0 : 0.0;
        break;
    }
    case ThresholdFamily::Kind::residual_indicator: {
        const double z = family.z_grid.scalar_at(j);
        double f;
        if (!family.f_table.empty()) {
            f = family.f_table[j];
        } else {
            std::size_t cnt = 0;
            for (double y : data.lags) cnt += (y <= z) ? 1 : 0;
            f = static_cast<double>(cnt) / static_cast<double>(n);
        }
        for (std::size_t i = 0; i < n; ++i) {
            v[i] = data.errors[i] * ((data.lags[i] <= z ? 1.0 : 0.0) - f);
        }
        break;
    }
    case ThresholdFamily::Kind::response_indicator: {
        for (std::size_t i = 0; i < n; ++i) {
            v[i] = family.z_grid.leq(data.regressors[i], j) ? data.responses[i] : 0.0;
        }
        break;
    }
    }
    if (family.member_scale != 1.0) {
        for (double& x : v) x *= family.member_scale;
    }
    return v;
}

} // namespace

ProcessPath eval_process(const ThresholdFamily& family, const EmpSample& data,
                         std::span<const double> s_grid) {
    family.validate();
    if (s_grid.empty()) throw std::invalid_argument("eval_process: empty s grid");
    const std::size_t n = data.size(family.kind);
    if (n == 0) throw std::invalid_argument("eval_process: empty data");
    for (double s : s_grid) {
        if (!(s >= 0.0 && s <= 1.0)) {
            throw std::invalid_argument("eval_process: s grid must lie in [0,1]");
        }
    }

    ProcessPath path;
    path.s_grid.assign(s_grid.begin(), s_grid.end());
    path.z_grid = family.z_grid;
    path.n = n;
    path.values = Matrix(s_grid.size(), family.z_grid.size());

    const double root_n = std::sqrt(static_cast<double>(n));
    std::vector<double> prefix(n + 1);
    for (std::size_t j = 0; j < family.z_grid.size(); ++j) {
        const std::vector<double> v = column_values(family, data, j);
        double center;
        if (family.centering.mode == Centering::Mode::table) {
            center = family.member_scale * family.centering.table[j];
        } else {
            double sum = 0.0;
            for (double x : v) sum += x;
            center = sum / static_cast<double>(n);
        }
        prefix[0] = 0.0;
        for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + (v[i] - center);
        for (std::size_t si = 0; si < path.s_grid.size(); ++si) {
            const auto k = static_cast<std::size_t>(
                std::floor(path.s_grid[si] * static_cast<double>(n)));
            path.values(si, j) = prefix[std::min(k, n)] / root_n;
        }
    }
    return path;
}

double FamilyMember::eval(double y) const {
    switch (kind) {
    case Kind::zero: return 0.0;
    case Kind::identity: return y;
    case Kind::indicator: return y <= z ? 1.0 : 0.0;
    }
    return 0.0;
}

namespace {

double plugin_moment(const FamilyMember& phi, const FamilyMember& psi, const Law& law,
                     double p) {
    double sum = 0.0;
    for (double y : law.sample) {
        sum += std::pow(std::fabs(phi.eval(y) - psi.eval(y)), p);
    }
    const double m = sum / static_cast<double>(law.sample.size());
    if (!std::isfinite(m)) {
        throw std::runtime_error("empproc: nonfinite plug-in moment estimate");
    }
    return m;
}

// E[|y|^p] under the catalog laws.
double abs_moment(const Law& law, double p) {
    if (law.kind == LawKind::uniform01) return 1.0 / (p + 1.0);
    // standard normal: 2^{p/2} Gamma((p+1)/2) / sqrt(pi)
    return std::exp(0.5 * p * std::log(2.0) + std::lgamma(0.5 * (p + 1.0)) -
                    0.5 * std::log(3.14159265358979323846));
}

// Quadrature fallback for catalog laws: integrate over quantile space.
double quadrature_moment(const FamilyMember& phi, const FamilyMember& psi, const Law& law,
                         double p) {
    const int cells = 20000;
    double sum = 0.0;
    for (int k = 0; k < cells; ++k) {
        const double u = (k + 0.5) / cells;
        const double y = law.quantile(u);
        sum += std::pow(std::fabs(phi.eval(y) - psi.eval(y)), p);
    }
    return sum / cells;
}

double pair_moment(const FamilyMember& phi, const FamilyMember& psi, const Law& law, double p) {
    if (law.kind == LawKind::empirical) return plugin_moment(phi, psi, law, p);

    using K = FamilyMember::Kind;
    const K a = phi.kind, b = psi.kind;
    if (a == K::indicator && b == K::indicator) {
        // |phi - psi| is the indicator of the interval between the thresholds
        return std::fabs(law.cdf(phi.z) - law.cdf(psi.z));
    }
    if ((a == K::indicator && b == K::zero) || (a == K::zero && b == K::indicator)) {
        return law.cdf(a == K::indicator ? phi.z : psi.z);
    }
    if (a == K::zero && b == K::zero) return 0.0;
    if ((a == K::identity && b == K::zero) || (a == K::zero && b == K::identity)) {
        return abs_moment(law, p);
    }
    if (a == K::identity && b == K::identity) return 0.0;
    return quadrature_moment(phi, psi, law, p);
}

} // namespace

double rho_norm(const FamilyMember& phi, const Law& law) {
    return std::sqrt(pair_moment(phi, FamilyMember::zero(), law, 2.0));
}

double d_metric(const FamilyMember& phi, const FamilyMember& psi, const Law& law,
                int q, double gamma) {
    if (q < 2 || q % 2 != 0) throw std::invalid_argument("d_metric: Q must be even and >= 2");
    if (!(gamma > 0.0)) throw std::invalid_argument("d_metric: gamma must be positive");
    const double p = q * (2.0 + gamma) / 2.0;
    const double moment = pair_moment(phi, psi, law, p);
    const double outer = (1.0 / q) * (2.0 / (2.0 + gamma));
    return std::pow(moment, outer);
}

std::vector<double> jump_grid(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("jump_grid: empty data");
    std::vector<double> grid(values.begin(), values.end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    const double lo = grid.front(), hi = grid.back();
    const double pad = std::max(1.0, (hi - lo) * 0.5);
    grid.insert(grid.begin(), lo - pad);
    grid.push_back(hi + pad);
    return grid;
}

} // namespace seqemp
