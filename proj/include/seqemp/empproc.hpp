// Sequential empirical process evaluation over threshold-indexed function
// families, plus the L2 semi-norm rho and the moment semi-metric d.
#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "seqemp/law.hpp"
#include "seqemp/linalg.hpp"
#include "seqemp/series.hpp"

namespace seqemp {

// Threshold grid; componentwise partial order when dim > 1.
struct ZGrid {
    std::size_t dim = 1;
    std::vector<double> pts;                // dim == 1, strictly increasing
    std::vector<std::vector<double>> mpts;  // dim > 1, lexicographically increasing

    static ZGrid scalar(std::vector<double> pts);
    static ZGrid multi(std::vector<std::vector<double>> pts);

    [[nodiscard]] std::size_t size() const { return dim == 1 ? pts.size() : mpts.size(); }
    [[nodiscard]] bool leq(std::span<const double> x, std::size_t j) const;
    [[nodiscard]] double scalar_at(std::size_t j) const { return pts[j]; }
    [[nodiscard]] std::string label(std::size_t j) const;
    void validate() const;
};

struct Centering {
    enum class Mode { empirical, table };
    Mode mode = Mode::empirical;
    std::vector<double> table; // one entry per grid point when mode == table

    static Centering empirical() { return {}; }
    static Centering from_table(std::vector<double> values) {
        return {Mode::table, std::move(values)};
    }
    [[nodiscard]] std::string name() const {
        return mode == Mode::empirical ? "empirical" : "table";
    }
};

struct ThresholdFamily {
    enum class Kind {
        indicator,          // y -> I{y <= z}
        residual_indicator, // (e, y) -> e * (I{y <= z} - F(z)) with plug-in F
        response_indicator  // (y, x) -> y * I{x <= z}, componentwise for x in R^d
    };
    Kind kind = Kind::indicator;
    ZGrid z_grid;
    Centering centering;
    std::vector<double> f_table; // residual_indicator: F(z) per grid point; empty = empirical F of the y part
    double member_scale = 1.0;   // evaluates member_scale * phi_z

    void validate() const;
};

// Data holder matching the family kind.
struct EmpSample {
    std::vector<double> points;                  // indicator
    std::vector<double> errors, lags;            // residual_indicator: (e_i, y_i)
    std::vector<double> responses;               // response_indicator
    std::vector<std::vector<double>> regressors; // response_indicator

    static EmpSample univariate(std::vector<double> values);
    static EmpSample pairs(std::vector<double> errors, std::vector<double> lags);
    static EmpSample regression(const RegressionSample& s);

    [[nodiscard]] std::size_t size(ThresholdFamily::Kind kind) const;
};

struct ProcessPath {
    std::vector<double> s_grid;
    ZGrid z_grid;
    Matrix values; // rows indexed by s, columns by z
    std::size_t n = 0;

    [[nodiscard]] double value(std::size_t si, std::size_t zj) const { return values(si, zj); }
    // Long format: header "s,z,value".
    void write_csv(std::ostream& os) const;
};

// G_n(s, phi_z) = n^{-1/2} sum_{i <= floor(n s)} (phi_z(X_i) - centering(z)),
// computed with one cumulative-sum pass per z column.
ProcessPath eval_process(const ThresholdFamily& family, const EmpSample& data,
                         std::span<const double> s_grid);

// Family members for the semi-norm/semi-metric operations.
struct FamilyMember {
    enum class Kind { zero, identity, indicator };
    Kind kind = Kind::indicator;
    double z = 0.0;

    static FamilyMember zero() { return {Kind::zero, 0.0}; }
    static FamilyMember identity() { return {Kind::identity, 0.0}; }
    static FamilyMember indicator(double z) { return {Kind::indicator, z}; }

    [[nodiscard]] double eval(double y) const;
};

// rho(phi) = E[phi(X)^2]^{1/2}; analytic under catalog laws, plug-in under the
// empirical law.
double rho_norm(const FamilyMember& phi, const Law& law);

// d(phi, psi) = E[|phi - psi|^{Q(2+gamma)/2}]^{(1/Q)(2/(2+gamma))}. Symmetric
// and nonnegative with d(phi, phi) = 0; a triangle inequality is not claimed.
double d_metric(const FamilyMember& phi, const FamilyMember& psi, const Law& law,
                int q, double gamma);

// Sorted unique values plus one sentinel beyond each extreme: the exact
// evaluation set for step functions of z.
std::vector<double> jump_grid(std::span<const double> values);

} // namespace seqemp
