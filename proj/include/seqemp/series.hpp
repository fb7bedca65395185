// Core data records: univariate series, regression samples, mixing
// specifications and innovation descriptors.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace seqemp {

struct DegenerateDataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Y_0..Y_n, so every response Y_i (i = 1..n) has a lagged value Y_{i-1}.
struct UnivariateSeries {
    std::vector<double> values; // length n + 1
    std::size_t n = 0;
    std::string origin = "ingested";

    void validate() const;
    [[nodiscard]] double lag(std::size_t i) const { return values[i - 1]; }      // i in 1..n
    [[nodiscard]] double response(std::size_t i) const { return values[i]; }     // i in 1..n
};

struct RegressionSample {
    std::vector<double> responses;               // length n
    std::vector<std::vector<double>> regressors; // length n, each of dimension d
    std::size_t d = 1;
    std::string origin = "ingested";

    [[nodiscard]] std::size_t n() const { return responses.size(); }
    void validate() const;
};

// Parametric forms of the strong mixing coefficient alpha(t). alpha(0) = 1 by
// convention; values for t >= 1 are capped at 1/4.
struct MixingSpec {
    enum class Form { independent, m_dependent, polynomial, geometric };
    Form form = Form::independent;
    int m = 0;         // m_dependent
    double c = 0.0;    // polynomial / geometric prefactor
    double beta = 0.0; // polynomial decay exponent
    double rho = 0.5;  // geometric base, in (0,1)

    static MixingSpec independent() { return {}; }
    static MixingSpec m_dependent(int m);
    static MixingSpec polynomial(double c, double beta);
    static MixingSpec geometric(double c, double rho);

    void validate() const;
    [[nodiscard]] std::string name() const;
};

double alpha_of(const MixingSpec& spec, int t);

// Innovation descriptor for the generators. student_t is rescaled to variance
// sigma^2 and requires nu > moment_order so the configured absolute moment
// exists. mds1 is the bounded one-dependent martingale difference process
// eps_t = sigma * eta_t * g(eta_{t-1}); "none" is the degenerate eps == 0.
struct Innovation {
    enum class Kind { gaussian, student_t, mds1, none };
    Kind kind = Kind::gaussian;
    double sigma = 1.0;
    int nu = 0;
    int moment_order = 4;

    static Innovation gaussian(double sigma = 1.0) { return {Kind::gaussian, sigma, 0, 4}; }
    static Innovation student_t(int nu, double sigma = 1.0, int moment_order = 4) {
        return {Kind::student_t, sigma, nu, moment_order};
    }
    static Innovation mds1(double sigma = 1.0) { return {Kind::mds1, sigma, 0, 4}; }
    static Innovation none() { return {Kind::none, 0.0, 0, 4}; }

    void validate() const;
    [[nodiscard]] std::string name() const;
};

} // namespace seqemp
