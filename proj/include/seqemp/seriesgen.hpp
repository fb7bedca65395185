// Seeded data generators: the two-regime threshold model, the regression
// model with optional mean changepoint, and the one-dependent martingale
// difference innovations. All generators are pure maps of (parameters, seed).
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "seqemp/rng.hpp"
#include "seqemp/series.hpp"

namespace seqemp {

// Two-regime mean model: Y_t = mu1 + eps_t if Y_{t-1} <= threshold, else
// Y_t = mu2 + eps_t. Y_0 defaults to mu1 + eps_0 (equals the stationary law
// under mu1 == mu2); y0_override fixes the starting value instead, and
// burn_in > 0 discards initial transitions before recording.
UnivariateSeries gen_setar(int n, double mu1, double mu2, double threshold,
                           const Innovation& innovation, std::uint64_t seed,
                           int burn_in = 0,
                           std::optional<double> y0_override = std::nullopt);

// Built-in mean/scale function catalog. Functions of x act through the
// coordinate mean when d > 1.
struct FnDescriptor {
    enum class Kind { constant, linear, sinusoid };
    Kind kind = Kind::constant;
    double a = 1.0, b = 0.0, omega = 1.0;

    static FnDescriptor constant(double value) { return {Kind::constant, 0.0, value, 1.0}; }
    static FnDescriptor linear(double a, double b = 0.0) { return {Kind::linear, a, b, 1.0}; }
    static FnDescriptor sinusoid(double a, double omega, double b = 0.0) {
        return {Kind::sinusoid, a, b, omega};
    }
    [[nodiscard]] double eval(std::span<const double> x) const;
    [[nodiscard]] std::string name() const;
};

struct RegressionSpec {
    int n = 0;
    int d = 1;
    FnDescriptor mean_fn = FnDescriptor::constant(0.0);
    FnDescriptor scale_fn = FnDescriptor::constant(1.0);
    enum class RegressorLaw { uniform_cube, gaussian } regressor_law = RegressorLaw::uniform_cube;
    Innovation innovation = Innovation::gaussian();
    // Changepoint variant: mean switches to mean_fn_after for i > floor(theta*n).
    std::optional<FnDescriptor> mean_fn_after;
    double theta = 0.5;
};

// Y_t = m(X_t) + sigma(X_t) * eps_t with i.i.d. regressors independent of the
// innovation process. scale values must be nonnegative (zero gives the
// noiseless model); negative scale is an error.
RegressionSample gen_regression(const RegressionSpec& spec, std::uint64_t seed);

// eps_t = eta_t * g(eta_{t-1}) with eta i.i.d. standard normal and
// g(x) = a*(1 + 0.5*tanh(x)), a normalized so E[eps^2] = 1. The sequence is a
// strictly stationary 1-dependent martingale difference.
std::vector<double> gen_mds_innovations(int n, std::uint64_t seed);

// The normalization constant a of the mds construction.
double mds_scale_constant();

// Stateful innovation stream with one draw per call; mds1 carries eta_{t-1}.
class InnovationStream {
public:
    InnovationStream(const Innovation& spec, CounterRng rng);
    double next();

private:
    Innovation spec_;
    CounterRng rng_;
    double eta_prev_ = 0.0;
    double t_scale_ = 1.0;
};

} // namespace seqemp
