// Catalog of reference laws used for analytic centering, quantile cut points
// and plug-in moment computations.
#pragma once

#include <string>
#include <vector>

#include "seqemp/rng.hpp"

namespace seqemp {

double normal_cdf(double x);
// Inverse of the standard normal CDF (Wichura's PPND16 rational approximation).
double normal_quantile(double p);

enum class LawKind { uniform01, gaussian01, empirical };

struct Law {
    LawKind kind = LawKind::uniform01;
    std::vector<double> sample; // empirical law only; kept sorted

    static Law uniform01() { return Law{LawKind::uniform01, {}}; }
    static Law gaussian01() { return Law{LawKind::gaussian01, {}}; }
    static Law empirical(std::vector<double> values);

    [[nodiscard]] bool analytic() const { return kind != LawKind::empirical; }

    [[nodiscard]] double cdf(double x) const;
    // For the empirical law this is the usual order-statistic inverse.
    [[nodiscard]] double quantile(double u) const;
    [[nodiscard]] double draw(CounterRng& rng) const;

    [[nodiscard]] std::string name() const;
    static Law from_name(const std::string& name);
};

} // namespace seqemp
