#include "seqemp/linalg.hpp"

#include <cmath>

namespace seqemp {

Matrix cholesky_lower(const Matrix& a, double jitter) {
    if (a.rows() != a.cols()) {
        throw std::invalid_argument("cholesky_lower: matrix must be square");
    }
    const std::size_t n = a.rows();
    double scale = 1.0;
    for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::fabs(a(j, j)));
    const double pivot_tol = 1e-14 * scale;
    const double column_tol = 1e-7 * scale;

    Matrix l(n, n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        double d = a(j, j) + jitter;
        for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
        if (!std::isfinite(d) || d < -pivot_tol) {
            throw CholeskyFailure(j + 1, jitter);
        }
        if (d > pivot_tol) {
            l(j, j) = std::sqrt(d);
            for (std::size_t i = j + 1; i < n; ++i) {
                double s = a(i, j);
                for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
                l(i, j) = s / l(j, j);
            }
        } else {
            // semidefinite pivot: valid only if the remaining column vanishes
            // (exact-zero rows, e.g. the bridge covariance at s = 1)
            l(j, j) = 0.0;
            for (std::size_t i = j + 1; i < n; ++i) {
                double s = a(i, j);
                for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
                if (std::fabs(s) > column_tol) {
                    throw CholeskyFailure(j + 1, jitter);
                }
                l(i, j) = 0.0;
            }
        }
    }
    return l;
}

JitteredFactor cholesky_with_escalation(const Matrix& a, double first_jitter, double max_jitter) {
    try {
        return {cholesky_lower(a, 0.0), 0.0};
    } catch (const CholeskyFailure&) {
        // fall through to jittered attempts
    }
    double jitter = first_jitter;
    while (true) {
        try {
            return {cholesky_lower(a, jitter), jitter};
        } catch (const CholeskyFailure&) {
            if (jitter >= max_jitter) throw;
            jitter *= 10.0;
            if (jitter > max_jitter) jitter = max_jitter;
        }
    }
}

} // namespace seqemp
