// Minimal dense matrix support: storage plus the jittered Cholesky
// factorization used for Gaussian limit simulation.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace seqemp {

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

    double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }
    [[nodiscard]] const std::vector<double>& data() const { return a_; }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<double> a_;
};

// Thrown when A + jitter*I is not positive definite; minor_index is the
// 1-based order of the first failing leading minor.
struct CholeskyFailure : std::runtime_error {
    CholeskyFailure(std::size_t minor, double jitter)
        : std::runtime_error("cholesky: leading minor " + std::to_string(minor) +
                             " not positive definite at jitter " + std::to_string(jitter)),
          minor_index(minor), jitter(jitter) {}
    std::size_t minor_index;
    double jitter;
};

// Lower-triangular factor of (A + jitter*I). A must be symmetric.
Matrix cholesky_lower(const Matrix& a, double jitter);

struct JitteredFactor {
    Matrix factor;
    double jitter = 0.0;
};

// Tries jitter 0, then escalates 1e-12 -> 1e-8 by factors of 10. Throws the
// last CholeskyFailure if even the maximal jitter fails.
JitteredFactor cholesky_with_escalation(const Matrix& a,
                                        double first_jitter = 1e-12,
                                        double max_jitter = 1e-8);

} // namespace seqemp
