#pragma once

#include <cstddef>
#include <vector>

namespace tcx {

// Dense row-major real matrix. Small sizes only.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<double>& data() const { return data_; }

    std::vector<double> column(std::size_t j) const;
    std::vector<double> apply(const std::vector<double>& v) const;

    double frobenius_norm() const;
    double max_asymmetry() const;
    double trace() const;

    bool operator==(const Matrix& o) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

struct EigenSystem {
    std::vector<double> values;   // ascending
    Matrix vectors;               // column j pairs with values[j]
};

// Cyclic Jacobi. Throws ContractError if the input is not symmetric to `sym_tol` (relative).
EigenSystem jacobi_eigen(const Matrix& a, double sym_tol = 1e-14);

double dot(const std::vector<double>& a, const std::vector<double>& b);
double norm(const std::vector<double>& a);
void normalize(std::vector<double>& a);

// Sign convention: first component with |x| > tol made positive.
void fix_sign(std::vector<double>& v, double tol = 1e-12);

}  // namespace tcx
