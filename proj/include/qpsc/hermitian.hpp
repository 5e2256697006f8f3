#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace qpsc {

/// Dense square complex matrix, row-major.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t n) : n_(n), data_(n * n) {}

    std::size_t size() const noexcept { return n_; }

    std::complex<double>& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    const std::complex<double>& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

    const std::vector<std::complex<double>>& data() const noexcept { return data_; }

    double frobenius_norm() const;
    double max_abs() const;

    /// max |A_ij - conj(A_ji)| / max |A|; zero for the zero matrix.
    double hermiticity_defect() const;

    std::complex<double> trace() const;

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<std::complex<double>> data_;
};

class NotHermitian : public std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Eigensystem {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // column k belongs to values[k]
};

inline constexpr double default_hermitian_tolerance = 1e-10;

/// Cyclic complex Jacobi. Rotations are applied until every off-diagonal
/// modulus is below 1e-12 * ||A||_F. Each eigenvector is normalized and its
/// largest-modulus entry rotated to be real and positive.
/// Throws NotHermitian when the relative hermiticity defect exceeds `tol`.
Eigensystem hermitian_eigensystem(const ComplexMatrix& a, double tol = default_hermitian_tolerance);

/// Eigenvalues only, ascending.
std::vector<double> exact_eigenvalues(const ComplexMatrix& a, double tol = default_hermitian_tolerance);

}  // namespace qpsc
