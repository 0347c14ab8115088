#pragma once
//
// Dense complex matrix kernel: arithmetic, adjoints, a cyclic Jacobi
// eigensolver for Hermitian matrices, and the operator norm.
//

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <random>
#include <span>
#include <vector>

namespace frnorm {

using Complex = std::complex<double>;

class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
    // Row-major nested list, e.g. {{1, 2}, {2, 1}}.
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }
    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(std::span<const Complex> diag);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }
    bool empty() const noexcept { return entries_.empty(); }

    Complex& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    std::span<const Complex> entries() const noexcept { return entries_; }
    std::span<Complex> entries() noexcept { return entries_; }

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    Complex trace() const;

    // Largest |entry|.
    double max_abs() const;
    double frobenius_norm() const;
    bool all_finite() const;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(Complex scalar);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> entries_;
};

// A^* A without forming the adjoint explicitly.
ComplexMatrix gram(const ComplexMatrix& a);

// max |a_ij - b_ij|; shapes must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kPositivitySlack = 1e-10;
inline constexpr int kJacobiMaxSweeps = 100;

// True when ||M - M^*||_max <= tol * ||M||_max.
bool is_hermitian(const ComplexMatrix& m, double tol = kHermitianTolerance);

struct HermitianEigen {
    std::vector<double> values; // ascending
    ComplexMatrix vectors;      // column j is the eigenvector for values[j]
};

// Throws DimensionError for non-square input, SymmetryError when the input is
// not Hermitian within kHermitianTolerance, ConvergenceError after
// kJacobiMaxSweeps sweeps.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);
HermitianEigen hermitian_eigen(const ComplexMatrix& m);

// Largest singular value. Hermitian inputs use their spectrum directly,
// everything else goes through the Hermitian eigenproblem for M^*M.
double operator_norm(const ComplexMatrix& m);

bool is_positive_semidefinite(const ComplexMatrix& m);

// True when U^*U = I within tol (max-entry deviation).
bool is_unitary(const ComplexMatrix& u, double tol = 1e-10);

// Standard complex Gaussian entries: real and imaginary parts N(0, 1/2).
ComplexMatrix random_gaussian(std::size_t rows, std::size_t cols, std::mt19937_64& rng);

// Haar-distributed unitary via Gram-Schmidt on a Gaussian matrix.
ComplexMatrix random_unitary(std::size_t n, std::mt19937_64& rng);

} // namespace frnorm
