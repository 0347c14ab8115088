#include "frnorm/linalg.hpp"

#include "frnorm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace frnorm {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Complex{}) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_)
        throw DimensionError("matrix data has " + std::to_string(entries_.size()) +
                             " entries, expected " + std::to_string(rows_ * cols_));
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
    entries_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_)
            throw DimensionError("ragged matrix literal");
        entries_.insert(entries_.end(), row.begin(), row.end());
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
    ComplexMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i)
        m(i, i) = diag[i];
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            out(j, i) = std::conj((*this)(i, j));
    return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            out(j, i) = (*this)(i, j);
    return out;
}

Complex ComplexMatrix::trace() const {
    if (!is_square())
        throw DimensionError("trace of a non-square matrix");
    Complex t{};
    for (std::size_t i = 0; i < rows_; ++i)
        t += (*this)(i, i);
    return t;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& z : entries_)
        m = std::max(m, std::abs(z));
    return m;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& z : entries_)
        s += std::norm(z);
    return std::sqrt(s);
}

bool ComplexMatrix::all_finite() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Complex& z) {
        return std::isfinite(z.real()) && std::isfinite(z.imag());
    });
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw DimensionError("matrix sum of mismatched shapes");
    for (std::size_t i = 0; i < entries_.size(); ++i)
        entries_[i] += other.entries_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw DimensionError("matrix difference of mismatched shapes");
    for (std::size_t i = 0; i < entries_.size(); ++i)
        entries_[i] -= other.entries_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scalar) {
    for (auto& z : entries_)
        z *= scalar;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_)
        throw DimensionError("matrix product of incompatible shapes " + std::to_string(a.rows_) + "x" +
                             std::to_string(a.cols_) + " and " + std::to_string(b.rows_) + "x" +
                             std::to_string(b.cols_));
    ComplexMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{})
                continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                out(i, j) += aik * b(k, j);
        }
    return out;
}

ComplexMatrix gram(const ComplexMatrix& a) {
    ComplexMatrix out(a.cols(), a.cols());
    for (std::size_t i = 0; i < a.cols(); ++i)
        for (std::size_t j = i; j < a.cols(); ++j) {
            Complex s{};
            for (std::size_t k = 0; k < a.rows(); ++k)
                s += std::conj(a(k, i)) * a(k, j);
            out(i, j) = s;
            out(j, i) = std::conj(s);
        }
    for (std::size_t i = 0; i < a.cols(); ++i)
        out(i, i) = out(i, i).real();
    return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError("comparison of mismatched shapes");
    double m = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i)
        m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
    return m;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
    if (!m.is_square())
        return false;
    const double scale = m.max_abs();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i; j < m.cols(); ++j)
            if (std::abs(m(i, j) - std::conj(m(j, i))) > tol * scale)
                return false;
    return true;
}

namespace {

void require_square_finite(const ComplexMatrix& m, const char* what) {
    if (!m.is_square())
        throw DimensionError(std::string(what) + " needs a square matrix, got " + std::to_string(m.rows()) +
                             "x" + std::to_string(m.cols()));
    if (!m.all_finite())
        throw ValidationError(std::string(what) + ": non-finite matrix entry");
}

// Cyclic Jacobi on a Hermitian matrix. Each rotation first removes the phase
// of a_pq and then applies the classical real rotation.
HermitianEigen jacobi(ComplexMatrix a, bool want_vectors) {
    const std::size_t n = a.rows();
    ComplexMatrix v = want_vectors ? ComplexMatrix::identity(n) : ComplexMatrix{};

    // Symmetrize so the rotations see an exactly Hermitian matrix.
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = a(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex h = 0.5 * (a(i, j) + std::conj(a(j, i)));
            a(i, j) = h;
            a(j, i) = std::conj(h);
        }
    }

    int sweep = 0;
    for (;; ++sweep) {
        double off = 0.0, diag = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                (i == j ? diag : off) += std::norm(a(i, j));
        off = std::sqrt(off);
        diag = std::sqrt(diag);
        if (off == 0.0 || off < 1e-14 * diag)
            break;
        if (sweep >= kJacobiMaxSweeps)
            throw ConvergenceError("Jacobi eigensolver did not converge in " + std::to_string(kJacobiMaxSweeps) +
                                   " sweeps");

        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex b = a(p, q);
                const double absb = std::abs(b);
                if (absb == 0.0)
                    continue;
                const Complex phase = b / absb;
                const Complex phase_c = std::conj(phase);
                const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * absb);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // A <- A R with R = [[c, s], [-s conj(e), c conj(e)]]
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * phase_c * akq;
                    a(k, q) = s * akp + c * phase_c * akq;
                }
                // A <- R^* A
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * phase * aqk;
                    a(q, k) = s * apk + c * phase * aqk;
                }
                a(p, q) = a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                if (want_vectors)
                    for (std::size_t k = 0; k < n; ++k) {
                        const Complex vkp = v(k, p), vkq = v(k, q);
                        v(k, p) = c * vkp - s * phase_c * vkq;
                        v(k, q) = s * vkp + c * phase_c * vkq;
                    }
            }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    HermitianEigen out;
    out.values.reserve(n);
    for (auto i : order)
        out.values.push_back(a(i, i).real());
    if (want_vectors) {
        out.vectors = ComplexMatrix(n, n);
        for (std::size_t col = 0; col < n; ++col)
            for (std::size_t k = 0; k < n; ++k)
                out.vectors(k, col) = v(k, order[col]);
    }
    return out;
}

void require_hermitian(const ComplexMatrix& m) {
    if (!is_hermitian(m))
        throw SymmetryError("matrix is not Hermitian within tolerance");
}

} // namespace

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
    require_square_finite(m, "hermitian_eigenvalues");
    require_hermitian(m);
    return jacobi(m, false).values;
}

HermitianEigen hermitian_eigen(const ComplexMatrix& m) {
    require_square_finite(m, "hermitian_eigen");
    require_hermitian(m);
    return jacobi(m, true);
}

double operator_norm(const ComplexMatrix& m) {
    require_square_finite(m, "operator_norm");
    if (m.max_abs() == 0.0)
        return 0.0;
    if (is_hermitian(m)) {
        const auto ev = jacobi(m, false).values;
        return std::max(std::abs(ev.front()), std::abs(ev.back()));
    }
    const auto ev = jacobi(gram(m), false).values;
    return std::sqrt(std::max(0.0, ev.back()));
}

bool is_positive_semidefinite(const ComplexMatrix& m) {
    require_square_finite(m, "is_positive_semidefinite");
    if (!is_hermitian(m))
        return false;
    if (m.max_abs() == 0.0)
        return true;
    const auto ev = jacobi(m, false).values;
    const double norm = std::max(std::abs(ev.front()), std::abs(ev.back()));
    return ev.front() >= -kPositivitySlack * std::max(1.0, norm);
}

bool is_unitary(const ComplexMatrix& u, double tol) {
    if (!u.is_square())
        return false;
    return max_abs_diff(gram(u), ComplexMatrix::identity(u.rows())) <= tol;
}

ComplexMatrix random_gaussian(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    ComplexMatrix m(rows, cols);
    for (auto& z : m.entries()) {
        const double re = normal(rng);
        const double im = normal(rng);
        z = {re, im};
    }
    return m;
}

ComplexMatrix random_unitary(std::size_t n, std::mt19937_64& rng) {
    ComplexMatrix q = random_gaussian(n, n, rng);
    // Two passes of modified Gram-Schmidt keep orthogonality at machine precision.
    for (int pass = 0; pass < 2; ++pass)
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t i = 0; i < j; ++i) {
                Complex dot{};
                for (std::size_t k = 0; k < n; ++k)
                    dot += std::conj(q(k, i)) * q(k, j);
                for (std::size_t k = 0; k < n; ++k)
                    q(k, j) -= dot * q(k, i);
            }
            double norm = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                norm += std::norm(q(k, j));
            norm = std::sqrt(norm);
            for (std::size_t k = 0; k < n; ++k)
                q(k, j) /= norm;
        }
    return q;
}

} // namespace frnorm
