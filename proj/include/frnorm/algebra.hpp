#pragma once
//
// Direct sums of full matrix algebras M_{d_1} (+) ... (+) M_{d_N}, their
// elements, matrix units, and the faithful tracial states
//
//     tau_v(A) = sum_k (v_k / d_k) Tr(A^(k)).
//
// Summand and entry indices in the C++ API are 0-based. The JSON encodings
// (json_io.hpp) use 1-based indices.
//

#include "frnorm/linalg.hpp"

#include <cstddef>
#include <random>
#include <span>
#include <vector>

namespace frnorm {

class AlgebraShape {
public:
    AlgebraShape() = default;
    explicit AlgebraShape(std::vector<std::size_t> dims);

    std::size_t summands() const noexcept { return dims_.size(); }
    std::size_t dim(std::size_t k) const { return dims_.at(k); }
    std::span<const std::size_t> dims() const noexcept { return dims_; }
    // d_1 + ... + d_N: size of the block-diagonal embedding into M_d.
    std::size_t total_dim() const noexcept { return total_; }
    // Row/column offset of summand k inside the block-diagonal embedding.
    std::size_t offset(std::size_t k) const { return offsets_.at(k); }

    friend bool operator==(const AlgebraShape& a, const AlgebraShape& b) { return a.dims_ == b.dims_; }

private:
    std::vector<std::size_t> dims_;
    std::vector<std::size_t> offsets_;
    std::size_t total_ = 0;
};

class AlgebraElement {
public:
    AlgebraElement() = default;
    AlgebraElement(AlgebraShape shape, std::vector<ComplexMatrix> summands);

    static AlgebraElement zero(const AlgebraShape& shape);
    static AlgebraElement identity(const AlgebraShape& shape);

    const AlgebraShape& shape() const noexcept { return shape_; }
    std::size_t summands() const noexcept { return parts_.size(); }
    const ComplexMatrix& operator[](std::size_t k) const { return parts_.at(k); }
    ComplexMatrix& operator[](std::size_t k) { return parts_.at(k); }
    std::span<const ComplexMatrix> parts() const noexcept { return parts_; }

    AlgebraElement adjoint() const;

    AlgebraElement& operator+=(const AlgebraElement& other);
    AlgebraElement& operator-=(const AlgebraElement& other);
    AlgebraElement& operator*=(Complex scalar);

    friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
    friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
    friend AlgebraElement operator*(AlgebraElement a, Complex s) { return a *= s; }
    friend AlgebraElement operator*(Complex s, AlgebraElement a) { return a *= s; }
    friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);

    friend bool operator==(const AlgebraElement&, const AlgebraElement&) = default;

private:
    AlgebraShape shape_;
    std::vector<ComplexMatrix> parts_;
};

// Summand-wise A^* A.
AlgebraElement gram(const AlgebraElement& a);

// Max over summands of the summand operator norm (the C*-norm of the sum).
double element_norm(const AlgebraElement& a);

// Max entrywise deviation across summands.
double max_abs_diff(const AlgebraElement& a, const AlgebraElement& b);

bool is_unitary(const AlgebraElement& u, double tol = 1e-10);
bool is_positive_semidefinite(const AlgebraElement& a);

// E^(k)_{i,j}; throws IndexError when out of range.
AlgebraElement matrix_unit(const AlgebraShape& shape, std::size_t k, std::size_t i, std::size_t j);

class TracialWeight {
public:
    static constexpr double kSumTolerance = 1e-12;

    // Rejects weights outside (0,1] or not summing to 1 within kSumTolerance.
    TracialWeight(AlgebraShape shape, std::vector<double> weights);
    // Rescales positive weights to sum 1; the only path that renormalizes.
    static TracialWeight normalized(AlgebraShape shape, std::vector<double> weights);
    // v = (1) on a single full matrix algebra, i.e. tau = Tr / n.
    static TracialWeight uniform_trace(const AlgebraShape& shape);
    // v_k proportional to d_k: the restriction of the normalized trace on M_d.
    static TracialWeight proportional(const AlgebraShape& shape);

    const AlgebraShape& shape() const noexcept { return shape_; }
    double operator[](std::size_t k) const { return weights_.at(k); }
    std::span<const double> weights() const noexcept { return weights_; }
    // v_k / d_k
    double density(std::size_t k) const { return weights_.at(k) / static_cast<double>(shape_.dim(k)); }

private:
    AlgebraShape shape_;
    std::vector<double> weights_;
};

Complex trace_state(const TracialWeight& v, const AlgebraElement& a);

// <A, B> = tau_v(B^* A); linear in A, conjugate-linear in B.
Complex inner_product(const TracialWeight& v, const AlgebraElement& a, const AlgebraElement& b);

// Block-diagonal embedding into M_{d_1 + ... + d_N} and its inverse, which
// reads back the diagonal summand blocks.
ComplexMatrix flatten(const AlgebraElement& a);
AlgebraElement unflatten(const AlgebraShape& shape, const ComplexMatrix& m);

AlgebraElement random_gaussian_element(const AlgebraShape& shape, std::mt19937_64& rng);
AlgebraElement random_unitary_element(const AlgebraShape& shape, std::mt19937_64& rng);
// B^* B for Gaussian B: a random positive element.
AlgebraElement random_positive_element(const AlgebraShape& shape, std::mt19937_64& rng);

} // namespace frnorm
