#include "frnorm/algebra.hpp"

#include "frnorm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace frnorm {

AlgebraShape::AlgebraShape(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
    if (dims_.empty())
        throw ShapeError("an algebra needs at least one summand");
    offsets_.reserve(dims_.size());
    for (auto d : dims_) {
        if (d == 0)
            throw ShapeError("summand dimensions must be positive");
        offsets_.push_back(total_);
        total_ += d;
    }
}

AlgebraElement::AlgebraElement(AlgebraShape shape, std::vector<ComplexMatrix> summands)
    : shape_(std::move(shape)), parts_(std::move(summands)) {
    if (parts_.size() != shape_.summands())
        throw ShapeError("element has " + std::to_string(parts_.size()) + " summands, shape has " +
                         std::to_string(shape_.summands()));
    for (std::size_t k = 0; k < parts_.size(); ++k)
        if (parts_[k].rows() != shape_.dim(k) || parts_[k].cols() != shape_.dim(k))
            throw ShapeError("summand " + std::to_string(k + 1) + " is " + std::to_string(parts_[k].rows()) + "x" +
                             std::to_string(parts_[k].cols()) + ", expected " + std::to_string(shape_.dim(k)) +
                             "x" + std::to_string(shape_.dim(k)));
}

AlgebraElement AlgebraElement::zero(const AlgebraShape& shape) {
    std::vector<ComplexMatrix> parts;
    for (auto d : shape.dims())
        parts.emplace_back(d, d);
    return {shape, std::move(parts)};
}

AlgebraElement AlgebraElement::identity(const AlgebraShape& shape) {
    std::vector<ComplexMatrix> parts;
    for (auto d : shape.dims())
        parts.push_back(ComplexMatrix::identity(d));
    return {shape, std::move(parts)};
}

AlgebraElement AlgebraElement::adjoint() const {
    std::vector<ComplexMatrix> parts;
    parts.reserve(parts_.size());
    for (const auto& p : parts_)
        parts.push_back(p.adjoint());
    return {shape_, std::move(parts)};
}

namespace {

void require_same_shape(const AlgebraShape& a, const AlgebraShape& b, const char* what) {
    if (!(a == b))
        throw ShapeError(std::string(what) + ": algebra shapes differ");
}

} // namespace

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& other) {
    require_same_shape(shape_, other.shape_, "element sum");
    for (std::size_t k = 0; k < parts_.size(); ++k)
        parts_[k] += other.parts_[k];
    return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& other) {
    require_same_shape(shape_, other.shape_, "element difference");
    for (std::size_t k = 0; k < parts_.size(); ++k)
        parts_[k] -= other.parts_[k];
    return *this;
}

AlgebraElement& AlgebraElement::operator*=(Complex scalar) {
    for (auto& p : parts_)
        p *= scalar;
    return *this;
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
    require_same_shape(a.shape_, b.shape_, "element product");
    std::vector<ComplexMatrix> parts;
    parts.reserve(a.parts_.size());
    for (std::size_t k = 0; k < a.parts_.size(); ++k)
        parts.push_back(a.parts_[k] * b.parts_[k]);
    return {a.shape_, std::move(parts)};
}

AlgebraElement gram(const AlgebraElement& a) {
    std::vector<ComplexMatrix> parts;
    parts.reserve(a.summands());
    for (const auto& p : a.parts())
        parts.push_back(gram(p));
    return {a.shape(), std::move(parts)};
}

double element_norm(const AlgebraElement& a) {
    double m = 0.0;
    for (const auto& p : a.parts())
        m = std::max(m, operator_norm(p));
    return m;
}

double max_abs_diff(const AlgebraElement& a, const AlgebraElement& b) {
    require_same_shape(a.shape(), b.shape(), "element comparison");
    double m = 0.0;
    for (std::size_t k = 0; k < a.summands(); ++k)
        m = std::max(m, max_abs_diff(a[k], b[k]));
    return m;
}

bool is_unitary(const AlgebraElement& u, double tol) {
    return std::all_of(u.parts().begin(), u.parts().end(),
                       [tol](const ComplexMatrix& p) { return is_unitary(p, tol); });
}

bool is_positive_semidefinite(const AlgebraElement& a) {
    return std::all_of(a.parts().begin(), a.parts().end(),
                       [](const ComplexMatrix& p) { return is_positive_semidefinite(p); });
}

AlgebraElement matrix_unit(const AlgebraShape& shape, std::size_t k, std::size_t i, std::size_t j) {
    if (k >= shape.summands())
        throw IndexError("summand index " + std::to_string(k) + " out of range");
    if (i >= shape.dim(k) || j >= shape.dim(k))
        throw IndexError("entry (" + std::to_string(i) + "," + std::to_string(j) + ") out of range for summand " +
                         std::to_string(k));
    auto e = AlgebraElement::zero(shape);
    e[k](i, j) = 1.0;
    return e;
}

TracialWeight::TracialWeight(AlgebraShape shape, std::vector<double> weights)
    : shape_(std::move(shape)), weights_(std::move(weights)) {
    if (weights_.size() != shape_.summands())
        throw ShapeError("weight vector has " + std::to_string(weights_.size()) + " entries, algebra has " +
                         std::to_string(shape_.summands()) + " summands");
    double sum = 0.0;
    for (double w : weights_) {
        if (!(w > 0.0) || !(w <= 1.0) || !std::isfinite(w))
            throw WeightError("weights must lie in (0,1]");
        sum += w;
    }
    if (std::abs(sum - 1.0) > kSumTolerance)
        throw WeightError("weights sum to " + std::to_string(sum) + ", expected 1");
}

TracialWeight TracialWeight::normalized(AlgebraShape shape, std::vector<double> weights) {
    double sum = 0.0;
    for (double w : weights) {
        if (!(w > 0.0) || !std::isfinite(w))
            throw WeightError("weights must be positive and finite");
        sum += w;
    }
    for (auto& w : weights)
        w /= sum;
    return {std::move(shape), std::move(weights)};
}

TracialWeight TracialWeight::uniform_trace(const AlgebraShape& shape) {
    if (shape.summands() != 1)
        throw ShapeError("the normalized trace weight (1) needs a single summand");
    return {shape, {1.0}};
}

TracialWeight TracialWeight::proportional(const AlgebraShape& shape) {
    std::vector<double> w(shape.dims().begin(), shape.dims().end());
    return normalized(shape, std::move(w));
}

Complex trace_state(const TracialWeight& v, const AlgebraElement& a) {
    require_same_shape(v.shape(), a.shape(), "trace_state");
    Complex t{};
    for (std::size_t k = 0; k < a.summands(); ++k)
        t += v.density(k) * a[k].trace();
    return t;
}

Complex inner_product(const TracialWeight& v, const AlgebraElement& a, const AlgebraElement& b) {
    require_same_shape(v.shape(), a.shape(), "inner_product");
    require_same_shape(a.shape(), b.shape(), "inner_product");
    // tau_v(B^* A) = sum_k (v_k/d_k) sum_ij conj(B_ij) A_ij
    Complex s{};
    for (std::size_t k = 0; k < a.summands(); ++k) {
        Complex part{};
        const auto ea = a[k].entries();
        const auto eb = b[k].entries();
        for (std::size_t idx = 0; idx < ea.size(); ++idx)
            part += std::conj(eb[idx]) * ea[idx];
        s += v.density(k) * part;
    }
    return s;
}

ComplexMatrix flatten(const AlgebraElement& a) {
    const auto& shape = a.shape();
    ComplexMatrix m(shape.total_dim(), shape.total_dim());
    for (std::size_t k = 0; k < a.summands(); ++k) {
        const auto off = shape.offset(k);
        for (std::size_t i = 0; i < shape.dim(k); ++i)
            for (std::size_t j = 0; j < shape.dim(k); ++j)
                m(off + i, off + j) = a[k](i, j);
    }
    return m;
}

AlgebraElement unflatten(const AlgebraShape& shape, const ComplexMatrix& m) {
    if (m.rows() != shape.total_dim() || m.cols() != shape.total_dim())
        throw DimensionError("flattened matrix does not match the algebra shape");
    std::vector<ComplexMatrix> parts;
    for (std::size_t k = 0; k < shape.summands(); ++k) {
        const auto off = shape.offset(k);
        ComplexMatrix p(shape.dim(k), shape.dim(k));
        for (std::size_t i = 0; i < shape.dim(k); ++i)
            for (std::size_t j = 0; j < shape.dim(k); ++j)
                p(i, j) = m(off + i, off + j);
        parts.push_back(std::move(p));
    }
    return {shape, std::move(parts)};
}

AlgebraElement random_gaussian_element(const AlgebraShape& shape, std::mt19937_64& rng) {
    std::vector<ComplexMatrix> parts;
    for (auto d : shape.dims())
        parts.push_back(random_gaussian(d, d, rng));
    return {shape, std::move(parts)};
}

AlgebraElement random_unitary_element(const AlgebraShape& shape, std::mt19937_64& rng) {
    std::vector<ComplexMatrix> parts;
    for (auto d : shape.dims())
        parts.push_back(random_unitary(d, rng));
    return {shape, std::move(parts)};
}

AlgebraElement random_positive_element(const AlgebraShape& shape, std::mt19937_64& rng) {
    return gram(random_gaussian_element(shape, rng));
}

} // namespace frnorm
