#include "frnorm/expectation.hpp"

#include "frnorm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace frnorm {

namespace {

void require_compatible(const StandardSubalgebra& b, const TracialWeight& v, const AlgebraElement& a) {
    if (!(b.shape() == v.shape()))
        throw ShapeError("weight shape does not match the subalgebra");
    if (!(b.shape() == a.shape()))
        throw ShapeError("element shape does not match the subalgebra");
}

} // namespace

std::vector<ComplexMatrix> expectation_blocks(const StandardSubalgebra& b, const TracialWeight& v,
                                              const AlgebraElement& a) {
    require_compatible(b, v, a);
    std::vector<ComplexMatrix> blocks;
    blocks.reserve(b.group_count());
    for (std::size_t g = 0; g < b.group_count(); ++g)
        blocks.emplace_back(b.group_block_size(g), b.group_block_size(g));
    for (const auto& e : b.basis()) {
        Complex num{};
        double den = 0.0;
        for (const auto& s : e.support) {
            const double w = v.density(s.summand);
            num += w * a[s.summand](s.row, s.col);
            den += w;
        }
        blocks[e.group](e.p, e.q) = num / den;
    }
    return blocks;
}

AlgebraElement cond_expect(const StandardSubalgebra& b, const TracialWeight& v, const AlgebraElement& a) {
    return embed(b, expectation_blocks(b, v, a));
}

AlgebraElement cond_expect_gram(const StandardSubalgebra& b, const TracialWeight& v, const AlgebraElement& a) {
    require_compatible(b, v, a);
    auto out = AlgebraElement::zero(b.shape());
    for (const auto& e : b.basis()) {
        const auto basis_elem = e.to_element(b.shape());
        const auto dual = basis_elem.adjoint();
        const Complex num = trace_state(v, dual * a);
        const Complex den = trace_state(v, dual * basis_elem);
        out += (num / den) * basis_elem;
    }
    return out;
}

double fr_norm_squared(const StandardSubalgebra& b, const TracialWeight& v, const AlgebraElement& a) {
    double m = 0.0;
    for (const auto& block : expectation_blocks(b, v, gram(a)))
        m = std::max(m, operator_norm(block));
    return m;
}

double fr_norm(const StandardSubalgebra& b, const TracialWeight& v, const AlgebraElement& a) {
    return std::sqrt(fr_norm_squared(b, v, a));
}

double quotient_seminorm(const StandardSubalgebra& b, const TracialWeight& v, const AlgebraElement& a) {
    return fr_norm(b, v, a - cond_expect(b, v, a));
}

AlgebraElement cond_expect(const ConjugatedSubalgebra& c, const TracialWeight& v, const AlgebraElement& a) {
    return c.conjugate(cond_expect(c.base(), v, c.unconjugate(a)));
}

double fr_norm_squared(const ConjugatedSubalgebra& c, const TracialWeight& v, const AlgebraElement& a) {
    return element_norm(cond_expect(c, v, gram(a)));
}

double fr_norm(const ConjugatedSubalgebra& c, const TracialWeight& v, const AlgebraElement& a) {
    return std::sqrt(fr_norm_squared(c, v, a));
}

double quotient_seminorm(const ConjugatedSubalgebra& c, const TracialWeight& v, const AlgebraElement& a) {
    return fr_norm(c, v, a - cond_expect(c, v, a));
}

MonomialUnitary::MonomialUnitary(std::vector<std::size_t> target, std::vector<Complex> phase)
    : target_(std::move(target)), phase_(std::move(phase)) {
    if (target_.size() != phase_.size())
        throw UnitarityError("monomial unitary needs one phase per column");
    std::vector<bool> hit(target_.size(), false);
    for (auto t : target_) {
        if (t >= target_.size() || hit[t])
            throw UnitarityError("monomial unitary targets are not a permutation");
        hit[t] = true;
    }
    for (const auto& p : phase_)
        if (std::abs(std::abs(p) - 1.0) > 1e-12)
            throw UnitarityError("monomial unitary phase is not of modulus 1");
}

MonomialUnitary MonomialUnitary::identity(std::size_t n) {
    std::vector<std::size_t> t(n);
    std::iota(t.begin(), t.end(), std::size_t{0});
    return {std::move(t), std::vector<Complex>(n, 1.0)};
}

bool MonomialUnitary::is_identity(double tol) const {
    for (std::size_t j = 0; j < target_.size(); ++j)
        if (target_[j] != j || std::abs(phase_[j] - 1.0) > tol)
            return false;
    return true;
}

ComplexMatrix MonomialUnitary::to_matrix() const {
    ComplexMatrix m(size(), size());
    for (std::size_t j = 0; j < size(); ++j)
        m(target_[j], j) = phase_[j];
    return m;
}

ComplexMatrix MonomialUnitary::conjugate(const ComplexMatrix& x) const {
    if (x.rows() != size() || x.cols() != size())
        throw DimensionError("monomial conjugation of a mismatched matrix");
    ComplexMatrix y(size(), size());
    for (std::size_t a = 0; a < size(); ++a)
        for (std::size_t b = 0; b < size(); ++b)
            y(target_[a], target_[b]) = phase_[a] * x(a, b) * std::conj(phase_[b]);
    return y;
}

const char* stage_kind_name(StageKind kind) {
    switch (kind) {
    case StageKind::block_phases:
        return "block-phases";
    case StageKind::circulant_shifts:
        return "circulant-shifts";
    case StageKind::block_permutations:
        return "block-permutations";
    }
    return "unknown";
}

ComplexMatrix mean_of_conjugates(std::span<const MonomialUnitary> family, const ComplexMatrix& x) {
    if (family.empty())
        throw ValidationError("empty conjugation family");
    ComplexMatrix sum(x.rows(), x.cols());
    for (const auto& u : family)
        sum += u.conjugate(x);
    sum *= 1.0 / static_cast<double>(family.size());
    return sum;
}

namespace {

struct FlatSlot {
    std::size_t summand;
    std::size_t start; // absolute row in the flattened embedding
    BlockTerm term;
};

std::vector<FlatSlot> flat_slots(const StandardSubalgebra& b, std::size_t k) {
    std::vector<FlatSlot> out;
    const auto& part = b.partition(k);
    for (std::size_t i = 0; i < part.length(); ++i)
        out.push_back({k, b.shape().offset(k) + part.offset(i), part[i]});
    return out;
}

PipelineStage block_phase_stage(const StandardSubalgebra& b) {
    const auto& shape = b.shape();
    const auto dim = shape.total_dim();
    std::size_t r = 1;
    for (const auto& part : b.partitions())
        r = std::lcm(r, part.block_count());

    // Per row: its summand's block count and the phase step omega_k^beta.
    std::vector<std::size_t> cycle(dim);
    std::vector<Complex> step(dim);
    for (std::size_t k = 0; k < shape.summands(); ++k) {
        const auto rk = b.partition(k).block_count();
        std::size_t beta = 0;
        for (const auto& slot : flat_slots(b, k))
            for (std::size_t t = 0; t < slot.term.multiplicity; ++t, ++beta) {
                const auto w = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(beta) /
                                                   static_cast<double>(rk));
                for (std::size_t row = 0; row < slot.term.size; ++row) {
                    const auto at = slot.start + t * slot.term.size + row;
                    cycle[at] = rk;
                    step[at] = w;
                }
            }
    }

    PipelineStage stage{StageKind::block_phases, {}, {}};
    std::vector<std::size_t> ident(dim);
    std::iota(ident.begin(), ident.end(), std::size_t{0});
    std::vector<Complex> phase(dim, 1.0);
    for (std::size_t i = 0; i < r; ++i) {
        if (i > 0)
            for (std::size_t a = 0; a < dim; ++a)
                phase[a] = (i % cycle[a] == 0) ? Complex(1.0) : phase[a] * step[a];
        stage.family.emplace_back(ident, phase);
    }
    return stage;
}

PipelineStage circulant_stage(const StandardSubalgebra& b) {
    const auto dim = b.shape().total_dim();
    std::size_t ell = 1;
    for (const auto& part : b.partitions())
        for (const auto& term : part.terms())
            ell = std::lcm(ell, term.multiplicity);

    PipelineStage stage{StageKind::circulant_shifts, {}, {}};
    for (std::size_t j = 0; j < ell; ++j) {
        std::vector<std::size_t> target(dim);
        for (std::size_t k = 0; k < b.shape().summands(); ++k)
            for (const auto& slot : flat_slots(b, k)) {
                const auto n = slot.term.size;
                const auto span = n * slot.term.multiplicity;
                const auto shift = (j % slot.term.multiplicity) * n;
                for (std::size_t col = 0; col < span; ++col)
                    target[slot.start + col] = slot.start + (col + span - shift) % span;
            }
        stage.family.emplace_back(std::move(target), std::vector<Complex>(dim, 1.0));
    }
    return stage;
}

PipelineStage permutation_stage(const StandardSubalgebra& b, const TracialWeight& v) {
    const auto& shape = b.shape();
    const auto dim = shape.total_dim();
    std::size_t m = 1;
    std::vector<std::vector<std::size_t>> starts(b.group_count());
    for (std::size_t g = 0; g < b.group_count(); ++g) {
        for (const auto& o : b.occurrences(g))
            starts[g].push_back(shape.offset(o.summand) + o.offset);
        m = std::lcm(m, starts[g].size());
    }

    PipelineStage stage{StageKind::block_permutations, {}, {}};
    for (std::size_t k = 0; k < shape.summands(); ++k)
        stage.summand_scale.push_back(v.density(k));
    for (std::size_t s = 0; s < m; ++s) {
        std::vector<std::size_t> target(dim);
        for (std::size_t g = 0; g < b.group_count(); ++g) {
            const auto& occ = starts[g];
            const auto n = b.group_block_size(g);
            for (std::size_t j = 0; j < occ.size(); ++j)
                for (std::size_t p = 0; p < n; ++p)
                    target[occ[(j + s) % occ.size()] + p] = occ[j] + p;
        }
        stage.family.emplace_back(std::move(target), std::vector<Complex>(dim, 1.0));
    }
    return stage;
}

} // namespace

ConjugationPipeline pipeline_for(const StandardSubalgebra& b, const TracialWeight& v) {
    if (!(b.shape() == v.shape()))
        throw ShapeError("weight shape does not match the subalgebra");
    ConjugationPipeline p{b.shape(), {}, 1.0};
    p.stages.push_back(block_phase_stage(b));
    p.stages.push_back(circulant_stage(b));
    if (!b.is_trivially_grouped()) {
        p.stages.push_back(permutation_stage(b, v));
        double gamma = 0.0;
        for (std::size_t g = 0; g < b.group_count(); ++g) {
            double sum = 0.0;
            for (const auto& o : b.occurrences(g))
                sum += v.density(o.summand);
            gamma = std::max(gamma, sum);
        }
        p.final_scale = 1.0 / gamma;
    }
    return p;
}

ComplexMatrix apply_stage(const ConjugationPipeline& pipeline, const PipelineStage& stage, const ComplexMatrix& x) {
    if (stage.summand_scale.empty())
        return mean_of_conjugates(stage.family, x);
    const auto& shape = pipeline.shape;
    if (stage.summand_scale.size() != shape.summands())
        throw ShapeError("stage scale does not match the algebra");
    std::vector<double> root(shape.total_dim());
    for (std::size_t k = 0; k < shape.summands(); ++k)
        for (std::size_t i = 0; i < shape.dim(k); ++i)
            root[shape.offset(k) + i] = std::sqrt(stage.summand_scale[k]);
    auto y = x;
    for (std::size_t a = 0; a < y.rows(); ++a)
        for (std::size_t c = 0; c < y.cols(); ++c)
            y(a, c) *= root[a] * root[c];
    return mean_of_conjugates(stage.family, y);
}

ComplexMatrix apply_pipeline_flat(const ConjugationPipeline& pipeline, const ComplexMatrix& x) {
    if (x.rows() != pipeline.shape.total_dim() || x.cols() != pipeline.shape.total_dim())
        throw DimensionError("pipeline input does not match the algebra");
    auto y = x;
    for (const auto& stage : pipeline.stages)
        y = apply_stage(pipeline, stage, y);
    y *= pipeline.final_scale;
    return y;
}

AlgebraElement apply_pipeline(const ConjugationPipeline& pipeline, const AlgebraElement& x) {
    return unflatten(pipeline.shape, apply_pipeline_flat(pipeline, flatten(x)));
}

} // namespace frnorm
