#pragma once
//
// Trace-preserving conditional expectations onto standard subalgebras, the
// norms they induce, and the mean-of-unitary-conjugates pipelines that bound
// those norms from below.
//

#include "frnorm/algebra.hpp"
#include "frnorm/subalgebra.hpp"

#include <cstddef>
#include <vector>

namespace frnorm {

// Coefficient matrices of P(A), one n_g x n_g matrix per group, so that
// cond_expect(B, v, A) == embed(B, expectation_blocks(B, v, A)).
std::vector<ComplexMatrix> expectation_blocks(const StandardSubalgebra& b, const TracialWeight& v,
                                              const AlgebraElement& a);

// Closed form: each basis coefficient is the v-weighted mean of A over the
// element's support.
AlgebraElement cond_expect(const StandardSubalgebra& b, const TracialWeight& v, const AlgebraElement& a);

// sum_b <A,b>/<b,b> b with the inner product evaluated from its definition.
// Slow; kept as a cross-check for cond_expect.
AlgebraElement cond_expect_gram(const StandardSubalgebra& b, const TracialWeight& v, const AlgebraElement& a);

// ||P(A^* A)||
double fr_norm_squared(const StandardSubalgebra& b, const TracialWeight& v, const AlgebraElement& a);
double fr_norm(const StandardSubalgebra& b, const TracialWeight& v, const AlgebraElement& a);
// fr_norm(A - P(A))
double quotient_seminorm(const StandardSubalgebra& b, const TracialWeight& v, const AlgebraElement& a);

// U P(U^* A U) U^*
AlgebraElement cond_expect(const ConjugatedSubalgebra& c, const TracialWeight& v, const AlgebraElement& a);
double fr_norm_squared(const ConjugatedSubalgebra& c, const TracialWeight& v, const AlgebraElement& a);
double fr_norm(const ConjugatedSubalgebra& c, const TracialWeight& v, const AlgebraElement& a);
double quotient_seminorm(const ConjugatedSubalgebra& c, const TracialWeight& v, const AlgebraElement& a);

// A unitary with one nonzero entry per column: column j holds phase[j] in
// row target[j].
class MonomialUnitary {
public:
    MonomialUnitary() = default;
    // Throws UnitarityError unless target is a permutation and every
    // |phase| = 1 within 1e-12.
    MonomialUnitary(std::vector<std::size_t> target, std::vector<Complex> phase);

    static MonomialUnitary identity(std::size_t n);

    std::size_t size() const noexcept { return target_.size(); }
    std::span<const std::size_t> target() const noexcept { return target_; }
    std::span<const Complex> phase() const noexcept { return phase_; }
    bool is_identity(double tol = 1e-12) const;

    ComplexMatrix to_matrix() const;
    // U X U^*
    ComplexMatrix conjugate(const ComplexMatrix& x) const;

private:
    std::vector<std::size_t> target_;
    std::vector<Complex> phase_;
};

enum class StageKind {
    block_phases,      // root-of-unity phases on the diagonal blocks
    circulant_shifts,  // cyclic shifts across repeated copies
    block_permutations // cyclic moves between identified blocks
};

const char* stage_kind_name(StageKind kind);

struct PipelineStage {
    StageKind kind = StageKind::block_phases;
    // Optional per-summand factor applied to the summand blocks before the
    // conjugation mean; empty means none.
    std::vector<double> summand_scale;
    std::vector<MonomialUnitary> family;
};

// Stages act on the block-diagonal embedding into M_{d_1+...+d_N}.
struct ConjugationPipeline {
    AlgebraShape shape;
    std::vector<PipelineStage> stages;
    double final_scale = 1.0;
};

// (1/s) sum_i U_i X U_i^*
ComplexMatrix mean_of_conjugates(std::span<const MonomialUnitary> family, const ComplexMatrix& x);

ConjugationPipeline pipeline_for(const StandardSubalgebra& b, const TracialWeight& v);

ComplexMatrix apply_stage(const ConjugationPipeline& pipeline, const PipelineStage& stage, const ComplexMatrix& x);
ComplexMatrix apply_pipeline_flat(const ConjugationPipeline& pipeline, const ComplexMatrix& x);
AlgebraElement apply_pipeline(const ConjugationPipeline& pipeline, const AlgebraElement& x);

} // namespace frnorm
