#include "support.hpp"

#include "frnorm/constants.hpp"
#include "frnorm/errors.hpp"
#include "frnorm/expectation.hpp"
#include "frnorm/fixtures.hpp"

#include <doctest.h>

using namespace frnorm;

namespace {

const Fixture& fixture(const std::string& name) {
    for (const auto& f : fixture_fleet())
        if (f.name == name)
            return f;
    throw std::runtime_error("no fixture " + name);
}

bool family_contains(const PipelineStage& stage, const ComplexMatrix& m) {
    return std::any_of(stage.family.begin(), stage.family.end(),
                       [&](const MonomialUnitary& u) { return max_abs_diff(u.to_matrix(), m) == 0.0; });
}

} // namespace

TEST_CASE("scalar subalgebra projects onto the normalized trace") {
    std::mt19937_64 rng(1);
    const auto b = StandardSubalgebra::block({{1, 3}});
    const auto v = TracialWeight::uniform_trace(b.shape());
    const auto a = random_gaussian_element(b.shape(), rng);
    const auto expected = AlgebraElement::identity(b.shape()) * (a[0].trace() / 3.0);
    CHECK(max_abs_diff(cond_expect(b, v, a), expected) <= 1e-15);
}

TEST_CASE("diagonal subalgebra examples") {
    const auto b = StandardSubalgebra::block({{1, 1}, {1, 1}});
    const auto v = TracialWeight::uniform_trace(b.shape());
    const AlgebraElement a(b.shape(), {ComplexMatrix{{1, 2}, {2, 1}}});
    CHECK(cond_expect(b, v, a * a) == AlgebraElement(b.shape(), {ComplexMatrix{{5, 0}, {0, 5}}}));
    CHECK(fr_norm_squared(b, v, a) == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(fr_norm(b, v, a) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-14));
    CHECK(fr_norm_squared(b, v, a * a) == doctest::Approx(41.0).epsilon(1e-14));
    // not submultiplicative: ||A^2|| > ||A||^2
    CHECK(fr_norm_squared(b, v, a * a) > fr_norm_squared(b, v, a) * fr_norm_squared(b, v, a));

    const auto e12 = matrix_unit(b.shape(), 0, 0, 1);
    CHECK(cond_expect(b, v, e12) == AlgebraElement::zero(b.shape()));
    CHECK(quotient_seminorm(b, v, e12) == doctest::Approx(1.0));
    CHECK(quotient_seminorm(b, v, AlgebraElement::identity(b.shape())) == 0.0);
}

TEST_CASE("expectation blocks reproduce the expectation") {
    for (const auto& f : fixture_fleet()) {
        std::mt19937_64 rng(17);
        const auto a = random_gaussian_element(f.subalgebra.shape(), rng);
        const auto blocks = expectation_blocks(f.subalgebra, f.weight, a);
        CHECK(max_abs_diff(embed(f.subalgebra, blocks), cond_expect(f.subalgebra, f.weight, a)) == 0.0);
    }
}

TEST_CASE("linked scalar expectation weights summands by density") {
    const auto& f = fixture("M2+M1 linked scalar");
    const auto& b = f.subalgebra;
    const AlgebraElement a(b.shape(), {ComplexMatrix{{1, 9}, {9, 2}}, ComplexMatrix{{4}}});
    const auto blocks = expectation_blocks(b, f.weight, a);
    // the group holding the scalar shared by both summands
    const auto g = b.group_of({1, 0});
    double num = 0.0, den = 0.0;
    for (const auto& o : b.occurrences(g)) {
        num += f.weight.density(o.summand) * a[o.summand](o.offset, o.offset).real();
        den += f.weight.density(o.summand);
    }
    CHECK(blocks[g](0, 0).real() == doctest::Approx(num / den).epsilon(1e-14));
}

TEST_CASE("frobenius recovery on the scalar subalgebra") {
    std::mt19937_64 rng(8);
    for (std::size_t n = 2; n <= 8; ++n) {
        const auto b = StandardSubalgebra::block({{1, n}});
        const auto v = TracialWeight::uniform_trace(b.shape());
        for (int i = 0; i < 10; ++i) {
            const auto a = random_gaussian_element(b.shape(), rng);
            const double expected = a[0].frobenius_norm() / std::sqrt(static_cast<double>(n));
            CHECK(std::abs(fr_norm(b, v, a) - expected) <= 1e-12 * std::max(1.0, expected));
        }
    }
}

TEST_CASE("monomial unitaries") {
    CHECK_THROWS_AS(MonomialUnitary({0, 0}, {1.0, 1.0}), UnitarityError);
    CHECK_THROWS_AS(MonomialUnitary({0, 1}, {1.0, 2.0}), UnitarityError);
    CHECK_THROWS_AS(MonomialUnitary({0, 2}, {1.0, 1.0}), UnitarityError);
    CHECK(MonomialUnitary::identity(3).is_identity());
    const MonomialUnitary u({1, 0}, {Complex(0, 1), 1.0});
    CHECK(u.to_matrix() == ComplexMatrix{{0, 1}, {Complex(0, 1), 0}});
    std::mt19937_64 rng(2);
    const auto x = random_gaussian(2, 2, rng);
    CHECK(max_abs_diff(u.conjugate(x), u.to_matrix() * x * u.to_matrix().adjoint()) <= 1e-15);
    CHECK(is_unitary(u.to_matrix()));
}

TEST_CASE("two distinct blocks use a single sign flip") {
    const auto b = StandardSubalgebra::block({{2, 1}, {2, 1}});
    const auto p = pipeline_for(b, TracialWeight::uniform_trace(b.shape()));
    REQUIRE(p.stages.size() == 2);
    CHECK(p.stages[0].kind == StageKind::block_phases);
    REQUIRE(p.stages[0].family.size() == 2);
    CHECK(family_contains(p.stages[0], ComplexMatrix::identity(4)));
    const Complex diag[] = {1.0, 1.0, -1.0, -1.0};
    const auto flip = ComplexMatrix::diagonal(diag);
    CHECK(max_abs_diff(p.stages[0].family[1].to_matrix(), flip) <= 1e-15);
    CHECK(p.stages[1].family.size() == 1);
    CHECK(p.final_scale == 1.0);
}

TEST_CASE("repeated scalar linked across summands cycles three columns") {
    const auto& f = fixture("M2+M2 linked scalar");
    const auto p = pipeline_for(f.subalgebra, f.weight);
    REQUIRE(p.stages.size() == 3);
    const auto& stage = p.stages[2];
    CHECK(stage.kind == StageKind::block_permutations);
    CHECK(stage.family.size() == 3);
    CHECK(family_contains(stage, ComplexMatrix::identity(4)));
    CHECK(family_contains(stage, ComplexMatrix{{0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}}));
    CHECK(family_contains(stage, ComplexMatrix{{0, 0, 0, 1}, {0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 1, 0}}));
    CHECK(stage_kind_name(stage.kind) == std::string("block-permutations"));
}

TEST_CASE("pipeline reproduces the grouped expectation up to per-group factors") {
    std::mt19937_64 rng(31);
    for (const auto& f : fixture_fleet()) {
        const auto& b = f.subalgebra;
        if (b.is_trivially_grouped())
            continue;
        const auto p = pipeline_for(b, f.weight);
        for (int trial = 0; trial < 20; ++trial) {
            const auto x = random_positive_element(b.shape(), rng);
            const auto out = apply_pipeline_flat(p, flatten(x)) * Complex(1.0 / p.final_scale);
            const auto blocks = expectation_blocks(b, f.weight, x);
            for (std::size_t g = 0; g < b.group_count(); ++g) {
                double gamma_g = 0.0;
                const auto occ = b.occurrences(g);
                for (const auto& o : occ)
                    gamma_g += f.weight.density(o.summand);
                const double factor = gamma_g / static_cast<double>(occ.size());
                const auto n = b.group_block_size(g);
                for (const auto& o : occ) {
                    const auto base = b.shape().offset(o.summand) + o.offset;
                    for (std::size_t i = 0; i < n; ++i)
                        for (std::size_t j = 0; j < n; ++j)
                            CHECK(std::abs(out(base + i, base + j) - factor * blocks[g](i, j)) <= 1e-9);
                }
            }
        }
    }
}

TEST_CASE("expectation axioms on seeded random subalgebras") {
    std::mt19937_64 rng(777);
    for (int trial = 0; trial < 150; ++trial) {
        const auto b = testing::random_subalgebra(rng);
        const auto v = testing::random_weight(b.shape(), rng);
        const auto a = random_gaussian_element(b.shape(), rng);
        const auto pa = cond_expect(b, v, a);
        const auto m1 = testing::random_member(b, rng);
        const auto m2 = testing::random_member(b, rng);
        CHECK(max_abs_diff(pa, cond_expect_gram(b, v, a)) <= 1e-10);
        CHECK(max_abs_diff(cond_expect(b, v, pa), pa) <= 1e-12);
        CHECK(max_abs_diff(cond_expect(b, v, m1 * a * m2), m1 * pa * m2) <= 1e-9);
        CHECK(std::abs(trace_state(v, pa) - trace_state(v, a)) <= 1e-12);
        CHECK(element_norm(pa) <= element_norm(a) + 1e-12);
        CHECK(contains(b, pa));
        // positivity
        CHECK(is_positive_semidefinite(cond_expect(b, v, gram(a))));

        // fr_norm(a c) <= ||a|| fr_norm(c)
        const auto c = random_gaussian_element(b.shape(), rng);
        CHECK(fr_norm(b, v, a * c) <= element_norm(a) * fr_norm(b, v, c) + 1e-9);
        // quotient seminorm vanishes exactly on the subalgebra
        CHECK(quotient_seminorm(b, v, m1) <= 1e-9 * std::max(1.0, element_norm(m1)));
    }
}

TEST_CASE("transport through a unitary") {
    std::mt19937_64 rng(55);
    for (const auto& f : fixture_fleet()) {
        const auto u = random_unitary_element(f.subalgebra.shape(), rng);
        const auto c = conjugated_subalgebra(f.subalgebra, u);
        for (int trial = 0; trial < 10; ++trial) {
            const auto a = random_gaussian_element(f.subalgebra.shape(), rng);
            CHECK(std::abs(fr_norm(c, f.weight, a) - fr_norm(f.subalgebra, f.weight, a * u)) <= 1e-9);
            const auto pa = cond_expect(c, f.weight, a);
            CHECK(contains(c, pa));
            CHECK(max_abs_diff(cond_expect(c, f.weight, pa), pa) <= 1e-9);
            CHECK(std::abs(trace_state(f.weight, pa) - trace_state(f.weight, a)) <= 1e-9);
        }
        const auto member = c.conjugate(testing::random_member(f.subalgebra, rng));
        CHECK(contains(c, member));
        CHECK(max_abs_diff(cond_expect(c, f.weight, member), member) <= 1e-9);
    }
}
