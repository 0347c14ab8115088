#include "cli.hpp"

#include "frnorm/constants.hpp"
#include "frnorm/effros_shen.hpp"
#include "frnorm/expectation.hpp"
#include "frnorm/fixtures.hpp"

#include <cmath>
#include <functional>
#include <ostream>
#include <random>
#include <string>

namespace frnorm::cli {

namespace {

class Checker {
public:
    explicit Checker(std::ostream& out) : out_(out) {}

    void check(const std::string& name, double worst, double tol) {
        const bool ok = worst <= tol;
        out_ << (ok ? "ok   " : "FAIL ") << name << "  worst=" << worst << " tol=" << tol << '\n';
        if (!ok)
            ++failures_;
    }

    std::size_t failures() const noexcept { return failures_; }

private:
    std::ostream& out_;
    std::size_t failures_ = 0;
};

AlgebraElement random_in(const StandardSubalgebra& b, std::mt19937_64& rng) {
    std::vector<ComplexMatrix> blocks;
    for (std::size_t g = 0; g < b.group_count(); ++g)
        blocks.push_back(random_gaussian(b.group_block_size(g), b.group_block_size(g), rng));
    return embed(b, blocks);
}

void fixture_checks(Checker& c, const Fixture& f, std::size_t samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const auto& b = f.subalgebra;
    const auto& v = f.weight;
    const auto bound = theoretical_bound(b, v).value;
    const auto pipeline = pipeline_for(b, v);

    double oracle = 0, idem = 0, fixes = 0, contract = 0, adj = 0, trace = 0, bimod = 0, sandwich = 0, pinch = 0,
           pointwise = 0;
    for (std::size_t s = 0; s < samples; ++s) {
        const auto a = random_gaussian_element(b.shape(), rng);
        const auto pa = cond_expect(b, v, a);
        const auto b1 = random_in(b, rng);
        const auto b2 = random_in(b, rng);
        oracle = std::max(oracle, max_abs_diff(pa, cond_expect_gram(b, v, a)));
        idem = std::max(idem, max_abs_diff(cond_expect(b, v, pa), pa));
        fixes = std::max(fixes, max_abs_diff(cond_expect(b, v, b1), b1));
        contract = std::max(contract, element_norm(pa) - element_norm(a));
        adj = std::max(adj, max_abs_diff(cond_expect(b, v, a.adjoint()), pa.adjoint()));
        trace = std::max(trace, std::abs(trace_state(v, pa) - trace_state(v, a)));
        bimod = std::max(bimod, max_abs_diff(cond_expect(b, v, b1 * a * b2), b1 * pa * b2));
        const double op = element_norm(a);
        const double fr = fr_norm(b, v, a);
        sandwich = std::max({sandwich, bound * op - fr, fr - op});

        const auto x = gram(a);
        const auto flat = flatten(x);
        const double xn = operator_norm(flat);
        for (const auto& stage : pipeline.stages)
            pinch = std::max(pinch, xn / static_cast<double>(stage.family.size()) -
                                        operator_norm(mean_of_conjugates(stage.family, flat)));
        if (b.is_trivially_grouped())
            pointwise = std::max(pointwise, max_abs_diff(apply_pipeline(pipeline, x), cond_expect(b, v, x)));
    }
    const auto tag = f.name + ": ";
    c.check(tag + "closed form matches gram projection", oracle, 1e-10);
    c.check(tag + "idempotent", idem, 1e-9);
    c.check(tag + "fixes the subalgebra", fixes, 1e-9);
    c.check(tag + "contractive", contract, 1e-9);
    c.check(tag + "adjoint compatible", adj, 1e-9);
    c.check(tag + "trace preserving", trace, 1e-9);
    c.check(tag + "bimodule property", bimod, 1e-9);
    c.check(tag + "bound sandwich", sandwich, 1e-9);
    c.check(tag + "pinching bound", pinch, 1e-9);
    if (b.is_trivially_grouped())
        c.check(tag + "pipeline equals expectation", pointwise, 1e-9);
}

} // namespace

std::size_t selftest(std::ostream& out, std::size_t samples, std::uint64_t seed) {
    Checker c(out);
    for (const auto& f : fixture_fleet())
        fixture_checks(c, f, samples, seed);

    {
        const auto b = StandardSubalgebra::block({{1, 1}, {1, 1}});
        const auto v = TracialWeight::uniform_trace(b.shape());
        const AlgebraElement a(b.shape(), {ComplexMatrix{{1, 2}, {2, 1}}});
        c.check("witness: squared norm 5", std::abs(fr_norm_squared(b, v, a) - 5.0), 1e-10);
        c.check("witness: squared norm of the square 41", std::abs(fr_norm_squared(b, v, a * a) - 41.0), 1e-10);
        const AlgebraElement ones(b.shape(), {ComplexMatrix{{1, 1}, {1, 1}}});
        const double h = 1.0 / std::sqrt(2.0);
        const AlgebraElement u(b.shape(), {ComplexMatrix{{h, h}, {h, -h}}});
        c.check("witness: squared norm 2", std::abs(fr_norm_squared(b, v, ones) - 2.0), 1e-10);
        c.check("witness: conjugated squared norm 4",
                std::abs(fr_norm_squared(b, v, u.adjoint() * ones * u) - 4.0), 1e-10);
    }

    double table = 0.0;
    for (const auto& row : table1())
        if (!row.mismatch)
            table = std::max(table, std::abs(row.theoretical - row.printed_theoretical));
    c.check("reference table constants", table, 1e-12);

    double tower = 0.0;
    for (const auto& period : {std::vector<std::int64_t>{1}, {2}, {1, 2}}) {
        const auto cf = ContinuedFraction::periodic(period, 9);
        for (std::size_t n = 2; n <= 6; ++n) {
            const auto lvl = es_level(cf, n);
            tower = std::max(tower, std::abs(es_constant(cf, n) - theoretical_bound(lvl.subalgebra, lvl.weight).value));
        }
    }
    c.check("tower constant matches structural bound", tower, 1e-12);

    out << (c.failures() == 0 ? "selftest passed" : "selftest FAILED") << " (" << c.failures() << " failures)\n";
    return c.failures();
}

} // namespace frnorm::cli
