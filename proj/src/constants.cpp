#include "frnorm/constants.hpp"

#include "frnorm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

namespace frnorm {

namespace {

std::uint64_t checked_lcm(std::uint64_t a, std::uint64_t b) {
    const auto g = std::gcd(a, b);
    std::uint64_t out = 0;
    if (__builtin_mul_overflow(a / g, b, &out))
        throw OverflowError("lcm exceeds 64 bits");
    return out;
}

} // namespace

const char* bound_source_name(BoundSource s) {
    switch (s) {
    case BoundSource::distinct_blocks:
        return "distinct-blocks";
    case BoundSource::repeated_blocks:
        return "repeated-blocks";
    case BoundSource::independent_summands:
        return "independent-summands";
    case BoundSource::linked_summands:
        return "linked-summands";
    }
    return "unknown";
}

BoundSource parse_bound_source(const std::string& name) {
    for (auto s : {BoundSource::distinct_blocks, BoundSource::repeated_blocks, BoundSource::independent_summands,
                   BoundSource::linked_summands})
        if (name == bound_source_name(s))
            return s;
    throw ValidationError("unknown bound source '" + name + "'");
}

StructuralConstants structural_constants(const StandardSubalgebra& b, const TracialWeight& v) {
    if (!(b.shape() == v.shape()))
        throw ShapeError("weight shape does not match the subalgebra");
    StructuralConstants c;
    c.block_lcm = 1;
    c.multiplicity_lcm = 1;
    c.group_lcm = 1;
    bool multiplicity_free = true;
    for (const auto& part : b.partitions()) {
        c.slots += part.length();
        c.block_lcm = checked_lcm(c.block_lcm, part.block_count());
        for (const auto& term : part.terms()) {
            c.multiplicity_lcm = checked_lcm(c.multiplicity_lcm, term.multiplicity);
            multiplicity_free = multiplicity_free && term.multiplicity == 1;
        }
    }
    for (std::size_t g = 0; g < b.group_count(); ++g) {
        c.group_lcm = checked_lcm(c.group_lcm, b.group_occurrence_count(g));
        double sum = 0.0;
        for (const auto& o : b.occurrences(g))
            sum += v.density(o.summand);
        c.max_group_density = std::max(c.max_group_density, sum);
    }
    c.min_density = v.density(0);
    for (std::size_t k = 1; k < b.shape().summands(); ++k)
        c.min_density = std::min(c.min_density, v.density(k));

    const double rl = static_cast<double>(c.block_lcm) * static_cast<double>(c.multiplicity_lcm);
    const bool single = b.shape().summands() == 1;
    std::vector<TheoreticalBound> candidates;
    if (single && multiplicity_free)
        candidates.push_back({1.0 / std::sqrt(static_cast<double>(c.slots)), BoundSource::distinct_blocks});
    if (single)
        candidates.push_back({1.0 / std::sqrt(rl), BoundSource::repeated_blocks});
    if (b.is_trivially_grouped())
        candidates.push_back({1.0 / std::sqrt(rl), BoundSource::independent_summands});
    candidates.push_back({std::sqrt(c.min_density / (rl * static_cast<double>(c.group_lcm) * c.max_group_density)),
                          BoundSource::linked_summands});

    c.bound = candidates.front();
    for (const auto& cand : candidates)
        if (cand.value > c.bound.value * (1.0 + 1e-12))
            c.bound = cand;
    return c;
}

TheoreticalBound theoretical_bound(const StandardSubalgebra& b, const TracialWeight& v) {
    return structural_constants(b, v).bound;
}

double norm_ratio(const StandardSubalgebra& b, const TracialWeight& v, const AlgebraElement& a) {
    const double op = element_norm(a);
    if (op == 0.0)
        return 1.0;
    return fr_norm(b, v, a) / op;
}

double norm_ratio(const ConjugatedSubalgebra& c, const TracialWeight& v, const AlgebraElement& a) {
    const double op = element_norm(a);
    if (op == 0.0)
        return 1.0;
    return fr_norm(c, v, a) / op;
}

namespace {

AlgebraElement normalized_gaussian(const AlgebraShape& shape, std::mt19937_64& rng) {
    auto a = random_gaussian_element(shape, rng);
    a *= 1.0 / element_norm(a);
    return a;
}

// ||P(G)|| / ||G|| for positive G.
double positive_ratio_sq(const StandardSubalgebra& b, const TracialWeight& v, const AlgebraElement& g) {
    const double op = element_norm(g);
    if (op == 0.0)
        return 1.0;
    double m = 0.0;
    for (const auto& block : expectation_blocks(b, v, g))
        m = std::max(m, operator_norm(block));
    return m / op;
}

struct WorkerBest {
    double ratio = 2.0;
    AlgebraElement element;
};

WorkerBest search_chunk(const StandardSubalgebra& b, const TracialWeight& v, std::uint64_t seed, std::size_t worker,
                        std::size_t count) {
    std::seed_seq seq{seed, static_cast<std::uint64_t>(worker)};
    std::mt19937_64 rng(seq);
    WorkerBest best;
    for (std::size_t i = 0; i < count; ++i) {
        auto a = random_gaussian_element(b.shape(), rng);
        const double r = std::sqrt(positive_ratio_sq(b, v, gram(a)));
        if (r < best.ratio) {
            best.ratio = r;
            best.element = std::move(a);
        }
    }
    return best;
}

// Rank-one factor per summand: A^(k) = u_k x_k^*, with u_k a unit vector.
struct RankOneFactors {
    std::vector<ComplexMatrix> left;  // d_k x 1
    std::vector<ComplexMatrix> right; // d_k x 1
};

RankOneFactors top_singular_factors(const AlgebraElement& a) {
    RankOneFactors f;
    for (const auto& part : a.parts()) {
        const auto d = part.rows();
        const auto eig = hermitian_eigen(gram(part));
        const double top = std::max(0.0, eig.values.back());
        ComplexMatrix w(d, 1), u(d, 1), x(d, 1);
        for (std::size_t i = 0; i < d; ++i)
            w(i, 0) = eig.vectors(i, d - 1);
        if (top > 0.0) {
            const double sigma = std::sqrt(top);
            u = part * w;
            u *= 1.0 / sigma;
            x = w;
            x *= sigma;
        } else {
            u(0, 0) = 1.0;
        }
        f.left.push_back(std::move(u));
        f.right.push_back(std::move(x));
    }
    return f;
}

AlgebraElement outer_gram(const AlgebraShape& shape, const std::vector<ComplexMatrix>& right) {
    auto g = AlgebraElement::zero(shape);
    for (std::size_t k = 0; k < right.size(); ++k) {
        const auto& x = right[k];
        for (std::size_t i = 0; i < x.rows(); ++i) {
            g[k](i, i) = std::norm(x(i, 0));
            for (std::size_t j = i + 1; j < x.rows(); ++j) {
                g[k](i, j) = x(i, 0) * std::conj(x(j, 0));
                g[k](j, i) = std::conj(g[k](i, j));
            }
        }
    }
    return g;
}

AlgebraElement rank_one_element(const AlgebraShape& shape, const RankOneFactors& f) {
    std::vector<ComplexMatrix> parts;
    for (std::size_t k = 0; k < f.left.size(); ++k)
        parts.push_back(f.left[k] * f.right[k].adjoint());
    AlgebraElement a(shape, std::move(parts));
    const double n = element_norm(a);
    if (n > 0.0)
        a *= 1.0 / n;
    return a;
}

} // namespace

std::vector<AlgebraElement> sample_elements(const AlgebraShape& shape, std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<AlgebraElement> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        out.push_back(normalized_gaussian(shape, rng));
    return out;
}

SearchReport empirical_sharp_constant(const StandardSubalgebra& b, const TracialWeight& v, const SearchOptions& opts) {
    if (opts.samples == 0)
        throw ValidationError("search needs at least one sample");
    if (opts.workers == 0)
        throw ValidationError("search needs at least one worker");
    if (!(b.shape() == v.shape()))
        throw ShapeError("weight shape does not match the subalgebra");

    const auto workers = std::min(opts.workers, opts.samples);
    std::vector<WorkerBest> results(workers);
    auto chunk = [&](std::size_t w) {
        const auto lo = opts.samples * w / workers;
        const auto hi = opts.samples * (w + 1) / workers;
        results[w] = search_chunk(b, v, opts.seed, w, hi - lo);
    };
    if (workers == 1) {
        chunk(0);
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back(chunk, w);
    }

    std::size_t winner = 0;
    for (std::size_t w = 1; w < workers; ++w)
        if (results[w].ratio < results[winner].ratio)
            winner = w;

    SearchReport report;
    report.samples = opts.samples;
    report.seed = opts.seed;
    report.workers = workers;
    auto witness = results[winner].element;
    witness *= 1.0 / element_norm(witness);
    report.sample_ratio = norm_ratio(b, v, witness);
    report.witness = witness;
    report.best_ratio = report.sample_ratio;

    if (opts.refine) {
        // Dropping all but the top singular pair of each summand can only lower
        // the ratio: A'^*A' <= A^*A, P is positive, and ||A'|| = ||A||.
        auto factors = top_singular_factors(witness);
        auto objective = [&](const std::vector<ComplexMatrix>& right) {
            return positive_ratio_sq(b, v, outer_gram(b.shape(), right));
        };
        double current = objective(factors.right);

        std::vector<std::pair<std::size_t, std::size_t>> coords; // (summand, real index)
        for (std::size_t k = 0; k < factors.right.size(); ++k)
            for (std::size_t i = 0; i < 2 * factors.right[k].rows(); ++i)
                coords.emplace_back(k, i);

        std::seed_seq seq{opts.seed, std::uint64_t{0x726566696e65}};
        std::mt19937_64 rng(seq);
        double step = opts.initial_step;
        std::size_t failures = 0;
        auto nudge = [&](std::size_t k, std::size_t idx, double delta) {
            auto& z = factors.right[k](idx / 2, 0);
            z += (idx % 2 == 0) ? Complex(delta, 0.0) : Complex(0.0, delta);
        };
        for (std::size_t round = 0; round < opts.refine_rounds; ++round) {
            std::shuffle(coords.begin(), coords.end(), rng);
            for (const auto& [k, idx] : coords) {
                bool improved = false;
                for (double delta : {step, -step}) {
                    nudge(k, idx, delta);
                    const double trial = objective(factors.right);
                    if (trial < current) {
                        current = trial;
                        improved = true;
                        ++report.refine_steps;
                        break;
                    }
                    nudge(k, idx, -delta);
                }
                if (improved) {
                    failures = 0;
                } else if (++failures >= opts.patience) {
                    step *= 0.5;
                    failures = 0;
                }
            }
        }
        auto refined = rank_one_element(b.shape(), factors);
        const double r = norm_ratio(b, v, refined);
        if (r < report.best_ratio) {
            report.best_ratio = r;
            report.witness = std::move(refined);
        }
    }
    return report;
}

namespace {

struct PrintedRow {
    const char* label;
    std::vector<BlockTerm> terms;
    double guess_sq_inv;
    double theoretical_sq_inv;
};

const std::vector<PrintedRow>& printed_rows() {
    static const std::vector<PrintedRow> rows = {
        {"B^3_{2,1}", {{2, 1}, {1, 1}}, 2, 2},
        {"B^3_{1^2,1}", {{1, 2}, {1, 1}}, 3, 6},
        {"B^4_{2,2}", {{2, 1}, {2, 1}}, 2, 2},
        {"B^4_{2^2}", {{2, 2}}, 4, 4},
        {"B^4_{2,1,1}", {{2, 1}, {1, 1}, {1, 1}}, 3, 3},
        {"B^4_{2,1^2}", {{2, 1}, {1, 2}}, 3, 6},
        {"B^4_{1^3,1}", {{1, 3}, {1, 1}}, 4, 12},
        {"B^4_{1^2,1,1}", {{1, 2}, {1, 1}, {1, 1}}, 4, 8},
        {"B^5_{3,2}", {{3, 1}, {2, 1}}, 2, 2},
        {"B^5_{2,2,1}", {{2, 1}, {2, 1}, {1, 1}}, 3, 3},
        {"B^5_{2^2,1}", {{2, 2}, {1, 1}}, 4, 6},
        {"B^5_{3,1,1}", {{3, 1}, {1, 1}, {1, 1}}, 3, 3},
        {"B^5_{3,1^2}", {{3, 1}, {1, 2}}, 3, 6},
        {"B^5_{2,1,1,1}", {{2, 1}, {1, 1}, {1, 1}, {1, 1}}, 4, 3},
        {"B^5_{2,1^3}", {{2, 1}, {1, 3}}, 4, 12},
        {"B^5_{2,1^2,1}", {{2, 1}, {1, 2}, {1, 1}}, 4, 8},
    };
    return rows;
}

} // namespace

std::vector<TableRow> table1(const std::optional<SearchOptions>& opts) {
    std::vector<TableRow> out;
    for (const auto& p : printed_rows()) {
        const auto b = StandardSubalgebra::block(p.terms);
        const auto v = TracialWeight::uniform_trace(b.shape());
        const auto bound = theoretical_bound(b, v);
        TableRow row;
        row.label = p.label;
        row.terms = p.terms;
        row.printed_guess = 1.0 / std::sqrt(p.guess_sq_inv);
        row.printed_theoretical = 1.0 / std::sqrt(p.theoretical_sq_inv);
        row.theoretical = bound.value;
        row.source = bound.source;
        row.mismatch = std::abs(row.theoretical - row.printed_theoretical) > 1e-12;
        if (opts)
            row.empirical = empirical_sharp_constant(b, v, *opts).best_ratio;
        out.push_back(std::move(row));
    }
    return out;
}

} // namespace frnorm
