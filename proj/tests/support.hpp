#pragma once
// Seeded generators and small independent oracles shared by the unit tests.

#include "frnorm/algebra.hpp"
#include "frnorm/subalgebra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace testing {

using namespace frnorm;

inline std::size_t uniform_int(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline ComplexMatrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
    auto g = random_gaussian(n, n, rng);
    auto h = g + g.adjoint();
    h *= 0.5;
    return h;
}

// Largest singular value by power iteration on M^*M; independent of the
// Jacobi solver.
inline double power_iteration_norm(const ComplexMatrix& m, std::mt19937_64& rng, int iters = 2000) {
    const auto g = gram(m);
    auto x = random_gaussian(g.cols(), 1, rng);
    double lambda = 0.0;
    for (int i = 0; i < iters; ++i) {
        auto y = g * x;
        const double n = y.frobenius_norm();
        if (n == 0.0)
            return 0.0;
        lambda = n / x.frobenius_norm();
        y *= 1.0 / n;
        x = y;
    }
    return std::sqrt(lambda);
}

// Random standard subalgebra with up to three summands. Slots of equal block
// size in different summands are merged into shared groups at random.
inline StandardSubalgebra random_subalgebra(std::mt19937_64& rng, std::size_t max_summands = 3) {
    const auto summands = uniform_int(rng, 1, max_summands);
    std::vector<RefinedPartition> parts;
    std::vector<std::size_t> dims;
    for (std::size_t k = 0; k < summands; ++k) {
        std::vector<BlockTerm> terms;
        const auto len = uniform_int(rng, 1, 3);
        for (std::size_t i = 0; i < len; ++i)
            terms.push_back({uniform_int(rng, 1, 2), uniform_int(rng, 1, 2)});
        parts.emplace_back(terms);
        dims.push_back(parts.back().total());
    }
    std::vector<std::vector<SlotId>> groups;
    for (std::size_t k = 0; k < summands; ++k)
        for (std::size_t i = 0; i < parts[k].length(); ++i) {
            const SlotId s{k, i};
            bool placed = false;
            for (auto& g : groups) {
                const auto& head = g.front();
                const bool same_size = parts[head.summand][head.position].size == parts[k][i].size;
                const bool free = std::none_of(g.begin(), g.end(), [k](SlotId t) { return t.summand == k; });
                if (same_size && free && uniform_int(rng, 0, 1) == 1) {
                    g.push_back(s);
                    placed = true;
                    break;
                }
            }
            if (!placed)
                groups.push_back({s});
        }
    return StandardSubalgebra::make(AlgebraShape(dims), std::move(parts), std::move(groups));
}

inline TracialWeight random_weight(const AlgebraShape& shape, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.05, 1.0);
    std::vector<double> w;
    for (std::size_t k = 0; k < shape.summands(); ++k)
        w.push_back(u(rng));
    return TracialWeight::normalized(shape, std::move(w));
}

inline AlgebraElement random_member(const StandardSubalgebra& b, std::mt19937_64& rng) {
    std::vector<ComplexMatrix> blocks;
    for (std::size_t g = 0; g < b.group_count(); ++g)
        blocks.push_back(random_gaussian(b.group_block_size(g), b.group_block_size(g), rng));
    return embed(b, blocks);
}

// Permutation matrix sending basis vector j to target[j].
inline ComplexMatrix permutation_matrix(const std::vector<std::size_t>& target) {
    ComplexMatrix p(target.size(), target.size());
    for (std::size_t j = 0; j < target.size(); ++j)
        p(target[j], j) = 1.0;
    return p;
}

} // namespace testing
