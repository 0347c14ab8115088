#include "frnorm/fixtures.hpp"

#include "frnorm/effros_shen.hpp"

namespace frnorm {

namespace {

Fixture block_fixture(std::string name, std::vector<BlockTerm> terms) {
    auto b = StandardSubalgebra::block(std::move(terms));
    auto v = TracialWeight::uniform_trace(b.shape());
    return {std::move(name), std::move(b), std::move(v)};
}

Fixture grouped(std::string name, std::vector<std::size_t> dims, std::vector<std::vector<BlockTerm>> parts,
                std::vector<std::vector<SlotId>> groups, std::vector<double> weights) {
    AlgebraShape shape(std::move(dims));
    std::vector<RefinedPartition> partitions;
    for (auto& p : parts)
        partitions.emplace_back(std::move(p));
    auto b = StandardSubalgebra::make(shape, std::move(partitions), std::move(groups));
    TracialWeight v(shape, std::move(weights));
    return {std::move(name), std::move(b), std::move(v)};
}

Fixture tower_fixture(std::string name, std::vector<std::int64_t> period, std::size_t level) {
    const auto cf = ContinuedFraction::periodic(period, level + 1);
    auto l = es_level(cf, level);
    return {std::move(name), std::move(l.subalgebra), std::move(l.weight)};
}

std::vector<Fixture> build() {
    std::vector<Fixture> f;
    f.push_back(block_fixture("M2 diagonal", {{1, 1}, {1, 1}}));
    f.push_back(block_fixture("M3 blocks 2,1", {{2, 1}, {1, 1}}));
    f.push_back(block_fixture("M3 blocks 1^2,1", {{1, 2}, {1, 1}}));
    f.push_back(block_fixture("M4 blocks 2^2", {{2, 2}}));
    f.push_back(block_fixture("M4 blocks 1^2,1,1", {{1, 2}, {1, 1}, {1, 1}}));
    f.push_back(block_fixture("M5 blocks 2,1^2,1", {{2, 1}, {1, 2}, {1, 1}}));
    // diag(mu, nu) + mu
    f.push_back(grouped("M2+M1 linked scalar", {2, 1}, {{{1, 1}, {1, 1}}, {{1, 1}}}, {{{0, 0}, {1, 0}}, {{0, 1}}},
                        {0.7, 0.3}));
    // diag(mu, nu) + diag(mu, mu)
    f.push_back(grouped("M2+M2 linked scalar", {2, 2}, {{{1, 1}, {1, 1}}, {{1, 2}}}, {{{0, 0}, {1, 0}}, {{0, 1}}},
                        {0.25, 0.75}));
    // diag(A, mu, mu) + A
    f.push_back(grouped("M4+M2 linked block", {4, 2}, {{{2, 1}, {1, 2}}, {{2, 1}}}, {{{0, 0}, {1, 0}}, {{0, 1}}},
                        {0.5, 0.5}));
    // diag(mu, mu, nu) + diag(mu, rho) + nu
    f.push_back(grouped("M3+M2+M1 chain", {3, 2, 1}, {{{1, 2}, {1, 1}}, {{1, 1}, {1, 1}}, {{1, 1}}},
                        {{{0, 0}, {1, 0}}, {{0, 1}, {2, 0}}, {{1, 1}}}, {0.5, 0.3, 0.2}));
    f.push_back(grouped("M3+M2 independent", {3, 2}, {{{1, 1}, {2, 1}}, {{1, 2}}}, {{{0, 0}}, {{0, 1}}, {{1, 0}}},
                        {0.4, 0.6}));
    f.push_back(grouped("M2+M3 full", {2, 3}, {{{2, 1}}, {{3, 1}}}, {{{0, 0}}, {{1, 0}}}, {0.5, 0.5}));
    f.push_back(tower_fixture("tower golden level 3", {1}, 3));
    f.push_back(tower_fixture("tower sqrt2-1 level 2", {2}, 2));
    return f;
}

} // namespace

const std::vector<Fixture>& fixture_fleet() {
    static const std::vector<Fixture> fleet = build();
    return fleet;
}

} // namespace frnorm
