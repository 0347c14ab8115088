#pragma once
//
// Structural constants of a standard subalgebra, the lower equivalence
// constant kappa with
//
//     kappa * ||A||_op <= fr_norm(A) <= ||A||_op,
//
// a seeded random search for the sharp constant, and the n <= 5 table.
//

#include "frnorm/algebra.hpp"
#include "frnorm/expectation.hpp"
#include "frnorm/subalgebra.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace frnorm {

enum class BoundSource {
    distinct_blocks,      // one summand, every multiplicity 1: 1/sqrt(L)
    repeated_blocks,      // one summand: 1/sqrt(r ell)
    independent_summands, // trivial grouping: 1/sqrt(r ell)
    linked_summands       // general: sqrt(alpha / (r ell m gamma))
};

const char* bound_source_name(BoundSource s);
// Throws ValidationError on an unknown name.
BoundSource parse_bound_source(const std::string& name);

struct TheoreticalBound {
    double value = 0.0;
    BoundSource source = BoundSource::linked_summands;
};

struct StructuralConstants {
    std::size_t slots = 0;                  // L: sum of partition lengths
    std::uint64_t block_lcm = 0;            // r: lcm of per-summand block counts
    std::uint64_t multiplicity_lcm = 0;     // ell: lcm of all multiplicities
    std::uint64_t group_lcm = 0;            // m: lcm of per-group occurrence counts
    double min_density = 0.0;               // alpha: min_k v_k/d_k
    double max_group_density = 0.0;         // gamma: max_g sum over occurrences of v_k/d_k
    TheoreticalBound bound;
};

StructuralConstants structural_constants(const StandardSubalgebra& b, const TracialWeight& v);
TheoreticalBound theoretical_bound(const StandardSubalgebra& b, const TracialWeight& v);

// fr_norm(A) / ||A||_op; 1 for A = 0.
double norm_ratio(const StandardSubalgebra& b, const TracialWeight& v, const AlgebraElement& a);
double norm_ratio(const ConjugatedSubalgebra& c, const TracialWeight& v, const AlgebraElement& a);

// count standard complex Gaussian elements, each scaled to element_norm 1.
std::vector<AlgebraElement> sample_elements(const AlgebraShape& shape, std::size_t count, std::uint64_t seed);

struct SearchOptions {
    std::size_t samples = 100000;
    std::uint64_t seed = 0;
    bool refine = true;
    std::size_t workers = 1;
    std::size_t refine_rounds = 200;
    double initial_step = 0.1;
    std::size_t patience = 20; // consecutive failures before the step halves
};

struct SearchReport {
    double best_ratio = 1.0;
    double sample_ratio = 1.0; // best over the random samples alone
    AlgebraElement witness;    // element_norm 1
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    std::size_t workers = 1;
    std::size_t refine_steps = 0; // accepted refinement moves
};

// Throws ValidationError for samples == 0 or workers == 0.
SearchReport empirical_sharp_constant(const StandardSubalgebra& b, const TracialWeight& v, const SearchOptions& opts);

struct TableRow {
    std::string label;
    std::vector<BlockTerm> terms;
    double printed_guess = 0.0;
    double printed_theoretical = 0.0;
    double theoretical = 0.0;
    BoundSource source = BoundSource::distinct_blocks;
    std::optional<double> empirical;
    // theoretical differs from printed_theoretical by more than 1e-12
    bool mismatch = false;
};

// The sixteen reference rows B^n_lambda, 3 <= n <= 5, with their printed
// guess and constant. Runs the search only when opts is given.
std::vector<TableRow> table1(const std::optional<SearchOptions>& opts = std::nullopt);

} // namespace frnorm
