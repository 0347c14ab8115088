#pragma once
//
// Standard unital C*-subalgebras of M_{d_1} (+) ... (+) M_{d_N}.
//
// Summand k carries a refined partition d_k = sum_i m_{k,i} n_{k,i}; its
// projection onto M_{d_k} is the block-diagonal algebra
//
//     (I_{m_1} (x) M_{n_1}) (+) ... (+) (I_{m_L} (x) M_{n_L}).
//
// Each term (n_{k,i}^{m_{k,i}}) is a slot. Slots are partitioned into groups;
// all slots of a group carry the same matrix, which is how blocks are
// identified across summands. A group holds at most one slot per summand
// (repeats inside a summand are expressed through multiplicities).
//

#include "frnorm/algebra.hpp"

#include <compare>
#include <cstddef>
#include <memory>
#include <vector>

namespace frnorm {

struct BlockTerm {
    std::size_t size = 0;         // n_i
    std::size_t multiplicity = 0; // m_i

    friend bool operator==(const BlockTerm&, const BlockTerm&) = default;
};

class RefinedPartition {
public:
    RefinedPartition() = default;
    // Throws PartitionError unless sum m_i n_i == total, all terms positive,
    // and there is at least one term.
    RefinedPartition(std::vector<BlockTerm> terms, std::size_t total);
    // Total inferred from the terms.
    explicit RefinedPartition(std::vector<BlockTerm> terms);

    std::span<const BlockTerm> terms() const noexcept { return terms_; }
    const BlockTerm& operator[](std::size_t i) const { return terms_.at(i); }
    std::size_t length() const noexcept { return terms_.size(); }
    std::size_t total() const noexcept { return total_; }
    // r = m_1 + ... + m_L, the number of diagonal blocks.
    std::size_t block_count() const noexcept;
    // Row offset of the first copy of term i.
    std::size_t offset(std::size_t i) const;

    friend bool operator==(const RefinedPartition&, const RefinedPartition&) = default;

private:
    std::vector<BlockTerm> terms_;
    std::size_t total_ = 0;
};

struct SlotId {
    std::size_t summand = 0;
    std::size_t position = 0;

    friend auto operator<=>(const SlotId&, const SlotId&) = default;
};

struct SupportEntry {
    std::size_t summand = 0;
    std::size_t row = 0;
    std::size_t col = 0;

    friend auto operator<=>(const SupportEntry&, const SupportEntry&) = default;
};

// A 0/1 basis element: the sum of the matrix units listed in its support.
struct CanonicalBasisElement {
    std::size_t group = 0;
    std::size_t p = 0;
    std::size_t q = 0;
    std::vector<SupportEntry> support;

    AlgebraElement to_element(const AlgebraShape& shape) const;
    // |support restricted to summand k|
    std::size_t support_in(std::size_t k) const;
};

// One diagonal copy of a group's block: summand and row offset inside it.
struct BlockOccurrence {
    std::size_t summand = 0;
    std::size_t offset = 0;
};

class StandardSubalgebra {
public:
    // Throws PartitionError for partitions that do not tile the summands and
    // ValidationError for malformed groupings.
    static StandardSubalgebra make(AlgebraShape shape, std::vector<RefinedPartition> partitions,
                                   std::vector<std::vector<SlotId>> groups);
    // Every slot in its own group.
    static StandardSubalgebra independent(AlgebraShape shape, std::vector<RefinedPartition> partitions);
    // B^n_lambda inside M_n.
    static StandardSubalgebra block(std::vector<BlockTerm> terms);
    // The whole algebra: one full-size slot per summand.
    static StandardSubalgebra full(const AlgebraShape& shape);

    const AlgebraShape& shape() const noexcept { return shape_; }
    std::span<const RefinedPartition> partitions() const noexcept { return partitions_; }
    const RefinedPartition& partition(std::size_t k) const { return partitions_.at(k); }
    std::span<const std::vector<SlotId>> groups() const noexcept { return groups_; }
    std::size_t group_count() const noexcept { return groups_.size(); }

    std::size_t group_block_size(std::size_t g) const { return group_size_.at(g); }
    std::size_t group_of(SlotId slot) const;
    // sum over the group's slots of m_{k,i}: nonzero entries per basis element
    std::size_t group_occurrence_count(std::size_t g) const;
    // Summand-major, then offset.
    std::vector<BlockOccurrence> occurrences(std::size_t g) const;
    bool is_trivially_grouped() const noexcept;

    // Group-major, then row-major (p, q).
    std::span<const CanonicalBasisElement> basis() const noexcept { return *basis_; }
    // sum_g n_g^2
    std::size_t dimension() const noexcept { return basis_->size(); }

private:
    StandardSubalgebra() = default;

    AlgebraShape shape_;
    std::vector<RefinedPartition> partitions_;
    std::vector<std::vector<SlotId>> groups_;
    std::vector<std::size_t> group_size_;
    std::vector<std::vector<std::size_t>> slot_group_; // [k][i] -> g
    std::shared_ptr<const std::vector<CanonicalBasisElement>> basis_;
};

std::span<const CanonicalBasisElement> canonical_basis(const StandardSubalgebra& b);

// Places the g-th matrix in every copy of every slot of group g.
AlgebraElement embed(const StandardSubalgebra& b, std::span<const ComplexMatrix> assignment);

inline constexpr double kMembershipTolerance = 1e-9;

// Residual of the orthogonal projection onto span(basis) under the
// normalized trace of the ambient M_{d_1+...+d_N}, measured in element_norm.
double membership_residual(const StandardSubalgebra& b, const AlgebraElement& a);
// Default tolerance is kMembershipTolerance * element_norm(a).
bool contains(const StandardSubalgebra& b, const AlgebraElement& a);
bool contains(const StandardSubalgebra& b, const AlgebraElement& a, double tol);

// C = U B U^* for a unitary U of the ambient algebra. Expectations and norms
// on C are evaluated by transport through U.
class ConjugatedSubalgebra {
public:
    ConjugatedSubalgebra(StandardSubalgebra base, AlgebraElement unitary);

    const StandardSubalgebra& base() const noexcept { return base_; }
    const AlgebraElement& unitary() const noexcept { return unitary_; }
    const AlgebraShape& shape() const noexcept { return base_.shape(); }

    // U X U^*
    AlgebraElement conjugate(const AlgebraElement& x) const;
    // U^* X U
    AlgebraElement unconjugate(const AlgebraElement& x) const;

private:
    StandardSubalgebra base_;
    AlgebraElement unitary_;
};

// Throws UnitarityError unless U^*U = I within 1e-10.
ConjugatedSubalgebra conjugated_subalgebra(const StandardSubalgebra& b, const AlgebraElement& u);

bool contains(const ConjugatedSubalgebra& c, const AlgebraElement& a);
bool contains(const ConjugatedSubalgebra& c, const AlgebraElement& a, double tol);

} // namespace frnorm
