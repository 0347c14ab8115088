#include "frnorm/subalgebra.hpp"

#include "frnorm/errors.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace frnorm {

namespace {

std::size_t sum_terms(const std::vector<BlockTerm>& terms) {
    std::size_t total = 0;
    for (const auto& t : terms)
        total += t.size * t.multiplicity;
    return total;
}

std::string slot_name(SlotId s) {
    return "(" + std::to_string(s.summand + 1) + "," + std::to_string(s.position + 1) + ")";
}

} // namespace

RefinedPartition::RefinedPartition(std::vector<BlockTerm> terms, std::size_t total)
    : terms_(std::move(terms)), total_(total) {
    if (terms_.empty())
        throw PartitionError("a refined partition needs at least one term");
    for (const auto& t : terms_)
        if (t.size == 0 || t.multiplicity == 0)
            throw PartitionError("block sizes and multiplicities must be positive");
    const auto sum = sum_terms(terms_);
    if (sum != total_)
        throw PartitionError("partition covers " + std::to_string(sum) + " rows, summand has " +
                             std::to_string(total_));
}

RefinedPartition::RefinedPartition(std::vector<BlockTerm> terms)
    : RefinedPartition(terms, sum_terms(terms)) {}

std::size_t RefinedPartition::block_count() const noexcept {
    std::size_t r = 0;
    for (const auto& t : terms_)
        r += t.multiplicity;
    return r;
}

std::size_t RefinedPartition::offset(std::size_t i) const {
    if (i >= terms_.size())
        throw IndexError("partition term " + std::to_string(i) + " out of range");
    std::size_t off = 0;
    for (std::size_t j = 0; j < i; ++j)
        off += terms_[j].size * terms_[j].multiplicity;
    return off;
}

AlgebraElement CanonicalBasisElement::to_element(const AlgebraShape& shape) const {
    auto e = AlgebraElement::zero(shape);
    for (const auto& s : support)
        e[s.summand](s.row, s.col) = 1.0;
    return e;
}

std::size_t CanonicalBasisElement::support_in(std::size_t k) const {
    return static_cast<std::size_t>(
        std::count_if(support.begin(), support.end(), [k](const SupportEntry& s) { return s.summand == k; }));
}

StandardSubalgebra StandardSubalgebra::make(AlgebraShape shape, std::vector<RefinedPartition> partitions,
                                            std::vector<std::vector<SlotId>> groups) {
    if (partitions.size() != shape.summands())
        throw PartitionError("got " + std::to_string(partitions.size()) + " partitions for " +
                             std::to_string(shape.summands()) + " summands");
    for (std::size_t k = 0; k < partitions.size(); ++k)
        if (partitions[k].total() != shape.dim(k))
            throw PartitionError("partition of summand " + std::to_string(k + 1) + " covers " +
                                 std::to_string(partitions[k].total()) + " rows, summand has " +
                                 std::to_string(shape.dim(k)));

    constexpr auto unset = std::numeric_limits<std::size_t>::max();
    std::vector<std::vector<std::size_t>> slot_group(partitions.size());
    for (std::size_t k = 0; k < partitions.size(); ++k)
        slot_group[k].assign(partitions[k].length(), unset);

    std::vector<std::size_t> group_size;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        auto& group = groups[g];
        if (group.empty())
            throw ValidationError("group " + std::to_string(g + 1) + " is empty");
        std::sort(group.begin(), group.end());
        for (std::size_t j = 0; j < group.size(); ++j) {
            const auto s = group[j];
            if (s.summand >= partitions.size() || s.position >= partitions[s.summand].length())
                throw ValidationError("slot " + slot_name(s) + " does not exist");
            if (slot_group[s.summand][s.position] != unset)
                throw ValidationError("slot " + slot_name(s) + " appears in more than one group");
            if (j > 0 && group[j - 1].summand == s.summand)
                throw ValidationError("group " + std::to_string(g + 1) +
                                      " holds two slots of summand " + std::to_string(s.summand + 1) +
                                      "; use a multiplicity or a conjugated subalgebra instead");
            slot_group[s.summand][s.position] = g;
        }
        const auto n = partitions[group[0].summand][group[0].position].size;
        for (const auto& s : group)
            if (partitions[s.summand][s.position].size != n)
                throw ValidationError("group " + std::to_string(g + 1) + " mixes block sizes");
        group_size.push_back(n);
    }
    for (std::size_t k = 0; k < slot_group.size(); ++k)
        for (std::size_t i = 0; i < slot_group[k].size(); ++i)
            if (slot_group[k][i] == unset)
                throw ValidationError("slot " + slot_name({k, i}) + " is not in any group");

    StandardSubalgebra b;
    b.shape_ = std::move(shape);
    b.partitions_ = std::move(partitions);
    b.groups_ = std::move(groups);
    b.group_size_ = std::move(group_size);
    b.slot_group_ = std::move(slot_group);

    auto basis = std::make_shared<std::vector<CanonicalBasisElement>>();
    for (std::size_t g = 0; g < b.groups_.size(); ++g) {
        const auto n = b.group_size_[g];
        const auto occ = b.occurrences(g);
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = 0; q < n; ++q) {
                CanonicalBasisElement e{g, p, q, {}};
                e.support.reserve(occ.size());
                for (const auto& o : occ)
                    e.support.push_back({o.summand, o.offset + p, o.offset + q});
                basis->push_back(std::move(e));
            }
    }
    b.basis_ = std::move(basis);
    return b;
}

StandardSubalgebra StandardSubalgebra::independent(AlgebraShape shape, std::vector<RefinedPartition> partitions) {
    std::vector<std::vector<SlotId>> groups;
    for (std::size_t k = 0; k < partitions.size(); ++k)
        for (std::size_t i = 0; i < partitions[k].length(); ++i)
            groups.push_back({{k, i}});
    return make(std::move(shape), std::move(partitions), std::move(groups));
}

StandardSubalgebra StandardSubalgebra::block(std::vector<BlockTerm> terms) {
    RefinedPartition part(std::move(terms));
    AlgebraShape shape({part.total()});
    return independent(std::move(shape), {std::move(part)});
}

StandardSubalgebra StandardSubalgebra::full(const AlgebraShape& shape) {
    std::vector<RefinedPartition> parts;
    for (auto d : shape.dims())
        parts.emplace_back(std::vector<BlockTerm>{{d, 1}});
    return independent(shape, std::move(parts));
}

std::size_t StandardSubalgebra::group_of(SlotId slot) const {
    if (slot.summand >= slot_group_.size() || slot.position >= slot_group_[slot.summand].size())
        throw IndexError("slot " + slot_name(slot) + " does not exist");
    return slot_group_[slot.summand][slot.position];
}

std::size_t StandardSubalgebra::group_occurrence_count(std::size_t g) const {
    std::size_t c = 0;
    for (const auto& s : groups_.at(g))
        c += partitions_[s.summand][s.position].multiplicity;
    return c;
}

std::vector<BlockOccurrence> StandardSubalgebra::occurrences(std::size_t g) const {
    std::vector<BlockOccurrence> occ;
    for (const auto& s : groups_.at(g)) {
        const auto& term = partitions_[s.summand][s.position];
        const auto base = partitions_[s.summand].offset(s.position);
        for (std::size_t t = 0; t < term.multiplicity; ++t)
            occ.push_back({s.summand, base + t * term.size});
    }
    return occ;
}

bool StandardSubalgebra::is_trivially_grouped() const noexcept {
    return std::all_of(groups_.begin(), groups_.end(), [](const auto& g) { return g.size() == 1; });
}

std::span<const CanonicalBasisElement> canonical_basis(const StandardSubalgebra& b) { return b.basis(); }

AlgebraElement embed(const StandardSubalgebra& b, std::span<const ComplexMatrix> assignment) {
    if (assignment.size() != b.group_count())
        throw ShapeError("got " + std::to_string(assignment.size()) + " matrices for " +
                         std::to_string(b.group_count()) + " groups");
    auto e = AlgebraElement::zero(b.shape());
    for (std::size_t g = 0; g < b.group_count(); ++g) {
        const auto n = b.group_block_size(g);
        const auto& x = assignment[g];
        if (x.rows() != n || x.cols() != n)
            throw ShapeError("group " + std::to_string(g + 1) + " needs a " + std::to_string(n) + "x" +
                             std::to_string(n) + " matrix");
        for (const auto& o : b.occurrences(g))
            for (std::size_t p = 0; p < n; ++p)
                for (std::size_t q = 0; q < n; ++q)
                    e[o.summand](o.offset + p, o.offset + q) = x(p, q);
    }
    return e;
}

double membership_residual(const StandardSubalgebra& b, const AlgebraElement& a) {
    if (!(a.shape() == b.shape()))
        throw ShapeError("element shape does not match the subalgebra");
    // Under the normalized trace on M_d every entry has the same weight, so the
    // projection coefficient of a 0/1 basis element is the mean over its support.
    auto residual = a;
    for (const auto& e : b.basis()) {
        Complex mean{};
        for (const auto& s : e.support)
            mean += a[s.summand](s.row, s.col);
        mean /= static_cast<double>(e.support.size());
        for (const auto& s : e.support)
            residual[s.summand](s.row, s.col) -= mean;
    }
    return element_norm(residual);
}

bool contains(const StandardSubalgebra& b, const AlgebraElement& a) {
    return contains(b, a, kMembershipTolerance * element_norm(a));
}

bool contains(const StandardSubalgebra& b, const AlgebraElement& a, double tol) {
    return membership_residual(b, a) <= tol;
}

ConjugatedSubalgebra::ConjugatedSubalgebra(StandardSubalgebra base, AlgebraElement unitary)
    : base_(std::move(base)), unitary_(std::move(unitary)) {
    if (!(unitary_.shape() == base_.shape()))
        throw ShapeError("unitary shape does not match the subalgebra");
    if (!is_unitary(unitary_))
        throw UnitarityError("conjugating element is not unitary within 1e-10");
}

AlgebraElement ConjugatedSubalgebra::conjugate(const AlgebraElement& x) const {
    return unitary_ * x * unitary_.adjoint();
}

AlgebraElement ConjugatedSubalgebra::unconjugate(const AlgebraElement& x) const {
    return unitary_.adjoint() * x * unitary_;
}

ConjugatedSubalgebra conjugated_subalgebra(const StandardSubalgebra& b, const AlgebraElement& u) {
    return {b, u};
}

bool contains(const ConjugatedSubalgebra& c, const AlgebraElement& a) {
    return contains(c.base(), c.unconjugate(a));
}

bool contains(const ConjugatedSubalgebra& c, const AlgebraElement& a, double tol) {
    return contains(c.base(), c.unconjugate(a), tol);
}

} // namespace frnorm
