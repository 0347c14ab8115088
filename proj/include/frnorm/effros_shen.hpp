#pragma once
//
// Continued fractions of irrationals in (0,1) and the finite levels
// M_{q_n} (+) M_{q_{n-1}} of the Effros-Shen tower, each carrying the image of
// the previous level,
//
//     A (+) B  |->  diag(A, ..., A, B) (+) A      (r_n copies of A),
//
// and its unique faithful tracial state.
//

#include "frnorm/algebra.hpp"
#include "frnorm/constants.hpp"
#include "frnorm/subalgebra.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

namespace frnorm {

inline constexpr double kRationalityGuard = 1e-13;

class ContinuedFraction {
public:
    // terms = (r_0, r_1, ...); throws ValidationError unless r_0 >= 0 and
    // r_n >= 1 for n >= 1.
    explicit ContinuedFraction(std::vector<std::int64_t> terms, std::optional<double> value = std::nullopt);

    // Gauss-map expansion of theta in (0,1) to depth terms after r_0.
    // Throws RangeError outside (0,1) and RationalityError when a remainder
    // drops below kRationalityGuard.
    static ContinuedFraction expand(double theta, std::size_t depth);
    // The purely periodic expansion [0; a_1, ..., a_k, a_1, ..., a_k, ...]
    // truncated to depth terms, with its exact quadratic value.
    static ContinuedFraction periodic(std::span<const std::int64_t> period, std::size_t depth);

    std::span<const std::int64_t> terms() const noexcept { return terms_; }
    // Number of terms after r_0.
    std::size_t depth() const noexcept { return terms_.size() - 1; }
    std::int64_t operator[](std::size_t n) const;
    // r_1, r_2, ...
    std::span<const std::int64_t> digits() const noexcept { return std::span(terms_).subspan(1); }
    // The generating irrational, when known.
    const std::optional<double>& value() const noexcept { return value_; }
    // Throws ValidationError when the value is unknown.
    double theta() const;

private:
    std::vector<std::int64_t> terms_;
    std::optional<double> value_;
};

inline ContinuedFraction cf_expand(double theta, std::size_t depth) { return ContinuedFraction::expand(theta, depth); }

struct ConvergentTable {
    std::vector<std::int64_t> p;
    std::vector<std::int64_t> q;
};

// Indices 0..n. Throws RangeError for n > depth, OverflowError past 64 bits.
ConvergentTable convergent_table(const ContinuedFraction& cf, std::size_t n);
// (p_n, q_n)
std::pair<std::int64_t, std::int64_t> convergents(const ContinuedFraction& cf, std::size_t n);

// theta q - p, evaluated with a single rounding.
double convergent_error(double theta, std::int64_t p, std::int64_t q);

// 2^{-i} for the first 1-based index i where the sequences differ, 0 when
// they agree. Without compare_length the sequences must either differ or have
// equal length (RangeError otherwise); with it, both must be that long.
double baire_distance(std::span<const std::int64_t> x, std::span<const std::int64_t> y,
                      std::optional<std::size_t> compare_length = std::nullopt);
// 1-based index of the first difference within the first len entries, or
// nullopt.
std::optional<std::size_t> first_disagreement(std::span<const std::int64_t> x, std::span<const std::int64_t> y,
                                              std::size_t len);

struct EffrosShenLevel {
    std::size_t n = 0;
    double theta = 0.0;
    std::int64_t digit = 0; // r_n
    ConvergentTable convergents;
    AlgebraShape shape;
    StandardSubalgebra subalgebra;
    TracialWeight weight;
    double t = 0.0;
};

// Level n >= 1 of the tower for cf (which must know its value and have depth
// >= n). Level 1 has no second slot in summand 1.
EffrosShenLevel es_level(const ContinuedFraction& cf, std::size_t n);

// sqrt(|theta q_N - p_N| / (|theta q_{N-2} - p_{N-2}| r_N (r_N + 1)^2)),
// N >= 2 (RangeError otherwise).
double es_constant(const ContinuedFraction& cf, std::size_t level);

struct ContinuityEntry {
    double eta = 0.0;
    std::size_t prefix_agreement = 0; // leading digits r_1.. that match, capped at N+1
    bool prefix_matches = false;      // agreement reaches N+1
    double baire = 0.0;               // over r_1..r_{N+1}
    double constant = 0.0;
    double gap = 0.0;                 // |constant - constant(theta)|
    double lipschitz = 0.0;           // gap / |theta - eta|, 0 when eta == theta
    // Squared constant with theta in the N-2 factor of the denominator kept
    // fixed (as printed) versus moving with eta.
    double squared_fixed_reference = 0.0;
    double squared_moving_reference = 0.0;
};

struct ContinuityReport {
    double theta = 0.0;
    std::size_t level = 0;
    double constant = 0.0;
    std::vector<ContinuityEntry> entries;
};

ContinuityReport continuity_probe(const ContinuedFraction& theta, std::span<const double> perturbations,
                                  std::size_t level);

// Levels of one tower, built on first use. Safe for concurrent calls.
class EffrosShenTower {
public:
    explicit EffrosShenTower(ContinuedFraction cf) : cf_(std::move(cf)) {}

    const ContinuedFraction& continued_fraction() const noexcept { return cf_; }
    std::shared_ptr<const EffrosShenLevel> level(std::size_t n) const;

private:
    ContinuedFraction cf_;
    mutable std::mutex mutex_;
    mutable std::map<std::size_t, std::shared_ptr<const EffrosShenLevel>> cache_;
};

} // namespace frnorm
