#include "frnorm/effros_shen.hpp"

#include "frnorm/errors.hpp"

#include <cmath>
#include <string>

namespace frnorm {

ContinuedFraction::ContinuedFraction(std::vector<std::int64_t> terms, std::optional<double> value)
    : terms_(std::move(terms)), value_(value) {
    if (terms_.empty())
        throw ValidationError("a continued fraction needs r_0");
    if (terms_[0] < 0)
        throw ValidationError("r_0 must be nonnegative");
    for (std::size_t n = 1; n < terms_.size(); ++n)
        if (terms_[n] < 1)
            throw ValidationError("continued fraction digit r_" + std::to_string(n) + " must be at least 1");
}

ContinuedFraction ContinuedFraction::expand(double theta, std::size_t depth) {
    if (!(theta > 0.0 && theta < 1.0))
        throw RangeError("theta must lie in (0,1)");
    std::vector<std::int64_t> terms{0};
    double x = theta;
    for (std::size_t n = 1; n <= depth; ++n) {
        const double y = 1.0 / x;
        const double digit = std::floor(y);
        if (digit > 9.0e15)
            throw RationalityError("continued fraction digit overflows at depth " + std::to_string(n));
        terms.push_back(static_cast<std::int64_t>(digit));
        x = y - digit;
        if (x < kRationalityGuard)
            throw RationalityError("theta is rational to working precision (expansion ends at depth " +
                                   std::to_string(n) + ")");
    }
    return ContinuedFraction(std::move(terms), theta);
}

ContinuedFraction ContinuedFraction::periodic(std::span<const std::int64_t> period, std::size_t depth) {
    if (period.empty())
        throw ValidationError("empty continued fraction period");
    std::vector<std::int64_t> terms{0};
    for (std::size_t n = 0; n < depth; ++n)
        terms.push_back(period[n % period.size()]);

    // theta = [0; a_1..a_k, 1/theta] gives q_{k-1} x^2 + (q_k - p_{k-1}) x - p_k = 0.
    std::vector<std::int64_t> one_period{0};
    one_period.insert(one_period.end(), period.begin(), period.end());
    const ContinuedFraction head(std::move(one_period));
    const auto table = convergent_table(head, period.size());
    const auto k = period.size();
    const double a = static_cast<double>(table.q[k - 1]);
    const double b = static_cast<double>(table.q[k]) - static_cast<double>(table.p[k - 1]);
    const double c = static_cast<double>(table.p[k]);
    const double root = 2.0 * c / (b + std::sqrt(b * b + 4.0 * a * c));
    return ContinuedFraction(std::move(terms), root);
}

std::int64_t ContinuedFraction::operator[](std::size_t n) const {
    if (n >= terms_.size())
        throw RangeError("continued fraction term " + std::to_string(n) + " beyond depth " + std::to_string(depth()));
    return terms_[n];
}

double ContinuedFraction::theta() const {
    if (!value_)
        throw ValidationError("continued fraction has no associated value");
    return *value_;
}

namespace {

std::int64_t mul_add(std::int64_t a, std::int64_t b, std::int64_t c) {
    std::int64_t prod = 0, sum = 0;
    if (__builtin_mul_overflow(a, b, &prod) || __builtin_add_overflow(prod, c, &sum))
        throw OverflowError("convergent exceeds 64 bits");
    return sum;
}

} // namespace

ConvergentTable convergent_table(const ContinuedFraction& cf, std::size_t n) {
    if (n > cf.depth())
        throw RangeError("convergent index " + std::to_string(n) + " beyond depth " + std::to_string(cf.depth()));
    ConvergentTable t;
    t.p.push_back(cf[0]);
    t.q.push_back(1);
    if (n >= 1) {
        // p_1 = r_1 r_0 + 1, which is 1 for theta in (0,1).
        t.p.push_back(mul_add(cf[1], cf[0], 1));
        t.q.push_back(cf[1]);
    }
    for (std::size_t j = 2; j <= n; ++j) {
        t.p.push_back(mul_add(cf[j], t.p[j - 1], t.p[j - 2]));
        t.q.push_back(mul_add(cf[j], t.q[j - 1], t.q[j - 2]));
    }
    return t;
}

std::pair<std::int64_t, std::int64_t> convergents(const ContinuedFraction& cf, std::size_t n) {
    const auto t = convergent_table(cf, n);
    return {t.p[n], t.q[n]};
}

double convergent_error(double theta, std::int64_t p, std::int64_t q) {
    return std::fma(theta, static_cast<double>(q), -static_cast<double>(p));
}

std::optional<std::size_t> first_disagreement(std::span<const std::int64_t> x, std::span<const std::int64_t> y,
                                              std::size_t len) {
    for (std::size_t i = 0; i < len && i < x.size() && i < y.size(); ++i)
        if (x[i] != y[i])
            return i + 1;
    return std::nullopt;
}

double baire_distance(std::span<const std::int64_t> x, std::span<const std::int64_t> y,
                      std::optional<std::size_t> compare_length) {
    std::size_t len = 0;
    if (compare_length) {
        len = *compare_length;
        if (x.size() < len || y.size() < len)
            throw RangeError("sequences shorter than the declared comparison length");
    } else {
        len = std::min(x.size(), y.size());
    }
    if (const auto i = first_disagreement(x, y, len))
        return std::ldexp(1.0, -static_cast<int>(*i));
    if (!compare_length && x.size() != y.size())
        throw RangeError("sequences agree on their common prefix but differ in length; declare a comparison length");
    return 0.0;
}

namespace {

double signed_error(double theta, const ConvergentTable& t, std::size_t j) {
    const double e = convergent_error(theta, t.p[j], t.q[j]);
    return (j % 2 == 0) ? e : -e; // (-1)^j (theta q_j - p_j) > 0
}

} // namespace

EffrosShenLevel es_level(const ContinuedFraction& cf, std::size_t n) {
    if (n < 1)
        throw RangeError("tower levels start at 1");
    const double theta = cf.theta();
    auto table = convergent_table(cf, n);
    const auto digit = cf[n];
    const auto qn = static_cast<std::size_t>(table.q[n]);
    const auto qprev = static_cast<std::size_t>(table.q[n - 1]);
    AlgebraShape shape({qn, qprev});

    std::vector<BlockTerm> first{{qprev, static_cast<std::size_t>(digit)}};
    std::vector<std::vector<SlotId>> groups{{{0, 0}, {1, 0}}};
    if (n >= 2) {
        first.push_back({static_cast<std::size_t>(table.q[n - 2]), 1});
        groups.push_back({{0, 1}});
    }
    std::vector<RefinedPartition> parts{RefinedPartition(std::move(first), qn),
                                        RefinedPartition({{qprev, 1}}, qprev)};
    auto sub = StandardSubalgebra::make(shape, std::move(parts), std::move(groups));

    const double t = static_cast<double>(table.q[n]) * signed_error(theta, table, n - 1);
    if (!(t > 0.0 && t < 1.0))
        throw ValidationError("tower weight left (0,1); theta and its expansion disagree");
    TracialWeight weight(shape, {t, 1.0 - t});
    return EffrosShenLevel{n, theta, digit, std::move(table), std::move(shape), std::move(sub), std::move(weight), t};
}

double es_constant(const ContinuedFraction& cf, std::size_t level) {
    if (level < 2)
        throw RangeError("the tower constant needs level >= 2");
    const double theta = cf.theta();
    const auto table = convergent_table(cf, level);
    const double r = static_cast<double>(cf[level]);
    const double num = signed_error(theta, table, level);
    const double den = signed_error(theta, table, level - 2) * r * (r + 1.0) * (r + 1.0);
    return std::sqrt(num / den);
}

ContinuityReport continuity_probe(const ContinuedFraction& theta, std::span<const double> perturbations,
                                  std::size_t level) {
    if (level < 2)
        throw RangeError("the tower constant needs level >= 2");
    const auto depth = level + 1;
    if (theta.depth() < depth)
        throw RangeError("continued fraction too short for the probe depth");
    const double th = theta.theta();

    ContinuityReport report;
    report.theta = th;
    report.level = level;
    report.constant = es_constant(theta, level);
    for (double eta : perturbations) {
        const auto cf = ContinuedFraction::expand(eta, depth);
        ContinuityEntry e;
        e.eta = eta;
        const auto a = theta.digits().first(depth);
        const auto b = cf.digits().first(depth);
        const auto first = first_disagreement(a, b, depth);
        e.prefix_agreement = first ? *first - 1 : depth;
        e.prefix_matches = !first;
        e.baire = baire_distance(a, b, depth);
        e.constant = es_constant(cf, level);
        e.gap = std::abs(e.constant - report.constant);
        e.lipschitz = (eta == th) ? 0.0 : e.gap / std::abs(th - eta);

        const auto t = convergent_table(cf, level);
        const double r = static_cast<double>(cf[level]);
        const double num = signed_error(eta, t, level);
        const double tail = r * (r + 1.0) * (r + 1.0);
        const double fixed_ref = std::abs(convergent_error(th, t.p[level - 2], t.q[level - 2]));
        e.squared_fixed_reference = num / (fixed_ref * tail);
        e.squared_moving_reference = num / (signed_error(eta, t, level - 2) * tail);
        report.entries.push_back(e);
    }
    return report;
}

std::shared_ptr<const EffrosShenLevel> EffrosShenTower::level(std::size_t n) const {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(n); it != cache_.end())
        return it->second;
    auto built = std::make_shared<const EffrosShenLevel>(es_level(cf_, n));
    cache_.emplace(n, built);
    return built;
}

} // namespace frnorm
