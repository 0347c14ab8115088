#include "cli.hpp"

#include "frnorm/constants.hpp"
#include "frnorm/effros_shen.hpp"
#include "frnorm/errors.hpp"
#include "frnorm/expectation.hpp"
#include "frnorm/json_io.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace frnorm::cli {

namespace {

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw SchemaError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json(ss.str());
}

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::vector<std::int64_t> parse_digits(const std::string& text) {
    std::vector<std::int64_t> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = std::min(text.find(',', pos), text.size());
        const auto token = text.substr(pos, comma - pos);
        std::int64_t value = 0;
        const auto res = std::from_chars(token.data(), token.data() + token.size(), value);
        if (token.empty() || res.ec != std::errc() || res.ptr != token.data() + token.size() || value < 1)
            throw ValidationError("continued fraction digits must be positive integers: '" + text + "'");
        out.push_back(value);
        pos = comma + 1;
    }
    return out;
}

// Inputs shared by the norm/expect/constants/search subcommands.
struct ProblemFlags {
    std::string subalgebra;
    std::string weights;
    std::string algebra;
    std::string unitary;

    void attach(CLI::App* app, bool with_unitary) {
        app->add_option("--subalgebra", subalgebra, "subalgebra JSON (includes the algebra shape)")->required();
        app->add_option("--weights", weights, "weight JSON; defaults to weights proportional to d_k");
        app->add_option("--algebra", algebra, "optional {\"shape\": [...]} checked against the subalgebra");
        if (with_unitary)
            app->add_option("--unitary", unitary, "unitary element U; work with U B U^* instead of B");
    }
};

struct Problem {
    StandardSubalgebra subalgebra;
    TracialWeight weight;
    std::optional<ConjugatedSubalgebra> conjugated;
};

Problem load_problem(const ProblemFlags& f) {
    auto b = subalgebra_from_json(read_json_file(f.subalgebra));
    if (!f.algebra.empty()) {
        const auto j = read_json_file(f.algebra);
        const auto shape = shape_from_json(j.is_object() && j.contains("shape") ? j.at("shape") : j);
        if (!(shape == b.shape()))
            throw ShapeError("--algebra shape does not match the subalgebra");
    }
    auto v = f.weights.empty() ? TracialWeight::proportional(b.shape())
                               : weight_from_json(read_json_file(f.weights), b.shape());
    std::optional<ConjugatedSubalgebra> c;
    if (!f.unitary.empty())
        c = conjugated_subalgebra(b, element_from_json(read_json_file(f.unitary)));
    return {std::move(b), std::move(v), std::move(c)};
}

void print_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

int cmd_norm(const ProblemFlags& f, const std::string& element, std::ostream& out) {
    const auto p = load_problem(f);
    const auto a = element_from_json(read_json_file(element));
    double sq = 0.0, seminorm = 0.0;
    if (p.conjugated) {
        sq = fr_norm_squared(*p.conjugated, p.weight, a);
        seminorm = quotient_seminorm(*p.conjugated, p.weight, a);
    } else {
        sq = fr_norm_squared(p.subalgebra, p.weight, a);
        seminorm = quotient_seminorm(p.subalgebra, p.weight, a);
    }
    print_json(out, {{"fr_norm", std::sqrt(sq)},
                     {"fr_norm_sq", sq},
                     {"op_norm", element_norm(a)},
                     {"quotient_seminorm", seminorm}});
    return kOk;
}

int cmd_expect(const ProblemFlags& f, const std::string& element, const std::string& method, std::ostream& out) {
    const auto p = load_problem(f);
    const auto a = element_from_json(read_json_file(element));
    AlgebraElement e;
    if (p.conjugated) {
        if (method != "closed")
            throw ValidationError("--method gram is not available with --unitary");
        e = cond_expect(*p.conjugated, p.weight, a);
    } else {
        e = method == "gram" ? cond_expect_gram(p.subalgebra, p.weight, a) : cond_expect(p.subalgebra, p.weight, a);
    }
    print_json(out, {{"expectation", to_json(e)}});
    return kOk;
}

int cmd_constants(const ProblemFlags& f, std::ostream& out) {
    const auto p = load_problem(f);
    print_json(out, to_json(structural_constants(p.subalgebra, p.weight)));
    return kOk;
}

int cmd_search(const ProblemFlags& f, const SearchOptions& opts, std::ostream& out) {
    const auto p = load_problem(f);
    const auto report = empirical_sharp_constant(p.subalgebra, p.weight, opts);
    const auto bound = theoretical_bound(p.subalgebra, p.weight);
    print_json(out, {{"best_ratio", report.best_ratio},
                     {"sample_ratio", report.sample_ratio},
                     {"bound", bound.value},
                     {"theorem", bound_source_name(bound.source)},
                     {"samples", report.samples},
                     {"seed", report.seed},
                     {"workers", report.workers},
                     {"refine_steps", report.refine_steps},
                     {"witness", to_json(report.witness)}});
    return kOk;
}

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + '"';
}

int cmd_table1(const std::optional<SearchOptions>& opts, const std::string& format, std::ostream& out,
               std::ostream& err) {
    const auto rows = table1(opts);
    if (format == "json") {
        json arr = json::array();
        for (const auto& r : rows)
            arr.push_back({{"label", r.label},
                           {"theoretical", r.theoretical},
                           {"printed_theoretical", r.printed_theoretical},
                           {"printed_guess", r.printed_guess},
                           {"empirical", r.empirical ? json(*r.empirical) : json(nullptr)},
                           {"theorem", bound_source_name(r.source)},
                           {"mismatch", r.mismatch}});
        print_json(out, arr);
        return kOk;
    }
    out << "label,theoretical,empirical,theorem\n";
    for (const auto& r : rows) {
        out << csv_quote(r.label) << ',' << format_double(r.theoretical) << ','
            << (r.empirical ? format_double(*r.empirical) : std::string()) << ',' << bound_source_name(r.source)
            << '\n';
        if (r.mismatch)
            err << "note: " << r.label << " recomputes to " << format_double(r.theoretical)
                << ", printed reference value is " << format_double(r.printed_theoretical) << '\n';
    }
    return kOk;
}

ContinuedFraction tower_input(const std::optional<double>& theta, const std::string& cf, std::size_t depth) {
    if (theta)
        return ContinuedFraction::expand(*theta, depth);
    const auto period = parse_digits(cf);
    return ContinuedFraction::periodic(period, depth);
}

int cmd_effros_shen(const std::optional<double>& theta, const std::string& cf, std::size_t level,
                    const std::vector<double>& perturb, std::ostream& out) {
    const auto fraction = tower_input(theta, cf, level + 1);
    const auto lvl = es_level(fraction, level);
    const auto sc = structural_constants(lvl.subalgebra, lvl.weight);
    json j{{"level", level},
           {"theta", lvl.theta},
           {"digits", std::vector<std::int64_t>(fraction.digits().begin(), fraction.digits().end())},
           {"shape", to_json(lvl.shape)},
           {"t", lvl.t},
           {"constant", level >= 2 ? json(es_constant(fraction, level)) : json(nullptr)},
           {"structural", to_json(sc)}};
    if (!perturb.empty()) {
        const auto report = continuity_probe(fraction, perturb, level);
        json entries = json::array();
        for (const auto& e : report.entries)
            entries.push_back({{"eta", e.eta},
                               {"prefix_agreement", e.prefix_agreement},
                               {"prefix_matches", e.prefix_matches},
                               {"baire_distance", e.baire},
                               {"constant", e.constant},
                               {"gap", e.gap},
                               {"lipschitz", e.lipschitz},
                               {"squared_fixed_reference", e.squared_fixed_reference},
                               {"squared_moving_reference", e.squared_moving_reference}});
        j["continuity"] = std::move(entries);
    }
    print_json(out, j);
    return kOk;
}

int cmd_baire(const std::vector<std::string>& cfs, const std::optional<std::size_t>& length, std::ostream& out) {
    if (cfs.size() != 2)
        throw ValidationError("baire needs exactly two --cf lists");
    const auto x = parse_digits(cfs[0]);
    const auto y = parse_digits(cfs[1]);
    const auto d = baire_distance(x, y, length);
    const auto len = length.value_or(std::min(x.size(), y.size()));
    const auto first = first_disagreement(x, y, len);
    print_json(out, {{"distance", d}, {"first_disagreement", first ? json(*first) : json(nullptr)}});
    return kOk;
}

void print_error(std::ostream& err, const std::string& kind, const std::string& message) {
    err << json{{"error", {{"kind", kind}, {"message", message}}}}.dump() << '\n';
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Frobenius-Rieffel norms, conditional expectations and equivalence constants on "
                 "direct sums of matrix algebras."};
    app.name("frnorm");
    app.require_subcommand(1);

    ProblemFlags pf;
    std::string element;
    std::string method = "closed";
    SearchOptions search_opts;
    std::string format = "csv";
    bool theoretical_only = false;
    std::optional<double> theta;
    std::string cf;
    std::size_t level = 2;
    std::vector<double> perturb;
    std::vector<std::string> baire_cfs;
    std::optional<std::size_t> baire_length;
    std::size_t selftest_samples = 100;
    std::uint64_t selftest_seed = 1;

    auto* norm = app.add_subcommand("norm", "fr_norm, its square, operator norm and quotient seminorm of an element");
    pf.attach(norm, true);
    norm->add_option("--element", element, "element JSON")->required();

    auto* expect = app.add_subcommand("expect", "conditional expectation of an element");
    pf.attach(expect, true);
    expect->add_option("--element", element, "element JSON")->required();
    expect->add_option("--method", method, "closed (default) or gram")->check(CLI::IsMember({"closed", "gram"}));

    auto* constants = app.add_subcommand("constants", "structural constants and the lower equivalence constant");
    pf.attach(constants, false);

    auto add_search_flags = [&](CLI::App* sub) {
        sub->add_option("--samples", search_opts.samples, "random samples (default 100000)")
            ->check(CLI::PositiveNumber);
        sub->add_option("--seed", search_opts.seed, "RNG seed (default 0)");
        sub->add_option("--workers", search_opts.workers, "worker threads (default 1)")->check(CLI::PositiveNumber);
        sub->add_flag("--refine,!--no-refine", search_opts.refine, "local refinement of the best sample (default on)");
    };
    auto* search = app.add_subcommand("search", "seeded random search for the sharp lower constant");
    pf.attach(search, false);
    add_search_flags(search);

    auto* table = app.add_subcommand("table1", "reference table of B^n_lambda constants, 3 <= n <= 5");
    add_search_flags(table);
    table->add_option("--format", format, "csv (default) or json")->check(CLI::IsMember({"csv", "json"}));
    table->add_flag("--theoretical-only", theoretical_only, "skip the search");

    auto* es = app.add_subcommand("effros-shen",
                                  "tower level data and its constant; theta counts as irrational when no "
                                  "Gauss-map remainder drops below 1e-13");
    auto* theta_opt = es->add_option("--theta", theta, "theta in (0,1) as a decimal");
    auto* cf_opt = es->add_option("--cf", cf, "period r1,r2,... of a purely periodic expansion [0; r1, r2, ...]");
    theta_opt->excludes(cf_opt);
    es->add_option("--level", level, "tower level (default 2)")->check(CLI::PositiveNumber);
    es->add_option("--perturb", perturb, "decimals eta to compare against theta")->delimiter(',');
    es->callback([&] {
        if (!theta && cf.empty())
            throw CLI::ValidationError("effros-shen", "one of --theta or --cf is required");
    });

    auto* baire = app.add_subcommand("baire", "Baire distance between two digit sequences");
    baire->add_option("--cf", baire_cfs, "digit list r1,r2,...; give exactly two")->required();
    baire->add_option("--length", baire_length, "compare exactly this many leading digits");

    auto* self = app.add_subcommand("selftest", "invariant suite over the fixture fleet");
    self->add_option("--samples", selftest_samples, "random elements per fixture (default 100)")
        ->check(CLI::PositiveNumber);
    self->add_option("--seed", selftest_seed, "RNG seed (default 1)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        print_error(err, "usage", e.what());
        return kInvalid;
    }

    try {
        if (*norm)
            return cmd_norm(pf, element, out);
        if (*expect)
            return cmd_expect(pf, element, method, out);
        if (*constants)
            return cmd_constants(pf, out);
        if (*search)
            return cmd_search(pf, search_opts, out);
        if (*table)
            return cmd_table1(theoretical_only ? std::nullopt : std::optional(search_opts), format, out, err);
        if (*es)
            return cmd_effros_shen(theta, cf, level, perturb, out);
        if (*baire)
            return cmd_baire(baire_cfs, baire_length, out);
        if (*self)
            return selftest(out, selftest_samples, selftest_seed) == 0 ? kOk : kFailure;
    } catch (const ConvergenceError& e) {
        print_error(err, e.kind(), e.what());
        return kNoConvergence;
    } catch (const Error& e) {
        print_error(err, e.kind(), e.what());
        return kInvalid;
    } catch (const json::exception& e) {
        print_error(err, "schema", e.what());
        return kInvalid;
    }
    return kInvalid;
}

} // namespace frnorm::cli
