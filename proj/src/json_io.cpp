#include "frnorm/json_io.hpp"

#include "frnorm/errors.hpp"

#include <string>

namespace frnorm {

namespace {

const json& field(const json& j, const char* name) {
    if (!j.is_object())
        throw SchemaError(std::string("expected an object with field '") + name + "'");
    const auto it = j.find(name);
    if (it == j.end())
        throw SchemaError(std::string("missing field '") + name + "'");
    return *it;
}

const json& array(const json& j, const char* what) {
    if (!j.is_array())
        throw SchemaError(std::string(what) + " must be an array");
    return j;
}

std::size_t positive_index(const json& j, const char* what) {
    if (!j.is_number_integer() || j.get<long long>() < 1)
        throw SchemaError(std::string(what) + " must be a positive integer");
    return static_cast<std::size_t>(j.get<long long>());
}

double number(const json& j, const char* what) {
    if (!j.is_number())
        throw SchemaError(std::string(what) + " must be a number");
    return j.get<double>();
}

} // namespace

json to_json(const ComplexMatrix& m) {
    json data = json::array();
    for (const auto& z : m.entries())
        data.push_back({z.real(), z.imag()});
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

ComplexMatrix matrix_from_json(const json& j) {
    const auto rows = positive_index(field(j, "rows"), "rows");
    const auto cols = positive_index(field(j, "cols"), "cols");
    const auto& data = array(field(j, "data"), "data");
    if (data.size() != rows * cols)
        throw SchemaError("matrix data has " + std::to_string(data.size()) + " entries, expected " +
                          std::to_string(rows * cols));
    std::vector<Complex> entries;
    entries.reserve(data.size());
    for (const auto& z : data) {
        if (!z.is_array() || z.size() != 2)
            throw SchemaError("matrix entries must be [re, im] pairs");
        entries.emplace_back(number(z[0], "real part"), number(z[1], "imaginary part"));
    }
    ComplexMatrix m(rows, cols, std::move(entries));
    if (!m.all_finite())
        throw SchemaError("matrix entries must be finite");
    return m;
}

json to_json(const AlgebraShape& s) { return json(std::vector<std::size_t>(s.dims().begin(), s.dims().end())); }

AlgebraShape shape_from_json(const json& j) {
    std::vector<std::size_t> dims;
    for (const auto& d : array(j, "shape"))
        dims.push_back(positive_index(d, "summand dimension"));
    return AlgebraShape(std::move(dims));
}

json to_json(const AlgebraElement& a) {
    json parts = json::array();
    for (const auto& p : a.parts())
        parts.push_back(to_json(p));
    return {{"shape", to_json(a.shape())}, {"summands", std::move(parts)}};
}

AlgebraElement element_from_json(const json& j) {
    auto shape = shape_from_json(field(j, "shape"));
    std::vector<ComplexMatrix> parts;
    for (const auto& m : array(field(j, "summands"), "summands"))
        parts.push_back(matrix_from_json(m));
    return AlgebraElement(std::move(shape), std::move(parts));
}

json to_json(const TracialWeight& v) {
    return {{"weights", std::vector<double>(v.weights().begin(), v.weights().end())}};
}

TracialWeight weight_from_json(const json& j, const AlgebraShape& shape) {
    std::vector<double> w;
    for (const auto& x : array(field(j, "weights"), "weights"))
        w.push_back(number(x, "weight"));
    return TracialWeight(shape, std::move(w));
}

json to_json(const StandardSubalgebra& b) {
    json parts = json::array();
    for (const auto& part : b.partitions()) {
        json terms = json::array();
        for (const auto& t : part.terms())
            terms.push_back({t.size, t.multiplicity});
        parts.push_back(std::move(terms));
    }
    json groups = json::array();
    for (const auto& g : b.groups()) {
        json slots = json::array();
        for (const auto& s : g)
            slots.push_back({s.summand + 1, s.position + 1});
        groups.push_back(std::move(slots));
    }
    return {{"shape", to_json(b.shape())}, {"partitions", std::move(parts)}, {"groups", std::move(groups)}};
}

StandardSubalgebra subalgebra_from_json(const json& j) {
    auto shape = shape_from_json(field(j, "shape"));
    std::vector<RefinedPartition> parts;
    const auto& jp = array(field(j, "partitions"), "partitions");
    if (jp.size() != shape.summands())
        throw SchemaError("expected one partition per summand");
    for (std::size_t k = 0; k < jp.size(); ++k) {
        std::vector<BlockTerm> terms;
        for (const auto& t : array(jp[k], "partition")) {
            if (!t.is_array() || t.size() != 2)
                throw SchemaError("partition terms must be [size, multiplicity] pairs");
            terms.push_back({positive_index(t[0], "block size"), positive_index(t[1], "multiplicity")});
        }
        parts.emplace_back(std::move(terms), shape.dim(k));
    }
    std::vector<std::vector<SlotId>> groups;
    if (const auto it = j.find("groups"); it == j.end() || it->is_null()) {
        return StandardSubalgebra::independent(std::move(shape), std::move(parts));
    }
    for (const auto& g : array(field(j, "groups"), "groups")) {
        std::vector<SlotId> slots;
        for (const auto& s : array(g, "group")) {
            if (!s.is_array() || s.size() != 2)
                throw SchemaError("slots must be [summand, position] pairs");
            slots.push_back({positive_index(s[0], "summand") - 1, positive_index(s[1], "position") - 1});
        }
        groups.push_back(std::move(slots));
    }
    return StandardSubalgebra::make(std::move(shape), std::move(parts), std::move(groups));
}

json to_json(const StructuralConstants& c) {
    return {{"L", c.slots},
            {"r", c.block_lcm},
            {"ell", c.multiplicity_lcm},
            {"m", c.group_lcm},
            {"alpha", c.min_density},
            {"gamma", c.max_group_density},
            {"bound", c.bound.value},
            {"theorem", bound_source_name(c.bound.source)}};
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("malformed JSON: ") + e.what());
    }
}

} // namespace frnorm
