#pragma once
//
// JSON encodings. Indices are 1-based on the wire.
//
//   matrix      {"rows": n, "cols": m, "data": [[re, im], ...]}   row-major
//   element     {"shape": [d1, ...], "summands": [<matrix>, ...]}
//   weight      {"weights": [v1, ...]}
//   subalgebra  {"shape": [...], "partitions": [[[n, m], ...], ...],
//                "groups": [[[k, i], ...], ...]}
//
// Omitting "groups" puts every slot in its own group.
//
// Malformed documents raise SchemaError; structurally invalid ones raise the
// error of the constructor they feed.
//

#include "frnorm/algebra.hpp"
#include "frnorm/constants.hpp"
#include "frnorm/subalgebra.hpp"

#include <json.hpp>

namespace frnorm {

using json = nlohmann::json;

json to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j);

json to_json(const AlgebraShape& s);
AlgebraShape shape_from_json(const json& j);

json to_json(const AlgebraElement& a);
AlgebraElement element_from_json(const json& j);

json to_json(const TracialWeight& v);
TracialWeight weight_from_json(const json& j, const AlgebraShape& shape);

json to_json(const StandardSubalgebra& b);
StandardSubalgebra subalgebra_from_json(const json& j);

json to_json(const StructuralConstants& c);

// Parses with a SchemaError on malformed text.
json parse_json(const std::string& text);

} // namespace frnorm
