#include "frnorm/constants.hpp"
#include "frnorm/effros_shen.hpp"
#include "frnorm/errors.hpp"
#include "frnorm/expectation.hpp"
#include "frnorm/json_io.hpp"

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

namespace py = pybind11;
using namespace frnorm;

namespace {

using ComplexArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

ComplexMatrix to_matrix(const ComplexArray& a) {
    if (a.ndim() != 2)
        throw DimensionError("expected a 2-d array");
    const auto rows = static_cast<std::size_t>(a.shape(0));
    const auto cols = static_cast<std::size_t>(a.shape(1));
    return ComplexMatrix(rows, cols, std::vector<Complex>(a.data(), a.data() + rows * cols));
}

ComplexArray to_array(const ComplexMatrix& m) {
    ComplexArray out({m.rows(), m.cols()});
    std::copy(m.entries().begin(), m.entries().end(), out.mutable_data());
    return out;
}

AlgebraElement to_element(const AlgebraShape& shape, const std::vector<ComplexArray>& parts) {
    std::vector<ComplexMatrix> m;
    for (const auto& p : parts)
        m.push_back(to_matrix(p));
    return AlgebraElement(shape, std::move(m));
}

std::vector<ComplexArray> from_element(const AlgebraElement& a) {
    std::vector<ComplexArray> out;
    for (const auto& p : a.parts())
        out.push_back(to_array(p));
    return out;
}

StandardSubalgebra make_subalgebra(const std::vector<std::size_t>& shape,
                                   const std::vector<std::vector<std::pair<std::size_t, std::size_t>>>& partitions,
                                   const std::optional<std::vector<std::vector<std::pair<std::size_t, std::size_t>>>>& groups) {
    std::vector<RefinedPartition> parts;
    for (const auto& p : partitions) {
        std::vector<BlockTerm> terms;
        for (const auto& [size, mult] : p)
            terms.push_back({size, mult});
        parts.emplace_back(std::move(terms));
    }
    if (!groups)
        return StandardSubalgebra::independent(AlgebraShape(shape), std::move(parts));
    std::vector<std::vector<SlotId>> g;
    for (const auto& grp : *groups) {
        g.emplace_back();
        for (const auto& [k, i] : grp)
            g.back().push_back({k, i});
    }
    return StandardSubalgebra::make(AlgebraShape(shape), std::move(parts), std::move(g));
}

TracialWeight weight_or_default(const StandardSubalgebra& b, const std::optional<std::vector<double>>& weights) {
    return weights ? TracialWeight(b.shape(), *weights) : TracialWeight::proportional(b.shape());
}

py::dict constants_dict(const StructuralConstants& c) {
    py::dict d;
    d["L"] = c.slots;
    d["r"] = c.block_lcm;
    d["ell"] = c.multiplicity_lcm;
    d["m"] = c.group_lcm;
    d["alpha"] = c.min_density;
    d["gamma"] = c.max_group_density;
    d["bound"] = c.bound.value;
    d["theorem"] = bound_source_name(c.bound.source);
    return d;
}

} // namespace

PYBIND11_MODULE(_frnorm, m) {
    m.doc() = "Frobenius-Rieffel norms and conditional expectations on direct sums of matrix algebras";

    auto base = py::register_exception<Error>(m, "FrnormError", PyExc_ValueError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());

    py::class_<StandardSubalgebra>(m, "Subalgebra")
        .def(py::init(&make_subalgebra), py::arg("shape"), py::arg("partitions"), py::arg("groups") = py::none(),
             "Standard subalgebra; partitions are lists of (block size, multiplicity), groups are lists of "
             "0-based (summand, slot) pairs. Without groups every slot is independent.")
        .def_static("block", [](const std::vector<std::pair<std::size_t, std::size_t>>& terms) {
            std::vector<BlockTerm> t;
            for (const auto& [size, mult] : terms)
                t.push_back({size, mult});
            return StandardSubalgebra::block(std::move(t));
        })
        .def_static("from_json", [](const std::string& text) { return subalgebra_from_json(parse_json(text)); })
        .def("to_json", [](const StandardSubalgebra& b) { return to_json(b).dump(); })
        .def_property_readonly("shape", [](const StandardSubalgebra& b) {
            return std::vector<std::size_t>(b.shape().dims().begin(), b.shape().dims().end());
        })
        .def_property_readonly("dimension", &StandardSubalgebra::dimension)
        .def_property_readonly("group_count", &StandardSubalgebra::group_count)
        .def("contains", [](const StandardSubalgebra& b, const std::vector<ComplexArray>& a) {
            return contains(b, to_element(b.shape(), a));
        });

    m.def("cond_expect",
          [](const StandardSubalgebra& b, const std::vector<ComplexArray>& a,
             const std::optional<std::vector<double>>& weights, const std::string& method) {
              const auto v = weight_or_default(b, weights);
              const auto x = to_element(b.shape(), a);
              if (method == "gram")
                  return from_element(cond_expect_gram(b, v, x));
              if (method != "closed")
                  throw ValidationError("method must be 'closed' or 'gram'");
              return from_element(cond_expect(b, v, x));
          },
          py::arg("subalgebra"), py::arg("element"), py::arg("weights") = py::none(), py::arg("method") = "closed");

    m.def("fr_norm",
          [](const StandardSubalgebra& b, const std::vector<ComplexArray>& a,
             const std::optional<std::vector<double>>& weights) {
              return fr_norm(b, weight_or_default(b, weights), to_element(b.shape(), a));
          },
          py::arg("subalgebra"), py::arg("element"), py::arg("weights") = py::none());
    m.def("fr_norm_squared",
          [](const StandardSubalgebra& b, const std::vector<ComplexArray>& a,
             const std::optional<std::vector<double>>& weights) {
              return fr_norm_squared(b, weight_or_default(b, weights), to_element(b.shape(), a));
          },
          py::arg("subalgebra"), py::arg("element"), py::arg("weights") = py::none());
    m.def("quotient_seminorm",
          [](const StandardSubalgebra& b, const std::vector<ComplexArray>& a,
             const std::optional<std::vector<double>>& weights) {
              return quotient_seminorm(b, weight_or_default(b, weights), to_element(b.shape(), a));
          },
          py::arg("subalgebra"), py::arg("element"), py::arg("weights") = py::none());
    m.def("fr_norm_conjugated",
          [](const StandardSubalgebra& b, const std::vector<ComplexArray>& unitary, const std::vector<ComplexArray>& a,
             const std::optional<std::vector<double>>& weights) {
              const auto c = conjugated_subalgebra(b, to_element(b.shape(), unitary));
              return fr_norm(c, weight_or_default(b, weights), to_element(b.shape(), a));
          },
          py::arg("subalgebra"), py::arg("unitary"), py::arg("element"), py::arg("weights") = py::none(),
          "fr_norm for U B U^*");
    m.def("op_norm", [](const ComplexArray& a) { return operator_norm(to_matrix(a)); });

    m.def("structural_constants",
          [](const StandardSubalgebra& b, const std::optional<std::vector<double>>& weights) {
              return constants_dict(structural_constants(b, weight_or_default(b, weights)));
          },
          py::arg("subalgebra"), py::arg("weights") = py::none());

    m.def("search",
          [](const StandardSubalgebra& b, const std::optional<std::vector<double>>& weights, std::size_t samples,
             std::uint64_t seed, std::size_t workers, bool refine) {
              SearchOptions opts;
              opts.samples = samples;
              opts.seed = seed;
              opts.workers = workers;
              opts.refine = refine;
              SearchReport r;
              {
                  py::gil_scoped_release release;
                  r = empirical_sharp_constant(b, weight_or_default(b, weights), opts);
              }
              py::dict d;
              d["best_ratio"] = r.best_ratio;
              d["sample_ratio"] = r.sample_ratio;
              d["refine_steps"] = r.refine_steps;
              d["witness"] = from_element(r.witness);
              return d;
          },
          py::arg("subalgebra"), py::arg("weights") = py::none(), py::arg("samples") = 100000, py::arg("seed") = 0,
          py::arg("workers") = 1, py::arg("refine") = true);

    m.def("table1",
          [](std::optional<std::size_t> samples, std::uint64_t seed) {
              std::optional<SearchOptions> opts;
              if (samples) {
                  opts.emplace();
                  opts->samples = *samples;
                  opts->seed = seed;
              }
              std::vector<TableRow> rows;
              {
                  py::gil_scoped_release release;
                  rows = table1(opts);
              }
              py::list out;
              for (const auto& r : rows) {
                  py::dict d;
                  d["label"] = r.label;
                  d["theoretical"] = r.theoretical;
                  d["printed_theoretical"] = r.printed_theoretical;
                  d["printed_guess"] = r.printed_guess;
                  d["empirical"] = r.empirical ? py::cast(*r.empirical) : py::none();
                  d["theorem"] = bound_source_name(r.source);
                  d["mismatch"] = r.mismatch;
                  out.append(d);
              }
              return out;
          },
          py::arg("samples") = py::none(), py::arg("seed") = 0);

    m.def("cf_expand",
          [](double theta, std::size_t depth) {
              const auto cf = cf_expand(theta, depth);
              return std::vector<std::int64_t>(cf.digits().begin(), cf.digits().end());
          },
          py::arg("theta"), py::arg("depth"));
    m.def("periodic_value",
          [](const std::vector<std::int64_t>& period) { return ContinuedFraction::periodic(period, 1).theta(); },
          py::arg("period"));
    m.def("es_constant",
          [](const std::vector<std::int64_t>& period, std::size_t level) {
              return es_constant(ContinuedFraction::periodic(period, level + 1), level);
          },
          py::arg("period"), py::arg("level"), "tower constant for the purely periodic expansion with this period");
    m.def("es_level",
          [](const std::vector<std::int64_t>& period, std::size_t level) {
              const auto lvl = es_level(ContinuedFraction::periodic(period, level + 1), level);
              py::dict d;
              d["shape"] = std::vector<std::size_t>(lvl.shape.dims().begin(), lvl.shape.dims().end());
              d["t"] = lvl.t;
              d["subalgebra"] = lvl.subalgebra;
              d["weights"] = std::vector<double>(lvl.weight.weights().begin(), lvl.weight.weights().end());
              return d;
          },
          py::arg("period"), py::arg("level"));
    m.def("baire_distance",
          [](const std::vector<std::int64_t>& x, const std::vector<std::int64_t>& y,
             std::optional<std::size_t> length) { return baire_distance(x, y, length); },
          py::arg("x"), py::arg("y"), py::arg("length") = py::none());
}
