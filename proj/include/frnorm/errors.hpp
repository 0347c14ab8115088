#pragma once

#include <stdexcept>
#include <string>

namespace frnorm {

// Every error raised by the library derives from Error. The CLI maps
// validation-type errors to exit status 2 and ConvergenceError to 3.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define FRNORM_DEFINE_ERROR(Name, tag)                                   \
    class Name : public Error {                                          \
    public:                                                              \
        explicit Name(const std::string& what) : Error(tag, what) {}     \
    }

FRNORM_DEFINE_ERROR(DimensionError, "dimension");
FRNORM_DEFINE_ERROR(SymmetryError, "symmetry");
FRNORM_DEFINE_ERROR(ShapeError, "shape");
FRNORM_DEFINE_ERROR(IndexError, "index");
FRNORM_DEFINE_ERROR(WeightError, "weight");
FRNORM_DEFINE_ERROR(PartitionError, "partition");
FRNORM_DEFINE_ERROR(ValidationError, "validation");
FRNORM_DEFINE_ERROR(UnitarityError, "unitarity");
FRNORM_DEFINE_ERROR(RationalityError, "rationality");
FRNORM_DEFINE_ERROR(RangeError, "range");
FRNORM_DEFINE_ERROR(OverflowError, "overflow");
FRNORM_DEFINE_ERROR(SchemaError, "schema");
FRNORM_DEFINE_ERROR(ConvergenceError, "convergence");

#undef FRNORM_DEFINE_ERROR

} // namespace frnorm
