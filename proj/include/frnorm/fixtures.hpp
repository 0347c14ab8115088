#pragma once
//
// A fixed fleet of (subalgebra, weight) pairs used by selftest and the test
// suites: single-summand block algebras, cross-summand identifications, a
// trivially grouped direct sum, the full algebra, and two tower levels.
//

#include "frnorm/algebra.hpp"
#include "frnorm/subalgebra.hpp"

#include <string>
#include <vector>

namespace frnorm {

struct Fixture {
    std::string name;
    StandardSubalgebra subalgebra;
    TracialWeight weight;
};

const std::vector<Fixture>& fixture_fleet();

} // namespace frnorm
