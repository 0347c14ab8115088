#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>

namespace frnorm::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1; // selftest found a violated invariant
inline constexpr int kInvalid = 2; // bad flags, schema or validation errors
inline constexpr int kNoConvergence = 3;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Runs the invariant suite over the fixture fleet; returns the number of
// failed checks.
std::size_t selftest(std::ostream& out, std::size_t samples, std::uint64_t seed);

} // namespace frnorm::cli
