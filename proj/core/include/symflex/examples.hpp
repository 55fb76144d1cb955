#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "symflex/document.hpp"

namespace symflex {

struct ExampleParams {
  std::uint64_t seed = 1;
  /// Size parameter of double-suspension: the polygon has 2(n-1) vertices, so
  /// n = 3 is the octahedron.
  int n = 3;
};

/// Names accepted by builtin_example.
std::vector<std::string> builtin_example_names();

/// Builds a named example. Sampled examples draw coordinates in U from the
/// seed and set options.generic_sample. Throws InvalidArgument on an unknown
/// name or an invalid n.
FrameworkDocument builtin_example(const std::string& name, const ExampleParams& params = {});

}  // namespace symflex
