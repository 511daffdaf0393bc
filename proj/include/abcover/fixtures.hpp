#pragma once

#include <string>
#include <vector>

#include "abcover/cover.hpp"

namespace abcover {

/// Names accepted by builtin_fixture: example1, example2, a1_singular,
/// bad_divisibility.
std::vector<std::string> builtin_fixture_names();

/// Throws std::out_of_range for an unknown name.
CoverData builtin_fixture(const std::string& name);

}  // namespace abcover
