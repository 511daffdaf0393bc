#include "abcover/fixtures.hpp"

#include <stdexcept>

namespace abcover {

namespace {

CoverData hyperplanes(std::vector<std::int64_t> factors, int n, const std::vector<std::vector<std::int64_t>>& cols) {
  CoverData d;
  d.group = AbelianGroup(std::move(factors));
  d.ambient_dim = n;
  d.linear_general_position = true;
  for (std::size_t j = 0; j < cols.size(); ++j)
    d.branches.push_back(BranchDivisor{1, d.group.element(cols[j]), "h" + std::to_string(j + 1)});
  return d;
}

// (Z2)^7 over P^4, twelve hyperplanes.
CoverData example1() {
  return hyperplanes({2, 2, 2, 2, 2, 2, 2}, 4,
                     {{1, 0, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0, 0}, {0, 0, 0, 1, 0, 0, 0},
                      {0, 0, 0, 0, 1, 0, 0}, {0, 0, 0, 0, 0, 1, 0}, {0, 0, 0, 0, 0, 0, 1}, {1, 1, 1, 1, 1, 0, 0},
                      {1, 1, 1, 0, 0, 1, 1}, {1, 0, 0, 1, 1, 1, 1}, {0, 1, 0, 1, 0, 1, 0}, {0, 0, 1, 0, 1, 0, 1}});
}

// (Z3)^4 over P^4, nine hyperplanes.
CoverData example2() {
  return hyperplanes({3, 3, 3, 3}, 4,
                     {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {2, 0, 0, 2}, {2, 2, 0, 0},
                      {1, 1, 1, 1}, {0, 2, 2, 0}, {0, 0, 2, 2}});
}

// z^2 = h1 h2 over P^2: an A1 curve over the line h1 = h2 = 0.
CoverData a1_singular() { return hyperplanes({2}, 2, {{1}, {1}}); }

// z^2 = h1 h2 h3: odd branch degree.
CoverData bad_divisibility() { return hyperplanes({2}, 2, {{1}, {1}, {1}}); }

}  // namespace

std::vector<std::string> builtin_fixture_names() {
  return {"example1", "example2", "a1_singular", "bad_divisibility"};
}

CoverData builtin_fixture(const std::string& name) {
  if (name == "example1") return example1();
  if (name == "example2") return example2();
  if (name == "a1_singular") return a1_singular();
  if (name == "bad_divisibility") return bad_divisibility();
  throw std::out_of_range("unknown fixture " + name);
}

}  // namespace abcover
