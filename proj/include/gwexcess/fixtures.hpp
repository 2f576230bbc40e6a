#pragma once

// Built-in inputs: three 5 x 3 matrices of linear forms with known forms, and
// the seeds of random quadric systems whose isolated zeros are all of small
// degree.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gwexcess/excess.hpp"

namespace gwexcess {

// "f31-square", "f31-nonsquare", "f61-sample".
std::vector<std::string> fixture_names();
std::optional<ExcessInput> named_fixture(const std::string& name);

// Reference 9 x 9 Gram matrix of B' for "f31-square".
Matrix f31_square_reference_gram();
// Reference diagonal entries for "f31-nonsquare" and "f61-sample".
std::vector<long long> f31_nonsquare_reference_diagonal();
std::vector<long long> f61_sample_reference_diagonal();

struct PinnedSearch {
  std::uint64_t p;
  unsigned max_degree;
  std::uint64_t seed;
};
// Random quadric systems (random_admissible_quadrics(F_p, 5, seed)) whose 16
// isolated zeros all have degree <= max_degree.
std::vector<PinnedSearch> pinned_searches();

}  // namespace gwexcess
