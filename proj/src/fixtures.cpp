#include "gwexcess/fixtures.hpp"

namespace gwexcess {

namespace {

using Rows = std::vector<std::vector<std::vector<long long>>>;

const Rows kF31Square = {
    {{-15, -8, -14}, {-2, -2, 10}, {12, -5, -10}},
    {{-8, -14, -2}, {10, -12, 13}, {-15, -15, 13}},
    {{5, 11, 14}, {-11, -10, -5}, {14, -2, 3}},
    {{7, -2, -4}, {-10, 0, 10}, {4, -5, -4}},
    {{5, -10, 2}, {-12, 6, 7}, {8, -10, -11}},
};

const Rows kF31Nonsquare = {
    {{3, -8, 0}, {-12, 9, 3}, {4, -12, 6}},
    {{2, -7, 8}, {9, 2, -5}, {14, -9, -4}},
    {{-11, -3, -2}, {4, -5, 10}, {-13, 8, 8}},
    {{-11, 15, 15}, {-15, 10, -14}, {13, 10, 11}},
    {{-15, 14, -8}, {8, -6, 3}, {8, -3, -3}},
};

const Rows kF61Sample = {
    {{20, 4, -21}, {5, -30, -24}, {18, 11, -20}},
    {{-16, -22, 5}, {-2, 20, -25}, {-7, 25, 23}},
    {{28, -7, 26}, {30, 21, 7}, {27, -24, -30}},
    {{5, -12, -2}, {1, -26, 24}, {14, 18, 0}},
    {{21, 2, 1}, {2, -14, -4}, {8, 26, 27}},
};

}  // namespace

std::vector<std::string> fixture_names() { return {"f31-square", "f31-nonsquare", "f61-sample"}; }

std::optional<ExcessInput> named_fixture(const std::string& name) {
  if (name == "f31-square") return make_input(Field::prime(31), 5, kF31Square);
  if (name == "f31-nonsquare") return make_input(Field::prime(31), 5, kF31Nonsquare);
  if (name == "f61-sample") return make_input(Field::prime(61), 5, kF61Sample);
  return std::nullopt;
}

Matrix f31_square_reference_gram() {
  return Matrix::from_ints(Field::prime(31), {
                                                 {-9, 15, 7, 5, -8, 1, 6, -5, 3},
                                                 {15, -1, -9, -8, -4, 1, -5, 6, 7},
                                                 {7, -9, -14, 1, 1, 6, 3, 7, -9},
                                                 {5, -8, 1, -7, 0, 1, 2, 13, 2},
                                                 {-8, -4, 1, 0, -3, 0, 13, -9, -12},
                                                 {1, 1, 6, 1, 0, -3, 2, -12, 10},
                                                 {6, -5, 3, 2, 13, 2, 13, 9, 4},
                                                 {-5, 6, 7, 13, -9, -12, 9, 15, 2},
                                                 {3, 7, -9, 2, -12, 10, 4, 2, 9},
                                             });
}

std::vector<long long> f31_nonsquare_reference_diagonal() { return {-2, 3, -14, 4}; }

std::vector<long long> f61_sample_reference_diagonal() { return {-1, -11, -29, -12}; }

std::vector<PinnedSearch> pinned_searches() { return {{3, 3, 31699}, {5, 2, 171848}}; }

}  // namespace gwexcess
