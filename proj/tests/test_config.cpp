#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "support.hpp"

using namespace cubepath;
using namespace cubepath::testing;

namespace {

std::set<int> base_types(const Configuration& c) {
  std::set<int> out;
  for (const auto& t : classify(c)) out.insert(t.base_type);
  return out;
}

}  // namespace

TEST(Classify, MatrixA) {
  auto ts = classify(matrix_A());
  ASSERT_FALSE(ts.empty());
  for (const auto& t : ts) {
    EXPECT_EQ(t.base_type, 4);
    EXPECT_FALSE(t.phi);
  }
  EXPECT_TRUE(in_S(matrix_A()));
  EXPECT_FALSE(in_Sprime(matrix_A()));
}

TEST(Classify, MatrixB) {
  EXPECT_EQ(base_types(matrix_B()), std::set<int>{1});
  EXPECT_FALSE(in_Sprime(matrix_B()));
}

TEST(Classify, MatrixC) {
  for (const auto& t : classify(matrix_C())) {
    if (t.split_coordinate == 4)
      EXPECT_EQ(t.base_type, 3);
    else
      EXPECT_TRUE(t.base_type == 2 || t.base_type == 5) << t.str();
  }
  EXPECT_EQ(base_types(matrix_C()), (std::set<int>{2, 3, 5}));
  EXPECT_FALSE(in_Sprime(matrix_C()));
}

TEST(Classify, MatrixD) {
  EXPECT_EQ(base_types(matrix_D()), std::set<int>{3});
  EXPECT_FALSE(in_Sprime(matrix_D()));
}

TEST(Classify, AgreesWithOracleOverN4) {
  for (const auto& c : enumerate_normalized_4configs(4)) {
    EXPECT_EQ(in_S(c), oracle::in_S(c)) << c.str();
    EXPECT_EQ(in_Sprime(c), oracle::in_Sprime(c)) << c.str();
    // S' is contained in S
    if (in_Sprime(c)) EXPECT_TRUE(in_S(c)) << c.str();
  }
}

TEST(Classify, AgreesWithOracleOnRandomConfigurations) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 5000; ++trial) {
    int d = 3 + trial % 4;
    auto c = random_config(d, rng);
    EXPECT_EQ(in_S(c), oracle::in_S(c)) << c.str();
    EXPECT_EQ(in_Sprime(c), oracle::in_Sprime(c)) << c.str();
  }
}

TEST(Classify, TypesAreSymmetryInvariant) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 2000; ++trial) {
    int d = 4 + trial % 2;
    auto c = random_config(d, rng);
    auto s = Symmetry::random(d, rng);
    auto img = apply(s, c);
    EXPECT_EQ(base_types(c), base_types(img));
    EXPECT_EQ(in_Sprime(c), in_Sprime(img));
    EXPECT_EQ(in_S(c), in_S(c.with_xy_swapped()));
  }
}

TEST(Classify, PhiRequiresTheMatchingBaseType) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 2000; ++trial) {
    for (const auto& t : classify(random_config(5, rng))) {
      if (!t.phi) continue;
      switch (*t.phi) {
        case 1: EXPECT_EQ(t.base_type, 1); break;
        case 2: EXPECT_TRUE(t.base_type == 2 || t.base_type == 5); break;
        case 3: EXPECT_EQ(t.base_type, 3); break;
        case 4: EXPECT_EQ(t.base_type, 4); break;
        default: ADD_FAILURE();
      }
    }
  }
}

TEST(Classify, StringForm) {
  TypeAssignment t{3, 4, false, std::nullopt};
  EXPECT_EQ(t.str(), "t3 i=4 swap=0 phi=-");
  t.phi = 3;
  t.xy_swapped = true;
  EXPECT_EQ(t.str(), "t3 i=4 swap=1 phi=3");
}

TEST(PenultimateRows, AllFirstTraversalRowsListed) {
  std::set<std::string> rows;
  for (int code = 0; code < 81; ++code) {
    auto [r, p] = first_traversal_row(
        {static_cast<trit>(code / 27), static_cast<trit>(code / 9 % 3), static_cast<trit>(code / 3 % 3),
         static_cast<trit>(code % 3)});
    rows.insert(std::string{char('0' + r[0]), char('0' + r[1]), char('0' + r[2]), char('0' + r[3])});
  }
  EXPECT_EQ(rows.size(), 14u);
  for (int k = 0; k < 14; ++k) EXPECT_TRUE(rows.count(penultimate_rows[k]));
  EXPECT_EQ(row_number({0, 1, 2, 1}), 13);
  EXPECT_EQ(row_number({0, 0, 0, 0}), 1);
  EXPECT_THROW(row_number({1, 0, 0, 0}), std::invalid_argument);
}

TEST(PenultimateRows, ReadsCoordinateDMinusOne) {
  auto c = Configuration::parse("00000 00110 01021 01112");
  EXPECT_EQ(penultimate_row(c), 13);
}
