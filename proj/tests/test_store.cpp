#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "support.hpp"

using namespace cubepath;
using namespace cubepath::testing;

TEST(Store, ShippedStoreLoadsWithoutRejections) {
  const auto& s = shipped_store();
  EXPECT_TRUE(s.rejected.empty());
  EXPECT_EQ(s.entries.size(), 1067u);
  EXPECT_EQ(s.engine, store_engine_version);
  for (const auto& c : enumerate_normalized_4configs(4))
    if (in_Sprime(c)) EXPECT_TRUE(s.entries.count(c)) << c.str();
  for (const auto& [k, c] : s.entries) {
    EXPECT_TRUE(is_normalized(k));
    EXPECT_TRUE(verify(c));
  }
}

TEST(Store, SaveLoadRoundTrip) {
  const auto& s = shipped_store();
  std::ostringstream out;
  save(s, out);
  std::istringstream in(out.str());
  auto t = load_store(in);
  EXPECT_TRUE(t.rejected.empty());
  EXPECT_EQ(t.entries, s.entries);
  EXPECT_EQ(t.seed, s.seed);
  EXPECT_EQ(t.engine, s.engine);
  std::ostringstream again;
  save(t, again);
  EXPECT_EQ(again.str(), out.str());
}

TEST(Store, TamperedTritIsRejected) {
  WitnessStore s;
  auto it = shipped_store().entries.begin();
  s.entries.insert(*it);
  s.entries.insert(*std::next(it));
  std::ostringstream out;
  save(s, out);
  std::string text = out.str();
  // the path line of the first record is line 6
  std::size_t pos = 0;
  for (int line = 1; line < 6; ++line) pos = text.find('\n', pos) + 1;
  text[pos + 2] = text[pos + 2] == '2' ? '0' : static_cast<char>(text[pos + 2] + 1);
  std::istringstream in(text);
  auto t = load_store(in);
  EXPECT_EQ(t.entries.size(), 1u);
  ASSERT_EQ(t.rejected.size(), 1u);
  EXPECT_NE(t.rejected[0].find("line 2"), std::string::npos) << t.rejected[0];
}

TEST(Store, MismatchedKeyIsRejected) {
  auto it = shipped_store().entries.begin();
  auto other = std::next(it)->first;
  std::ostringstream out;
  out << other.str() << '\n';
  write_certificate(out, it->second);
  std::istringstream in(out.str());
  auto t = load_store(in);
  EXPECT_TRUE(t.entries.empty());
  EXPECT_EQ(t.rejected.size(), 1u);
}

TEST(Store, MissingFileNamesTheFix) {
  try {
    load_store(data_path("no-such-file.txt"));
    FAIL();
  } catch (const std::runtime_error& ex) {
    EXPECT_NE(std::string(ex.what()).find("search-base"), std::string::npos);
  }
}

TEST(Lookup, OwnFrameReturnsStoredPath) {
  for (const auto& [k, c] : shipped_store().entries) {
    if (!in_Sprime(k)) continue;
    EXPECT_EQ(lookup(shipped_store(), k), c);
    break;
  }
}

TEST(Lookup, SymmetryImagesVerify) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 500; ++trial) {
    auto c = random_config(4, rng);
    if (!in_Sprime(c)) continue;
    auto cert = lookup(shipped_store(), c);
    EXPECT_TRUE(verify(cert));
    EXPECT_EQ(cert.start, c.a());
    EXPECT_EQ(cert.end, c.b());
    auto s = Symmetry::random(4, rng);
    auto img = lookup(shipped_store(), apply(s, c));
    EXPECT_TRUE(verify(img));
    EXPECT_EQ(img.start, apply(s, c.a()));
  }
}

TEST(Lookup, UncoveredMatricesFail) {
  for (const auto& c : {matrix_A(), matrix_B(), matrix_C(), matrix_D()})
    EXPECT_THROW(lookup(shipped_store(), c), base_case_incomplete);
}

TEST(Lookup, IncompleteStoreFailsExplicitly) {
  WitnessStore partial = shipped_store();
  auto key = partial.entries.begin()->first;
  partial.entries.erase(key);
  std::ostringstream out;
  save(partial, out);
  std::istringstream in(out.str());
  auto loaded = load_store(in);
  EXPECT_TRUE(loaded.rejected.empty());
  try {
    lookup(loaded, key);
    FAIL();
  } catch (const base_case_incomplete& ex) {
    EXPECT_NE(std::string(ex.what()).find("base case incomplete"), std::string::npos);
  }
}
