#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "support.hpp"

using namespace cubepath;
using namespace cubepath::testing;

namespace {

SearchStatus tail(const CubeIndex& q, const Configuration& c, bool prune) {
  std::vector<int> omitted, path;
  for (std::size_t i = 2; i < c.size(); ++i) omitted.push_back(static_cast<int>(c[i].index()));
  detail::TailSearch s(q, static_cast<int>(c.a().index()), static_cast<int>(c.b().index()), omitted,
                       {.prune = prune});
  return s.run({}, path);
}

SearchStatus line(const CubeIndex& q, const Configuration& c, detail::LineSearch::Options opt) {
  std::vector<int> omitted, path;
  for (std::size_t i = 2; i < c.size(); ++i) omitted.push_back(static_cast<int>(c[i].index()));
  detail::LineSearch s(q, static_cast<int>(c.a().index()), static_cast<int>(c.b().index()), omitted, opt);
  auto st = s.run({}, path);
  if (st == SearchStatus::found) {
    std::vector<TritVector> om(c.vertices().begin() + 2, c.vertices().end());
    EXPECT_TRUE(verify(certify(LoosePath(detail::to_vertices(path, q.dim())), om)));
  }
  return st;
}

// Every 2- and 4-configuration of Q(2), as ordered tuples.
std::vector<Configuration> all_small_configs() {
  auto vs = enumerate_vertices(2);
  std::vector<Configuration> out;
  for (const auto& a : vs)
    for (const auto& b : vs) {
      if (a == b) continue;
      out.emplace_back(a, b);
      for (const auto& x : vs)
        for (const auto& y : vs)
          if (x < y && x != a && x != b && y != a && y != b) out.emplace_back(a, b, x, y);
    }
  return out;
}

}  // namespace

TEST(Nonexistence, NoLooseHamiltonPathForD2AndD3) {
  for (int d : {2, 3}) {
    auto r = check_lhp_nonexistence(d);
    EXPECT_TRUE(r.absent) << "d=" << d;
    EXPECT_FALSE(r.counterexample);
    EXPECT_EQ(r.endpoint_orbits, d);
  }
}

TEST(Nonexistence, TrivialPathForD1) {
  auto r = check_lhp_nonexistence(1);
  EXPECT_FALSE(r.absent);
  ASSERT_TRUE(r.counterexample);
  EXPECT_TRUE(verify(*r.counterexample));
  EXPECT_EQ(r.counterexample->path.vertices.size(), 3u);
}

TEST(TailSearch, PrunedMatchesUnprunedOnQ2) {
  CubeIndex q(2);
  int found = 0;
  for (const auto& c : all_small_configs()) {
    auto p = tail(q, c, true), u = tail(q, c, false);
    EXPECT_EQ(p, u) << c.str();
    found += p == SearchStatus::found;
  }
  EXPECT_GT(found, 0);
}

TEST(Engines, AgreeOnQ2) {
  CubeIndex q(2);
  for (const auto& c : all_small_configs()) EXPECT_EQ(line(q, c, {}), tail(q, c, false)) << c.str();
}

TEST(Engines, AgreeOnNormalizedQ3Configurations) {
  CubeIndex q(3);
  auto all = enumerate_normalized_4configs(3);
  int found = 0, absent = 0;
  for (const auto& c : all) {
    auto l = line(q, c, {});
    EXPECT_EQ(l, tail(q, c, true)) << c.str();
    EXPECT_EQ(l, line(q, c, {.propagate = false, .class_counts = false, .connectivity = false})) << c.str();
    EXPECT_EQ(l, line(q, c, {.seed = 7})) << c.str();
    (l == SearchStatus::found ? found : absent)++;
  }
  // derived: no normalized 4-configuration of Q(3) has a covering path
  EXPECT_EQ(found, 0);
  EXPECT_EQ(absent, static_cast<int>(all.size()));
}

TEST(Engines, CoveringPathsAreVerified) {
  std::mt19937_64 rng(21);
  CubeIndex q(4);
  int found = 0;
  for (int trial = 0; trial < 10; ++trial) {
    auto c = random_S_config(4, rng);
    auto r = find_covering_path(c, {200000, 0}, Engine::line_selection, 0, &q);
    if (!r.certificate) continue;
    ++found;
    EXPECT_TRUE(verify(*r.certificate));
    EXPECT_EQ(r.certificate->start, c.a());
    EXPECT_EQ(r.certificate->end, c.b());
    EXPECT_EQ(r.certificate->path.length(), 39u);
  }
  EXPECT_GT(found, 5);
}

TEST(Engines, MatrixDIsExhaustedAtD4) {
  auto r = find_covering_path(matrix_D());
  EXPECT_EQ(r.status, SearchStatus::exhausted);
  EXPECT_FALSE(r.certificate);
}

TEST(Engines, LimitsAreReportedNotDecided) {
  auto r = find_covering_path(matrix_A(), {1000, 0});
  EXPECT_EQ(r.status, SearchStatus::limit_reached);
}

TEST(SettledBy, EveryReadingIsNormalizedAndVerified) {
  const auto& store = shipped_store();
  int checked = 0;
  for (const auto& [key, cert] : store.entries) {
    if (++checked > 100) break;
    auto s = settled_by(cert);
    EXPECT_GE(s.size(), 1u);
    bool self = false;
    for (const auto& [k, c] : s) {
      EXPECT_TRUE(is_normalized(k));
      EXPECT_TRUE(verify(c));
      EXPECT_EQ(c.start, k.a());
      EXPECT_EQ(c.end, k.b());
      self = self || k == key;
    }
    EXPECT_TRUE(self) << key.str();
  }
}

TEST(WitnessFile, EmptyFileLeavesEverythingUncovered) {
  std::istringstream in("");
  auto rep = verify_witness_stream(in);
  EXPECT_EQ(rep.records, 0u);
  EXPECT_EQ(rep.ledger.covered.size(), 0u);
  EXPECT_EQ(rep.ledger.uncovered.size(), 1071u);
}

TEST(WitnessFile, ShippedFileCoversAllButFour) {
  auto rep = verify_witness_file(data_path("witnesses-d4.txt"));
  EXPECT_TRUE(rep.diagnostics.empty());
  EXPECT_EQ(rep.accepted, rep.records);
  EXPECT_EQ(rep.ledger.covered.size(), 1067u);
  EXPECT_EQ(rep.ledger.uncovered,
            (std::set<Configuration>{matrix_A(), matrix_B(), matrix_C(), matrix_D()}));
}

TEST(WitnessFile, CorruptedRecordIsRejectedAlone) {
  const auto& store = shipped_store();
  auto it = store.entries.begin();
  std::string first = to_string(it->second);
  std::string second = to_string(std::next(it)->second);
  // flip one trit in the path line of the first record
  auto pos = first.rfind('\n', first.size() - 2) + 1;
  first[pos] = first[pos] == '0' ? '1' : '0';
  std::istringstream in(first + second);
  auto rep = verify_witness_stream(in);
  EXPECT_EQ(rep.records, 2u);
  EXPECT_EQ(rep.accepted, 1u);
  ASSERT_EQ(rep.diagnostics.size(), 1u);
  EXPECT_NE(rep.diagnostics[0].find("line 1"), std::string::npos);
  EXPECT_TRUE(rep.ledger.covered.count(std::next(it)->first));
}

TEST(WitnessFile, AcceptsTheEightyOneVertexEncoding) {
  const auto& cert = shipped_store().entries.begin()->second;
  std::string line;
  for (const auto& v : cert.path.vertices) line += v.str() + " ";
  line += cert.omitted[0].str() + " " + cert.omitted[1].str() + "\n";
  std::istringstream in(line);
  auto rep = verify_witness_stream(in);
  EXPECT_EQ(rep.accepted, 1u);
  EXPECT_TRUE(rep.ledger.covered.count(shipped_store().entries.begin()->first));
}
