// Copyright 2026 The qwave Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <regex>

#include "../support.hpp"

namespace qwave {
namespace {

TEST(Qprof, FixtureCostsByHand) {
  ProfileReport rep = profile(testing::profile_fixture());
  const ProfileNode *main = rep.find("main"), *mid = rep.find("middle"), *leaf = rep.find("leaf");
  ASSERT_TRUE(main && mid && leaf);
  EXPECT_NEAR(rep.total_s, 1334e-9, 1e-18);
  EXPECT_NEAR(main->self_s, 240e-9, 1e-18);
  EXPECT_NEAR(mid->self_s, 734e-9, 1e-18);
  EXPECT_NEAR(mid->total_s, 974e-9, 1e-18);
  EXPECT_NEAR(leaf->self_s, 360e-9, 1e-18);
  EXPECT_EQ(main->calls, 1u);
  EXPECT_EQ(mid->calls, 2u);
  EXPECT_EQ(leaf->calls, 3u);
  EXPECT_EQ(rep.nodes[rep.root].name, "main");
  EXPECT_NEAR(rep.self_sum(), rep.total_s, 1e-18);
}

TEST(Qprof, GoldenText) {
  Circuit fixture = load_circuit(std::string(QWAVE_TEST_DATA_DIR) + "/profile_fixture.json");
  EXPECT_EQ(fixture, testing::profile_fixture());
  EXPECT_EQ(render_gprof(profile(fixture), {0, 9}),
            testing::read_file(std::string(QWAVE_TEST_DATA_DIR) + "/profile_fixture.prof"));
}

TEST(Qprof, FlatPercentagesSumToHundred) {
  auto terms = hamiltonian_terms(Discretisation(12));
  Circuit c = trotter_simulate({terms.plus, terms.minus}, {1, 2.0, 1e-4, 300, Bound::Explicit});
  std::string text = render_gprof(profile(c));
  std::istringstream in(text.substr(0, text.find('\f')));
  std::regex row(R"(^\s*(\d+\.\d+)\s+\d+\.\d+\s+\d+\.\d+\s+\d+)");
  double sum = 0;
  std::string line;
  std::smatch m;
  int rows = 0;
  while (std::getline(in, line)) {
    if (std::regex_search(line, m, row)) {
      sum += std::stod(m[1]);
      ++rows;
    }
  }
  EXPECT_GT(rows, 5);
  EXPECT_NEAR(sum, 100.0, 0.1);
}

TEST(Qprof, ProfileOfFlattenedCircuitHasSameTotal) {
  Circuit c = testing::routine_circuit(cmp_lt_const(4, 5));
  EXPECT_DOUBLE_EQ(profile(flatten(c)).total_s, profile(c).total_s);
  EXPECT_NEAR(profile(c).total_s, estimate_time(c), 1e-18);
}

TEST(Qprof, InvertedRoutinesAreSeparateEntries) {
  Circuit c = testing::routine_circuit(cmp_lt_const(4, 5));
  ProfileReport rep = profile(c);
  const ProfileNode *fwd = rep.find("high_bit_compute"), *inv = rep.find("D-high_bit_compute");
  ASSERT_TRUE(fwd && inv);
  EXPECT_EQ(fwd->calls, 1u);
  EXPECT_EQ(inv->calls, 1u);
  EXPECT_DOUBLE_EQ(fwd->total_s, inv->total_s);
}

TEST(Qprof, RepetitionCountReachesTheFormula) {
  Discretisation d(16);
  Circuit c = wave_circuit(d, hamsim_plan(d, 1.0, 1e-5, 1, Bound::Minimised));
  ProfileReport rep = profile(c);
  ASSERT_NE(rep.find("trotter_suzuki_formula"), nullptr);
  EXPECT_EQ(rep.find("trotter_suzuki_formula")->calls, 1463u);
  EXPECT_NEAR(rep.self_sum() / estimate_time(c), 1.0, 1e-9);
  EXPECT_GT(oracle_share(rep), 0.7);
}

TEST(Qprof, OutputIsDeterministic) {
  Discretisation d(6);
  Circuit c = wave_circuit(d, hamsim_plan(d, 1.0, 1e-3, 1, Bound::Minimised));
  EXPECT_EQ(render_gprof(profile(c)), render_gprof(profile(c)));
  EXPECT_EQ(render_dot(profile(c)), render_dot(profile(c)));
}

TEST(Qprof, DotPrunesBelowThreshold) {
  ProfileReport rep = profile(testing::profile_fixture());
  std::string all = render_dot(rep, 0), pruned = render_dot(rep, 50);
  EXPECT_NE(all.find("leaf"), std::string::npos);
  EXPECT_EQ(pruned.find("leaf"), std::string::npos);
  EXPECT_NE(pruned.find("middle"), std::string::npos);
  EXPECT_EQ(all.rfind("digraph", 0), 0u);
}

TEST(Qprof, TextThresholdHidesSmallEntries) {
  ProfileReport rep = profile(testing::profile_fixture());
  std::string text = render_gprof(rep, {50, 9});
  std::string graph = text.substr(text.find("index % time"));
  EXPECT_EQ(graph.find("leaf [3]\n-"), std::string::npos);
  EXPECT_NE(graph.find("middle [2]"), std::string::npos);
}

}  // namespace
}  // namespace qwave
