#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "downup/gof.h"
#include "downup/harness.h"
#include "downup/io.h"

namespace downup {
namespace {

auto q(long a, long b) -> Rational { return ratio(a, b); }

TEST(Io, PmfCsvRoundTrip) {
  auto rows = std::vector<PmfRow>{{"[[1],[2],[1,2]]", q(1, 3)}, {"a,\"b\"", q(2, 3)}};
  auto out = std::ostringstream{};
  write_pmf_csv(out, rows);
  auto in = std::istringstream{out.str()};
  auto back = read_pmf_csv(in);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].outcome, rows[0].outcome);
  EXPECT_EQ(back[1].outcome, rows[1].outcome);
  EXPECT_EQ(back[1].prob, q(2, 3));
}

TEST(Io, CountsCsvRoundTrip) {
  auto rows = std::vector<CountRow>{{"x", 3}, {"{\"a\":1,\"b\":2}", 7}};
  auto out = std::ostringstream{};
  write_counts_csv(out, rows);
  auto in = std::istringstream{out.str()};
  auto back = read_counts_csv(in);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].outcome, rows[1].outcome);
  EXPECT_EQ(back[1].count, 7);
}

TEST(Io, CsvRejectsMalformedInput) {
  auto bad = std::istringstream{"outcome,count\nx,notanumber\n"};
  EXPECT_THROW(read_counts_csv(bad), std::invalid_argument);
  EXPECT_EQ(split_csv_record("a,\"b,c\",d"), (std::vector<std::string>{"a", "b,c", "d"}));
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
}

TEST(Io, DecoratedStateJson) {
  auto d = DecoratedKTree{Tree::from_edges({LabelSet::of(1), LabelSet::of(2), LabelSet::of({1, 2})}), {2, 1, 0}};
  EXPECT_EQ(state_to_string(d), R"({"shape":[[1],[2],[1,2]],"x":{"1":2,"2":1},"y":{"1-2":0}})");
}

TEST(Gof, SingleCellIsExact) {
  auto r = gof_test({{"a", 100}}, {{"a", Rational{1}}});
  EXPECT_EQ(r.total_variation, 0.0);
  EXPECT_EQ(r.p_value, 1.0);
}

TEST(Gof, RejectsOutcomeOutsideSupport) {
  EXPECT_THROW(gof_test({{"b", 1}}, {{"a", Rational{1}}}), std::invalid_argument);
}

TEST(Gof, ChiSquareSurvival) {
  EXPECT_NEAR(chi_square_sf(3.841458820694124, 1), 0.05, 1e-9);
  EXPECT_NEAR(chi_square_sf(2.0, 2), std::exp(-1.0), 1e-12);
}

auto draw_counts(const std::vector<double>& p, int n, RngStream& rng) -> std::vector<CountRow> {
  auto counts = std::vector<std::int64_t>(p.size(), 0);
  for (auto i = 0; i < n; ++i) { ++counts[rng.weighted_index(p)]; }
  auto rows = std::vector<CountRow>{};
  for (auto c = std::size_t{0}; c < p.size(); ++c) { rows.push_back({std::to_string(c), counts[c]}); }
  return rows;
}

auto expected_rows() -> std::vector<PmfRow> {
  return {{"0", q(1, 10)}, {"1", q(2, 10)}, {"2", q(3, 10)}, {"3", q(4, 10)}};
}

TEST(Gof, CalibratedUnderTheNull) {
  auto rng = RngStream{21, 0};
  auto rejections = 0;
  for (auto rep = 0; rep < 400; ++rep) {
    if (gof_test(draw_counts({0.1, 0.2, 0.3, 0.4}, 2000, rng), expected_rows()).p_value < 0.05) { ++rejections; }
  }
  EXPECT_GT(rejections, 8);
  EXPECT_LT(rejections, 40);
}

TEST(Gof, DetectsTwentyPercentPerturbation) {
  auto rng = RngStream{22, 0};
  auto r = gof_test(draw_counts({0.12, 0.18, 0.3, 0.4}, 100000, rng), expected_rows());
  EXPECT_LT(r.p_value, 1e-3);
  EXPECT_NEAR(r.total_variation, 0.02, 0.005);
}

TEST(Harness, ValidateRejectsBadSpecs) {
  auto spec = SimSpec{};
  spec.n = 5;
  spec.steps = 10;
  EXPECT_NO_THROW(validate(spec));
  auto s = spec;
  s.steps = 0;
  EXPECT_THROW(validate(s), std::invalid_argument);
  s = spec;
  s.chain = SimChain::dec_uniform;
  EXPECT_THROW(validate(s), std::invalid_argument);
  s.k = 6;
  EXPECT_THROW(validate(s), std::invalid_argument);
  s = spec;
  s.chain = SimChain::alpha;
  s.alpha = Rational{2};
  EXPECT_THROW(validate(s), std::invalid_argument);
  s = spec;
  s.projection = ProjectionKind::beads;
  EXPECT_THROW(validate(s), std::invalid_argument);
  EXPECT_THROW(parse_chain("nope"), std::invalid_argument);
  EXPECT_EQ(chain_name(parse_chain("dec-alpha")), "dec-alpha");
}

TEST(Harness, RunIsDeterministicWithExpectedTotals) {
  auto spec = SimSpec{};
  spec.chain = SimChain::dec_alpha;
  spec.n = 6;
  spec.k = 2;
  spec.alpha = q(1, 3);
  spec.steps = 1001;
  spec.replicas = 3;
  spec.thin = 10;
  spec.seed = 5;
  spec.record_transitions = true;
  auto a = run_sim(spec);
  spec.threads = 2;
  auto b = run_sim(spec);
  EXPECT_EQ(a.occupancy, b.occupancy);
  EXPECT_EQ(a.transitions, b.transitions);
  EXPECT_EQ(a.recorded, 300);
  auto steps = std::int64_t{0};
  for (const auto& [key, c] : a.transitions) { steps += c; }
  EXPECT_EQ(steps, 3003);
  spec.seed = 6;
  EXPECT_NE(run_sim(spec).occupancy, a.occupancy);
}

TEST(Harness, ProjectedTreeRunStaysInSupport) {
  auto spec = SimSpec{};
  spec.n = 5;
  spec.k = 2;
  spec.projection = ProjectionKind::star;
  spec.steps = 2000;
  spec.seed = 1;
  auto s = run_sim(spec);
  auto support = std::set<std::string>{};
  for (const auto& row : stationary_observed_pmf(spec)) { support.insert(row.outcome); }
  for (const auto& [key, c] : s.occupancy) { EXPECT_TRUE(support.contains(key)) << key; }
}

TEST(Harness, FullMassSamplerIsDeterministic) {
  // With k = n every edge mass is forced, so the observed state is a function of the shape.
  auto spec = SimSpec{};
  spec.chain = SimChain::dec_uniform;
  spec.n = 3;
  spec.k = 3;
  spec.steps = 1;
  auto rng = RngStream{1, 0};
  auto pmf = stationary_observed_pmf(spec);
  EXPECT_EQ(pmf.size(), 3u);
  for (const auto& row : pmf) { EXPECT_EQ(row.prob, q(1, 3)); }
  auto seen = std::set<std::string>{};
  for (auto i = 0; i < 200; ++i) { seen.insert(stationary_observed_sample(spec, rng)); }
  EXPECT_EQ(seen.size(), 3u);
}

TEST(Harness, TransitionRowSelectsSource) {
  auto s = SimSummary{};
  s.transitions[{"a", "b"}] = 2;
  s.transitions[{"a", "c"}] = 3;
  s.transitions[{"b", "a"}] = 4;
  auto row = transition_row(s, "a");
  ASSERT_EQ(row.size(), 2u);
  EXPECT_EQ(row[1].count, 3);
}

}  // namespace
}  // namespace downup
