#include <gtest/gtest.h>

#include <map>

#include "downup/gof.h"
#include "downup/growth.h"
#include "downup/ntree_chain.h"
#include "oracles.h"

namespace downup {
namespace {

auto q(long a, long b) -> Rational { return ratio(a, b); }

auto tree(std::initializer_list<std::initializer_list<Label>> edges) -> Tree {
  auto v = std::vector<LabelSet>{};
  for (auto e : edges) { v.push_back(LabelSet::of(e)); }
  return Tree::from_edges(v);
}

auto probs(const Tree& t, const GrowthConfig& cfg) -> std::vector<Rational> {
  auto out = std::vector<Rational>{};
  for (const auto& [e, p] : growth_edge_probs(t, cfg)) { out.push_back(p); }
  return out;
}

TEST(Growth, EdgeProbabilitiesOfTwoTree) {
  auto t = tree({{1}, {2}, {1, 2}});
  EXPECT_EQ(probs(t, {q(1, 3), false}), (std::vector<Rational>{q(2, 5), q(2, 5), q(1, 5)}));
  EXPECT_EQ(probs(t, {q(1, 3), true}), (std::vector<Rational>{q(1, 4), q(1, 2), q(1, 4)}));
  EXPECT_EQ(probs(Tree::singleton(1), {q(1, 3), false}), (std::vector<Rational>{1}));
}

TEST(Growth, ThreeLeafLaw) {
  auto a = q(2, 7);
  auto law = growth_law(3, {a, false});
  EXPECT_EQ(law.prob(tree({{1}, {2}, {3}, {1, 2}, {1, 2, 3}})), a / (2 - a));
  EXPECT_EQ(law.prob(tree({{1}, {2}, {3}, {1, 3}, {1, 2, 3}})), (1 - a) / (2 - a));
  EXPECT_EQ(law.prob(tree({{1}, {2}, {3}, {2, 3}, {1, 2, 3}})), (1 - a) / (2 - a));
}

TEST(Growth, HalfIsUniform) {
  for (const auto& [t, p] : growth_law(4, {q(1, 2), false})) { EXPECT_EQ(p, q(1, 15)); }
  EXPECT_EQ(growth_law(5, {q(1, 2), false}).size(), 105u);
}

TEST(Growth, LawMatchesInsertionHistories) {
  for (auto modified : {false, true}) {
    for (auto a : {q(1, 3), q(1, 2), q(3, 4)}) {
      for (auto n = 1; n <= 6; ++n) {
        auto law = growth_law(n, {a, modified});
        auto brute = oracle::growth_law(n, a, modified);
        ASSERT_EQ(law.size(), brute.size());
        for (const auto& [edges, p] : brute) {
          auto t = oracle::to_tree(edges);
          EXPECT_EQ(law.prob(t), p);
          EXPECT_EQ(growth_pmf(t, {a, modified}), p);
        }
      }
    }
  }
}

TEST(Growth, SamplerMatchesExactLaw) {
  auto cfg = GrowthConfig{q(1, 3), false};
  auto rng = RngStream{9, 0};
  auto counts = std::map<Tree, std::int64_t>{};
  for (auto i = 0; i < 100000; ++i) { ++counts[sample_tree(5, cfg, rng)]; }
  EXPECT_GT(gof_test(counts, growth_law(5, cfg)).p_value, 0.001);
}

TEST(Growth, RejectsBadAlpha) {
  EXPECT_THROW(validate(GrowthConfig{q(3, 2), false}), std::invalid_argument);
  EXPECT_THROW(validate(GrowthConfig{Rational{0}, true}), std::invalid_argument);
}

TEST(NTreeChain, UniformMoveExample) {
  auto t = tree({{1}, {2}, {3}, {2, 3}, {1, 2, 3}});
  // i = 3 has swap target 3; reinserting 3 at {1}.
  EXPECT_EQ(uniform_move(t, 3, LabelSet::of(1)), tree({{1}, {2}, {3}, {1, 3}, {1, 2, 3}}));
}

TEST(NTreeChain, UniformRowsMatchBruteForce) {
  for (auto n = 2; n <= 5; ++n) {
    for (const auto& t : enumerate_trees(n)) {
      auto row = kernel_row(t, {NTreeChainKind::uniform, q(1, 2)});
      auto brute = oracle::uniform_row(t);
      ASSERT_EQ(row.size(), brute.size());
      for (const auto& [edges, p] : brute) { EXPECT_EQ(row.prob(oracle::to_tree(edges)), p); }
    }
  }
}

TEST(NTreeChain, AlphaRowsMatchBruteForce) {
  auto a = q(1, 3);
  auto cfg = GrowthConfig{a, false};
  for (const auto& t : enumerate_trees(4)) {
    // Swap, delete, close the gap, then grow leaf n from each edge.
    auto brute = std::map<Tree, Rational>{};
    for (auto i = 1; i <= 4; ++i) {
      auto j = swap_target(t, i);
      auto rest = close_label_gap(swap_labels(t, i, j), j);
      for (const auto& [e, p] : growth_edge_probs(rest, cfg)) { brute[insert_leaf(rest, e, 4)] += p / 4; }
    }
    auto row = kernel_row(t, {NTreeChainKind::alpha, a});
    ASSERT_EQ(row.size(), brute.size());
    for (const auto& [s, p] : brute) { EXPECT_EQ(row.prob(s), p); }
  }
}

TEST(NTreeChain, ThreeLeafUniformIsStationary) {
  auto pi = Rational{1, 3};
  auto trees = enumerate_trees(3);
  for (const auto& s : trees) {
    auto mass = Rational{0};
    for (const auto& t : trees) { mass += pi * kernel_row(t, {}).prob(s); }
    EXPECT_EQ(mass, pi);
  }
}

TEST(NTreeChain, UnlabelledShapesFollowAldousMoves) {
  // Forgetting labels, a uniform step removes a uniform leaf and reattaches at a uniform edge:
  // shape transition probabilities depend only on the shape of the start.
  auto shape = [](const Tree& t) {
    auto sizes = std::vector<int>{};
    for (auto e : t.edges()) {
      auto [a, b] = e.size() >= 2 ? t.children(e) : std::pair{e, e};
      sizes.push_back(e.size() >= 2 ? std::min(a.size(), b.size()) * 10 + e.size() : 1);
    }
    std::sort(sizes.begin(), sizes.end());
    return sizes;
  };
  auto rows = std::map<std::vector<int>, std::map<std::vector<int>, Rational>>{};
  for (const auto& t : enumerate_trees(5)) {
    auto row = std::map<std::vector<int>, Rational>{};
    for (const auto& [s, p] : kernel_row(t, {})) { row[shape(s)] += p; }
    auto [it, fresh] = rows.emplace(shape(t), row);
    if (!fresh) { EXPECT_EQ(it->second, row); }
  }
}

TEST(NTreeChain, HalfAlphaChainDiffersFromUniformChain) {
  auto t = enumerate_trees(4).front();
  EXPECT_FALSE(kernel_row(t, {}) == kernel_row(t, {NTreeChainKind::alpha, q(1, 2)}));
  EXPECT_EQ(stationary_law(4, {}), stationary_law(4, {NTreeChainKind::alpha, q(1, 2)}));
}

TEST(NTreeChain, ResampledLabelFrozenValues) {
  auto half = resampled_label_pmf(3, q(1, 2));
  EXPECT_EQ(half.prob(2), q(2, 9));
  EXPECT_EQ(half.prob(3), q(7, 9));
  auto third = resampled_label_pmf(3, q(1, 3));
  EXPECT_EQ(third.prob(2), q(4, 15));
  EXPECT_EQ(third.prob(3), q(11, 15));
  auto four = resampled_label_pmf(4, q(1, 2));
  for (auto j = 3; j <= 4; ++j) { EXPECT_EQ(four.prob(j), q(4 * j - 5, 4 * 5)); }
}

TEST(NTreeChain, ResampledLabelMatchesStationaryTally) {
  for (auto a : {q(1, 3), q(1, 2), q(3, 5)}) {
    for (auto n = 2; n <= 6; ++n) {
      auto tally = std::map<int, Rational>{};
      for (const auto& [t, p] : growth_law(n, {a, false})) {
        for (auto i = 1; i <= n; ++i) { tally[swap_target(t, i)] += p / n; }
      }
      auto pmf = resampled_label_pmf(n, a);
      for (const auto& [j, p] : tally) { EXPECT_EQ(pmf.prob(j), p) << n << " " << j; }
    }
  }
}

TEST(NTreeChain, StepsStayOnLabelsAndSupport) {
  auto rng = RngStream{1, 0};
  auto t = enumerate_trees(6).front();
  for (auto s = 0; s < 2000; ++s) {
    auto next = chain_step(t, {NTreeChainKind::alpha, q(1, 3)}, rng);
    EXPECT_GT(kernel_row(t, {NTreeChainKind::alpha, q(1, 3)}).prob(next), 0);
    t = next;
  }
  EXPECT_EQ(t.labels(), LabelSet::range(6));
}

}  // namespace
}  // namespace downup
