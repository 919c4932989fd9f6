#include <gtest/gtest.h>

#include <map>

#include "downup/decorated_chain.h"
#include "downup/gof.h"
#include "downup/projection.h"

namespace downup {
namespace {

auto q(long a, long b) -> Rational { return ratio(a, b); }

auto tree(std::initializer_list<std::initializer_list<Label>> edges) -> Tree {
  auto v = std::vector<LabelSet>{};
  for (auto e : edges) { v.push_back(LabelSet::of(e)); }
  return Tree::from_edges(v);
}

auto cherry() -> Tree { return tree({{1}, {2}, {1, 2}}); }

template <typename T>
auto total(const std::vector<Weighted<T>>& law) -> Rational {
  auto s = Rational{0};
  for (const auto& w : law) { s += w.weight; }
  return s;
}

TEST(Decorated, RejectsInvalidMasses) {
  EXPECT_THROW((DecoratedKTree{cherry(), {0, 1, 0}}), std::invalid_argument);
  EXPECT_THROW((DecoratedKTree{cherry(), {1, 1, -1}}), std::invalid_argument);
  EXPECT_THROW((DecoratedKTree{cherry(), {1, 1}}), std::invalid_argument);
}

TEST(Decorated, DropLabelRelabels) {
  auto d = DecoratedKTree{tree({{1}, {2}, {3}, {2, 3}, {1, 2, 3}}), {1, 1, 2, 0, 0}};
  auto dropped = drop_label(d, 1);
  EXPECT_EQ(dropped, (DecoratedKTree{cherry(), {1, 2, 0}}));
  EXPECT_THROW(drop_label(d, 3), std::invalid_argument);
  EXPECT_THROW(drop_label(DecoratedKTree{cherry(), {1, 1, 1}}, 1), std::invalid_argument);
}

TEST(Decorated, InsertWithNoSpareMassIsForced) {
  auto law = insert_label_law(DecoratedKTree{cherry(), {2, 1, 0}}, q(1, 2));
  ASSERT_EQ(law.size(), 1u);
  EXPECT_EQ(law[0].weight, 1);
  EXPECT_EQ(law[0].value, (DecoratedKTree{tree({{1}, {2}, {3}, {1, 3}, {1, 2, 3}}), {1, 1, 1, 0, 0}}));
}

TEST(Decorated, InsertLawSumsToOneAndKeepsMass) {
  for (const auto& a : std::vector<Rational>{q(1, 3), q(1, 2)}) {
    for (const auto& d : enumerate_decorated(6, 3)) {
      auto law = insert_label_law(d, a);
      EXPECT_EQ(total(law), 1);
      for (const auto& w : law) {
        EXPECT_EQ(w.value.k(), 4);
        EXPECT_EQ(w.value.total_mass(), 6);
      }
    }
  }
  EXPECT_THROW(insert_label_law(DecoratedKTree{cherry(), {1, 1, 0}}, q(1, 2)), std::invalid_argument);
}

TEST(Decorated, UpMoveExample) {
  auto law = up_move_law(DecoratedKTree{cherry(), {2, 1, 0}}, q(1, 2));
  auto p = std::map<DecoratedKTree, Rational>{};
  for (const auto& w : law) { p[w.value] = w.weight; }
  EXPECT_EQ(p[(DecoratedKTree{cherry(), {3, 1, 0}})], q(3, 5));
  EXPECT_EQ(p[(DecoratedKTree{cherry(), {2, 2, 0}})], q(1, 5));
  EXPECT_EQ(p[(DecoratedKTree{cherry(), {2, 1, 1}})], q(1, 5));
}

TEST(Decorated, ResampleLawSumsToOne) {
  for (const auto& d : enumerate_decorated(6, 3)) {
    for (auto i = 1; i <= 3; ++i) {
      auto leaf = LabelSet::of(i);
      if (d.x(i) != 1 || d.mass(d.shape().parent(leaf)) != 0) { continue; }
      auto law = resample_label_law(d, i);
      EXPECT_EQ(total(law), 1);
      for (const auto& w : law) { EXPECT_EQ(w.value.total_mass(), 6); }
    }
  }
}

TEST(Decorated, SwapLeafLabels) {
  auto d = DecoratedKTree{tree({{1}, {2}, {3}, {2, 3}, {1, 2, 3}}), {1, 2, 3, 4, 5}};
  auto s = swap_leaf_labels(d, 1, 3);
  EXPECT_EQ(s.shape(), tree({{1}, {2}, {3}, {1, 2}, {1, 2, 3}}));
  EXPECT_EQ(s.x(1), 3);
  EXPECT_EQ(s.x(3), 1);
  EXPECT_EQ(s.y(LabelSet::of({1, 2})), 4);
  EXPECT_EQ(swap_leaf_labels(s, 1, 3), d);
}

TEST(Decorated, BranchTotalsForMassOnParent) {
  // Leaves 1 and 2 have mass one and the root carries 2: half the mass picks a leaf and
  // decrements the root, half decrements the root directly.
  auto d = DecoratedKTree{cherry(), {1, 1, 2}};
  for (auto cfg : {DecoratedChainConfig{DecoratedChainKind::uniform, q(1, 2)},
                   DecoratedChainConfig{DecoratedChainKind::alpha, q(1, 3)}}) {
    auto by_case = std::map<MoveCase, Rational>{};
    for (const auto& b : decorated_transitions(d, cfg)) { by_case[b.move_case] += b.prob; }
    EXPECT_EQ(by_case[MoveCase::a], q(1, 2));
    EXPECT_EQ(by_case[MoveCase::b], q(1, 2));
    EXPECT_EQ(by_case[MoveCase::c], 0);
  }
}

TEST(Decorated, LeafDecrementUsesDecrementLaw) {
  // From x = (1, 1), y = 3, picking a leaf (mass 1/5 each) moves s units of the root onto it
  // with probability delta(3 : s), then an up move follows.
  auto d = DecoratedKTree{cherry(), {1, 1, 3}};
  auto a = q(1, 3);
  auto expected = std::map<DecoratedKTree, Rational>{};
  for (auto i = 0; i < 2; ++i) {
    for (const auto& [s, p] : decrement_pmf(3, a)) {
      auto masses = std::vector<int>{1, 1, 3 - s};
      masses[static_cast<std::size_t>(i)] = s;
      for (const auto& w : up_move_law(DecoratedKTree{cherry(), masses}, a)) {
        expected[w.value] += Rational{q(1, 5) * p * w.weight};
      }
    }
  }
  auto got = std::map<DecoratedKTree, Rational>{};
  for (const auto& b : decorated_transitions(d, {DecoratedChainKind::alpha, a})) {
    if (b.move_case == MoveCase::b) { got[b.next] += b.prob; }
  }
  EXPECT_EQ(got, expected);
}

TEST(Decorated, RowsAreStochastic) {
  for (auto [n, k] : std::vector<std::pair<int, int>>{{4, 2}, {5, 2}, {5, 3}, {6, 3}, {5, 5}}) {
    for (const auto& d : enumerate_decorated(n, k)) {
      auto row = decorated_kernel_row(d, {DecoratedChainKind::uniform, q(1, 2)});
      for (const auto& [next, p] : row) {
        EXPECT_EQ(next.total_mass(), n);
        EXPECT_EQ(next.k(), k);
      }
      if (k < n) { EXPECT_NO_THROW(decorated_kernel_row(d, {DecoratedChainKind::alpha, q(1, 3)})); }
    }
  }
}

TEST(Decorated, AlphaChainNeedsSpareMass) {
  auto d = DecoratedKTree{tree({{1}, {2}, {3}, {2, 3}, {1, 2, 3}}), {1, 1, 1, 0, 0}};
  EXPECT_THROW(decorated_kernel_row(d, {DecoratedChainKind::alpha, q(1, 3)}), std::invalid_argument);
  EXPECT_NO_THROW(decorated_kernel_row(d, {DecoratedChainKind::uniform, q(1, 2)}));
}

TEST(Decorated, SamplerMatchesKernelRow) {
  auto d = DecoratedKTree{tree({{1}, {2}, {3}, {2, 3}, {1, 2, 3}}), {1, 2, 1, 0, 2}};
  for (auto cfg : {DecoratedChainConfig{DecoratedChainKind::uniform, q(1, 2)},
                   DecoratedChainConfig{DecoratedChainKind::alpha, q(1, 3)}}) {
    auto rng = RngStream{11, 0};
    auto counts = std::map<DecoratedKTree, std::int64_t>{};
    for (auto i = 0; i < 100000; ++i) { ++counts[decorated_step(d, cfg, rng)]; }
    EXPECT_GT(gof_test(counts, decorated_kernel_row(d, cfg)).p_value, 1e-3);
  }
}

TEST(Decorated, CaseCSamplerMatchesKernelRow) {
  // Every leaf has mass one under an empty parent, so only case (c) fires from leaves 2 and 3.
  auto d = DecoratedKTree{tree({{1}, {2}, {3}, {2, 3}, {1, 2, 3}}), {3, 1, 1, 0, 0}};
  for (auto cfg : {DecoratedChainConfig{DecoratedChainKind::uniform, q(1, 2)},
                   DecoratedChainConfig{DecoratedChainKind::alpha, q(1, 4)}}) {
    auto rng = RngStream{12, 0};
    auto counts = std::map<DecoratedKTree, std::int64_t>{};
    for (auto i = 0; i < 100000; ++i) { ++counts[decorated_step(d, cfg, rng)]; }
    EXPECT_GT(gof_test(counts, decorated_kernel_row(d, cfg)).p_value, 1e-3);
  }
}

}  // namespace
}  // namespace downup
