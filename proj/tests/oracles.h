#ifndef DOWNUP_TESTS_ORACLES_H_
#define DOWNUP_TESTS_ORACLES_H_

// Brute-force reference computations, written without the library's enumeration, growth or
// chain code so that they can check it.

#include <functional>
#include <map>
#include <set>
#include <vector>

#include "downup/distributions.h"
#include "downup/label_set.h"
#include "downup/pmf.h"
#include "downup/rational.h"
#include "downup/tree.h"

namespace downup::oracle {

// Every rooted binary tree on `labels`, as edge sets, by recursive bipartition.
inline auto edge_sets(LabelSet labels) -> std::vector<std::set<std::uint64_t>> {
  if (labels.size() == 1) { return {{labels.bits()}}; }
  auto out = std::vector<std::set<std::uint64_t>>{};
  auto anchor = LabelSet::of(labels.min_label());
  auto rest = labels - anchor;
  // Enumerate every part containing the smallest label, except the whole set.
  for (auto sub = rest.bits();; sub = (sub - 1) & rest.bits()) {
    auto left = LabelSet{sub} | anchor;
    auto right = labels - left;
    if (!right.empty()) {
      for (const auto& l : edge_sets(left)) {
        for (const auto& r : edge_sets(right)) {
          auto e = l;
          e.insert(r.begin(), r.end());
          e.insert(labels.bits());
          out.push_back(std::move(e));
        }
      }
    }
    if (sub == 0) { break; }
  }
  return out;
}

inline auto to_tree(const std::set<std::uint64_t>& edges) -> Tree {
  auto v = std::vector<LabelSet>{};
  for (auto b : edges) { v.emplace_back(b); }
  return Tree::from_edges(std::move(v));
}

// Growth weight of edge e: 1 - alpha external, alpha internal; modified gives {1} weight alpha.
inline auto growth_weight(LabelSet e, const Rational& alpha, bool modified) -> Rational {
  if (e.size() >= 2 || (modified && e == LabelSet::of(1))) { return alpha; }
  return 1 - alpha;
}

// Inserts leaf j above edge e by rewriting the edge set directly.
inline auto attach(const std::set<std::uint64_t>& edges, LabelSet e, Label j) -> std::set<std::uint64_t> {
  auto out = std::set<std::uint64_t>{};
  for (auto b : edges) {
    auto s = LabelSet{b};
    out.insert(s.contains(e) ? (s | LabelSet::of(j)).bits() : b);
  }
  out.insert(LabelSet::of(j).bits());
  out.insert(e.bits());
  return out;
}

// Law of the growth process after n leaves, summed over all insertion histories.
inline auto growth_law(int n, const Rational& alpha, bool modified) -> std::map<std::set<std::uint64_t>, Rational> {
  auto law = std::map<std::set<std::uint64_t>, Rational>{{{LabelSet::of(1).bits()}, Rational{1}}};
  for (auto j = 2; j <= n; ++j) {
    auto next = std::map<std::set<std::uint64_t>, Rational>{};
    for (const auto& [edges, p] : law) {
      auto total = Rational{0};
      for (auto b : edges) { total += growth_weight(LabelSet{b}, alpha, modified); }
      for (auto b : edges) {
        auto w = Rational{growth_weight(LabelSet{b}, alpha, modified) / total};
        next[attach(edges, LabelSet{b}, j)] += p * w;
      }
    }
    law = std::move(next);
  }
  return law;
}

// Dirichlet-multinomial law by walking every sequence of m Polya urn draws.
inline auto urn_paths(int m, const std::vector<Rational>& weights) -> std::map<Composition, Rational> {
  auto law = std::map<Composition, Rational>{{Composition(weights.size(), 0), Rational{1}}};
  for (auto step = 0; step < m; ++step) {
    auto next = std::map<Composition, Rational>{};
    for (const auto& [counts, p] : law) {
      auto total = Rational{0};
      for (auto c = std::size_t{0}; c < weights.size(); ++c) { total += weights[c] + counts[c]; }
      for (auto c = std::size_t{0}; c < weights.size(); ++c) {
        auto grown = counts;
        ++grown[c];
        next[grown] += p * (weights[c] + counts[c]) / total;
      }
    }
    law = std::move(next);
  }
  return law;
}

// Swap target from the definition: walk up from leaf i collecting sibling minima.
inline auto swap_target(const std::set<std::uint64_t>& edges, Label i) -> Label {
  auto parent_of = [&](LabelSet b) {
    auto best = LabelSet{};
    for (auto c : edges) {
      auto s = LabelSet{c};
      if (s != b && s.contains(b) && (best.empty() || s.size() < best.size())) { best = s; }
    }
    return best;
  };
  auto leaf = LabelSet::of(i);
  auto p = parent_of(leaf);
  auto a = (p - leaf).min_label();
  auto b = 0;
  auto gp = parent_of(p);
  if (!gp.empty()) { b = (gp - p).min_label(); }
  return std::max({i, a, b});
}

// Removes leaf j by rewriting the edge set (labels kept).
inline auto detach(const std::set<std::uint64_t>& edges, Label j) -> std::set<std::uint64_t> {
  auto out = std::set<std::uint64_t>{};
  auto leaf = LabelSet::of(j);
  for (auto b : edges) {
    auto s = LabelSet{b} - leaf;
    if (!s.empty()) { out.insert(s.bits()); }
  }
  return out;
}

inline auto swap(const std::set<std::uint64_t>& edges, Label a, Label b) -> std::set<std::uint64_t> {
  auto out = std::set<std::uint64_t>{};
  for (auto e : edges) { out.insert(swap_labels(LabelSet{e}, a, b).bits()); }
  return out;
}

// One step of the uniform chain from t, enumerated over the leaf picked and the edge used.
inline auto uniform_row(const Tree& t) -> std::map<std::set<std::uint64_t>, Rational> {
  auto edges = std::set<std::uint64_t>{};
  for (auto e : t.edges()) { edges.insert(e.bits()); }
  auto n = t.leaf_count();
  auto row = std::map<std::set<std::uint64_t>, Rational>{};
  for (auto i = 1; i <= n; ++i) {
    auto target = swap_target(edges, i);
    auto rest = detach(swap(edges, i, target), target);
    for (auto e : rest) {
      row[attach(rest, LabelSet{e}, target)] += Rational{1, n} / static_cast<long>(rest.size());
    }
  }
  return row;
}

// Pushforward of a law on trees through f.
template <typename F>
inline auto pushforward(const std::map<std::set<std::uint64_t>, Rational>& law, F f) {
  using Y = std::decay_t<decltype(f(std::declval<const Tree&>()))>;
  auto out = std::map<Y, Rational>{};
  for (const auto& [edges, p] : law) { out[f(to_tree(edges))] += p; }
  return out;
}

}  // namespace downup::oracle

#endif  // DOWNUP_TESTS_ORACLES_H_
