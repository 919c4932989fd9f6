#ifndef DOWNUP_TREE_H_
#define DOWNUP_TREE_H_

#include <compare>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "downup/label_set.h"

namespace downup {

// A rooted binary tree with labelled leaves, stored as its edge set: each edge is the set of
// leaf labels below it. Edges are kept in canonical order, so singletons come first (in label
// order) and the root edge (the full label set) comes last.
class Tree {
 public:
  // Validates the edge set and sorts it canonically. Throws std::invalid_argument.
  static auto from_edges(std::vector<LabelSet> edges) -> Tree;
  // Sorts canonically without validation; for edge sets produced by tree operations.
  static auto from_valid_edges(std::vector<LabelSet> edges) -> Tree;
  static auto singleton(Label j) -> Tree;

  auto labels() const -> LabelSet { return edges_.back(); }
  auto leaf_count() const -> int { return labels().size(); }
  auto edges() const -> std::span<const LabelSet> { return edges_; }
  auto external_edges() const -> std::span<const LabelSet> {
    return std::span{edges_}.first(static_cast<std::size_t>(leaf_count()));
  }
  auto internal_edges() const -> std::span<const LabelSet> {
    return std::span{edges_}.subspan(static_cast<std::size_t>(leaf_count()));
  }
  auto root() const -> LabelSet { return edges_.back(); }

  auto has_edge(LabelSet b) const -> bool;
  // Position of b in canonical order; throws std::out_of_range if b is not an edge.
  auto edge_index(LabelSet b) const -> std::size_t;
  // Smallest edge strictly containing b. Throws std::out_of_range for the root.
  auto parent(LabelSet b) const -> LabelSet;
  auto sibling(LabelSet b) const -> LabelSet { return parent(b) - b; }
  // The two maximal edges strictly inside b (b must be internal), smaller minimum label first.
  auto children(LabelSet b) const -> std::pair<LabelSet, LabelSet>;

  auto operator==(const Tree& other) const -> bool { return edges_ == other.edges_; }
  auto operator<=>(const Tree& other) const -> std::strong_ordering;

 private:
  explicit Tree(std::vector<LabelSet> edges) : edges_{std::move(edges)} {}
  std::vector<LabelSet> edges_;
};

struct TreeHash {
  auto operator()(const Tree& t) const noexcept -> std::size_t;
};

// Raised by decode for malformed text; position is a byte offset into the input.
class DecodeError : public std::invalid_argument {
 public:
  DecodeError(const std::string& what, std::size_t position);
  auto position() const -> std::size_t { return position_; }

 private:
  std::size_t position_;
};

// t - j: removes leaf j and suppresses its parent vertex. Requires j in t and at least 2 leaves.
auto delete_leaf(const Tree& t, Label j) -> Tree;
// s + (edge, j): inserts a new leaf j on the given edge of s.
auto insert_leaf(const Tree& s, LabelSet edge, Label j) -> Tree;
// Restriction t ∩ c = {B ∩ c} without the empty set; c must meet the label set.
auto restrict_to(const Tree& t, LabelSet c) -> Tree;
auto swap_labels(const Tree& t, Label a, Label b) -> Tree;
// Deletes label j and shifts labels above j down by one (t need not contain j).
auto close_label_gap(const Tree& t, Label j) -> Tree;
// Relabels the leaves to 1..#A preserving their relative order.
auto rank_relabel(const Tree& t) -> Tree;
// Relabels leaf rank r (1-based among the current labels) to labels[r - 1].
auto unrank_relabel(const Tree& t, std::span<const Label> labels) -> Tree;

struct SpinalSubtree {
  LabelSet root_edge;
  Tree subtree;
};

// Subtrees hanging off the path from leaf j to the root, nearest first.
auto spinal_subtrees(const Tree& t, Label j) -> std::vector<SpinalSubtree>;

// max(i, a, b) with a, b the smallest labels of the first two spinal subtrees of leaf i
// (b = 0 when there is only one). Requires at least 2 leaves.
auto swap_target(const Tree& t, Label i) -> Label;

// Number of trees with n labelled leaves: (2n-3)!!.
auto tree_count(int n) -> std::uint64_t;

inline constexpr int k_max_enumeration_size = 9;

// Visits every tree on {1..n} (insertion order, not canonical). n in 1..k_max_enumeration_size.
void for_each_tree(int n, const std::function<void(const Tree&)>& visit);
// All trees on {1..n} sorted canonically.
auto enumerate_trees(int n) -> std::vector<Tree>;
// Every tree on an arbitrary label set, sorted canonically.
auto enumerate_trees(LabelSet labels) -> std::vector<Tree>;

// Canonical text form, e.g. "[[1],[2],[1,2]]".
auto encode(const Tree& t) -> std::string;
// Inverse of encode; rejects anything that is not a canonical encoding of a valid tree.
auto decode(std::string_view text) -> Tree;
// Newick export with children ordered by smallest label, e.g. "((1,2),3);".
auto to_newick(const Tree& t) -> std::string;

}  // namespace downup

template <>
struct std::hash<downup::Tree> : downup::TreeHash {};

#endif  // DOWNUP_TREE_H_
