#ifndef DOWNUP_PROJECTION_H_
#define DOWNUP_PROJECTION_H_

#include <compare>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "downup/distributions.h"
#include "downup/pmf.h"
#include "downup/rational.h"
#include "downup/rng.h"
#include "downup/tree.h"

namespace downup {

// A k-tree shape on {1..k} with an integer mass on every edge: external masses are at least
// one, internal masses nonnegative. Masses are stored in the shape's canonical edge order, so
// the first k entries are x_1..x_k and the rest are the internal masses.
class DecoratedKTree {
 public:
  DecoratedKTree(Tree shape, std::vector<int> masses);

  auto shape() const -> const Tree& { return shape_; }
  auto k() const -> int { return shape_.leaf_count(); }
  auto total_mass() const -> int;
  auto masses() const -> std::span<const int> { return masses_; }
  auto mass(LabelSet edge) const -> int { return masses_[shape_.edge_index(edge)]; }
  auto x(Label j) const -> int { return masses_[static_cast<std::size_t>(j - 1)]; }
  auto y(LabelSet edge) const -> int { return mass(edge); }

  auto operator==(const DecoratedKTree&) const -> bool = default;
  auto operator<=>(const DecoratedKTree&) const = default;

 private:
  Tree shape_;
  std::vector<int> masses_;
};

// A k-tree shape whose edges carry the label sets projected onto them. Blocks are stored in
// canonical edge order and partition {1..n}; block {j} contains j.
class CollapsedKTree {
 public:
  CollapsedKTree(Tree shape, std::vector<LabelSet> blocks);

  auto shape() const -> const Tree& { return shape_; }
  auto k() const -> int { return shape_.leaf_count(); }
  auto n() const -> int;
  auto blocks() const -> std::span<const LabelSet> { return blocks_; }
  auto block(LabelSet edge) const -> LabelSet { return blocks_[shape_.edge_index(edge)]; }

  auto operator==(const CollapsedKTree&) const -> bool = default;
  auto operator<=>(const CollapsedKTree&) const = default;

 private:
  Tree shape_;
  std::vector<LabelSet> blocks_;
};

// A k-tree shape with leaf masses x_1..x_k and, on each internal edge, the masses of the
// fringe subtrees strung along it ordered from the root end.
class BeadedKTree {
 public:
  BeadedKTree(Tree shape, std::vector<int> x, std::vector<Composition> beads);

  auto shape() const -> const Tree& { return shape_; }
  auto k() const -> int { return shape_.leaf_count(); }
  auto x() const -> std::span<const int> { return x_; }
  // Bead strings in canonical order of the internal edges.
  auto beads() const -> std::span<const Composition> { return beads_; }
  auto beads(LabelSet edge) const -> const Composition&;

  auto operator==(const BeadedKTree&) const -> bool = default;
  auto operator<=>(const BeadedKTree&) const = default;

 private:
  Tree shape_;
  std::vector<int> x_;
  std::vector<Composition> beads_;
};

enum class ProjectionKind { none, mass, star, beads };

auto parse_projection(std::string_view name) -> ProjectionKind;
auto projection_name(ProjectionKind kind) -> std::string;

auto forget_labels(const CollapsedKTree& c) -> DecoratedKTree;
auto forget_beads(const BeadedKTree& b) -> DecoratedKTree;

// Projections of a tree on {1..n} onto its restriction to {1..k}, 1 <= k <= n.
auto project_mass(const Tree& t, int k) -> DecoratedKTree;
auto project_collapsed(const Tree& t, int k) -> CollapsedKTree;
auto project_beads(const Tree& t, int k) -> BeadedKTree;

// Ranked internal structures in canonical edge order of the shape. An internal edge's
// structure has an extra leaf 1 standing for the edge's lower end.
auto internal_structures(const Tree& t, int k) -> std::vector<Tree>;
// Inverse of (project_collapsed, internal_structures).
auto reassemble(const CollapsedKTree& c, std::span<const Tree> structures) -> Tree;

// The law q_{n,alpha} conditioned on a projection, by filtering the enumerated trees.
auto lambda_mass(const DecoratedKTree& d, const Rational& alpha) -> FinitePmf<Tree>;
auto lambda_star(const CollapsedKTree& c, const Rational& alpha) -> FinitePmf<Tree>;
auto lambda_beads(const BeadedKTree& b, const Rational& alpha) -> FinitePmf<Tree>;
// The same conditional law built from independent internal structures: q_{mu,alpha} on
// external edges and modified q_{mu+1,alpha} on internal ones. Requires alpha in (0, 1).
auto lambda_star_product(const CollapsedKTree& c, const Rational& alpha) -> FinitePmf<Tree>;
auto lambda_star_sample(const CollapsedKTree& c, const Rational& alpha, RngStream& rng) -> Tree;

// Law of the mass projection under q_{n,alpha}: shape ~ q_{k,alpha}, masses minus the
// external ones ~ DM^alpha_{2k-1}(n - k).
auto decorated_marginal_pmf(int n, int k, const Rational& alpha) -> FinitePmf<DecoratedKTree>;
auto decorated_marginal_sample(int n, int k, const Rational& alpha, RngStream& rng) -> DecoratedKTree;

// Every state of each projected space for given (n, k).
auto enumerate_decorated(int n, int k) -> std::vector<DecoratedKTree>;
auto enumerate_collapsed(int n, int k) -> std::vector<CollapsedKTree>;
auto enumerate_beaded(int n, int k) -> std::vector<BeadedKTree>;

}  // namespace downup

#endif  // DOWNUP_PROJECTION_H_
