#ifndef DOWNUP_GROWTH_H_
#define DOWNUP_GROWTH_H_

#include <vector>

#include "downup/pmf.h"
#include "downup/rational.h"
#include "downup/rng.h"
#include "downup/tree.h"

namespace downup {

// Ford alpha growth: leaf m+1 attaches to an external edge with weight 1 - alpha and to an
// internal edge with weight alpha. The modified variant gives edge {1} weight alpha instead.
// alpha = 1/2 unmodified is uniform attachment (Remy).
struct GrowthConfig {
  Rational alpha{1, 2};
  bool modified = false;
};

void validate(const GrowthConfig& cfg);

// Probabilities of attaching the next leaf to each edge of t (canonical edge order). t must be
// labelled {1..m}. A one-leaf tree has a single edge, chosen with probability one.
auto growth_edge_probs(const Tree& t, const GrowthConfig& cfg) -> std::vector<Weighted<LabelSet>>;
// Inserts leaf m+1 into a tree on {1..m}.
auto growth_step(const Tree& t, const GrowthConfig& cfg, RngStream& rng) -> Tree;
auto sample_tree(int n, const GrowthConfig& cfg, RngStream& rng) -> Tree;

// Probability that n - 1 growth steps from the one-leaf tree produce t (a tree on {1..n}).
auto growth_pmf(const Tree& t, const GrowthConfig& cfg) -> Rational;
// The full law on trees with n leaves (n <= k_max_enumeration_size).
auto growth_law(int n, const GrowthConfig& cfg) -> FinitePmf<Tree>;

}  // namespace downup

#endif  // DOWNUP_GROWTH_H_
