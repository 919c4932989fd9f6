#ifndef DOWNUP_NTREE_CHAIN_H_
#define DOWNUP_NTREE_CHAIN_H_

#include "downup/growth.h"
#include "downup/pmf.h"
#include "downup/rational.h"
#include "downup/rng.h"
#include "downup/tree.h"

namespace downup {

enum class NTreeChainKind { uniform, alpha };

struct NTreeChainConfig {
  NTreeChainKind kind = NTreeChainKind::uniform;
  Rational alpha{1, 2};  // used by the alpha chain only
};

// The down-move shared by both chains: swap labels i and swap_target(t, i), then delete the
// leaf now carrying the swap target. The result keeps its labels (no relabelling).
struct DownMove {
  Tree rest;
  Label removed;
};

auto down_move(const Tree& t, Label i) -> DownMove;
// Uniform chain with the random choices fixed: down-move at i, reinsert the removed label on
// the given edge of the remaining tree.
auto uniform_move(const Tree& t, Label i, LabelSet edge) -> Tree;
// Alpha chain down-move: down_move, then shift labels above the removed one down by one.
auto alpha_down(const Tree& t, Label i) -> Tree;

auto uniform_step(const Tree& t, RngStream& rng) -> Tree;
auto alpha_step(const Tree& t, const Rational& alpha, RngStream& rng) -> Tree;
auto chain_step(const Tree& t, const NTreeChainConfig& cfg, RngStream& rng) -> Tree;

// Exact one-step law from t.
auto kernel_row(const Tree& t, const NTreeChainConfig& cfg) -> FinitePmf<Tree>;
// The stationary law: uniform for the uniform chain, q_{n,alpha} for the alpha chain.
auto stationary_law(int n, const NTreeChainConfig& cfg) -> FinitePmf<Tree>;
auto growth_config(const NTreeChainConfig& cfg) -> GrowthConfig;

// Law of the label removed in one down-move from q_{n,alpha}: (2j - 2 - alpha)/(n(n-1-alpha))
// for j >= 3, and the complementary 2(1-alpha)/(n(n-1-alpha)) for j = 2. Requires n >= 2.
auto resampled_label_pmf(int n, const Rational& alpha) -> FinitePmf<int>;

}  // namespace downup

#endif  // DOWNUP_NTREE_CHAIN_H_
