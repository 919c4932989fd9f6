#ifndef DOWNUP_DECORATED_CHAIN_H_
#define DOWNUP_DECORATED_CHAIN_H_

#include <vector>

#include "downup/pmf.h"
#include "downup/projection.h"
#include "downup/rational.h"
#include "downup/rng.h"

namespace downup {

enum class DecoratedChainKind { uniform, alpha };

struct DecoratedChainConfig {
  DecoratedChainKind kind = DecoratedChainKind::uniform;
  Rational alpha{1, 2};  // used by the alpha chain only
};

// Which branch of a transition fired: (a) plain decrement, (b) decrement of a leaf of mass one
// whose parent edge carries mass, (c) decrement of a leaf of mass one with an empty parent edge.
enum class MoveCase { a, b, c };

struct DecoratedBranch {
  DecoratedKTree next;
  Rational prob;
  MoveCase move_case;
  Label dropped;  // the swap target in case (c), 0 otherwise
};

// Removes leaf i (mass one, empty parent edge) and shifts labels above i down by one.
auto drop_label(const DecoratedKTree& d, Label i) -> DecoratedKTree;
// Inserts leaf k+1 into a decorated k-tree, keeping the total mass. Requires mass > k.
auto insert_label_law(const DecoratedKTree& d, const Rational& alpha) -> std::vector<Weighted<DecoratedKTree>>;
auto insert_label(const DecoratedKTree& d, const Rational& alpha, RngStream& rng) -> DecoratedKTree;
// Adds one unit of mass to an edge chosen with weight x - alpha (external) or y + alpha (internal).
auto up_move_law(const DecoratedKTree& d, const Rational& alpha) -> std::vector<Weighted<DecoratedKTree>>;
auto up_move(const DecoratedKTree& d, const Rational& alpha, RngStream& rng) -> DecoratedKTree;
// Removes leaf i (mass one, empty parent edge) without relabelling and reinserts it, splitting
// the mass of the chosen edge by a DM(1/2, 1/2, 1/2) draw. The total mass is preserved.
auto resample_label_law(const DecoratedKTree& d, Label i) -> std::vector<Weighted<DecoratedKTree>>;
auto resample_label(const DecoratedKTree& d, Label i, RngStream& rng) -> DecoratedKTree;
// Swaps two leaf labels together with their decorations.
auto swap_leaf_labels(const DecoratedKTree& d, Label a, Label b) -> DecoratedKTree;

// Every branch of one transition with its probability (branches may repeat a state).
auto decorated_transitions(const DecoratedKTree& d, const DecoratedChainConfig& cfg) -> std::vector<DecoratedBranch>;
auto decorated_kernel_row(const DecoratedKTree& d, const DecoratedChainConfig& cfg) -> FinitePmf<DecoratedKTree>;

auto decorated_step(const DecoratedKTree& d, const DecoratedChainConfig& cfg, RngStream& rng) -> DecoratedKTree;
auto uniform_decorated_step(const DecoratedKTree& d, RngStream& rng) -> DecoratedKTree;
auto alpha_decorated_step(const DecoratedKTree& d, const Rational& alpha, RngStream& rng) -> DecoratedKTree;

}  // namespace downup

#endif  // DOWNUP_DECORATED_CHAIN_H_
