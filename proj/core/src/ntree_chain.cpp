#include "downup/ntree_chain.h"

#include <stdexcept>

namespace downup {

namespace {

void require_chain_tree(const Tree& t, const char* context) {
  if (t.leaf_count() < 2 || t.labels() != LabelSet::range(t.leaf_count())) {
    throw std::invalid_argument(std::string{context} + ": need a tree on {1..n} with n >= 2");
  }
}

}  // namespace

auto down_move(const Tree& t, Label i) -> DownMove {
  auto target = swap_target(t, i);
  auto swapped = swap_labels(t, i, target);
  return {delete_leaf(swapped, target), target};
}

auto uniform_move(const Tree& t, Label i, LabelSet edge) -> Tree {
  auto [rest, removed] = down_move(t, i);
  return insert_leaf(rest, edge, removed);
}

auto alpha_down(const Tree& t, Label i) -> Tree {
  auto [rest, removed] = down_move(t, i);
  return close_label_gap(rest, removed);
}

auto uniform_step(const Tree& t, RngStream& rng) -> Tree {
  require_chain_tree(t, "uniform_step");
  auto n = t.leaf_count();
  auto i = static_cast<Label>(rng.uniform_index(static_cast<std::uint64_t>(n))) + 1;
  auto [rest, removed] = down_move(t, i);
  auto edge = rest.edges()[rng.uniform_index(rest.edges().size())];
  return insert_leaf(rest, edge, removed);
}

auto alpha_step(const Tree& t, const Rational& alpha, RngStream& rng) -> Tree {
  require_chain_tree(t, "alpha_step");
  auto n = t.leaf_count();
  auto i = static_cast<Label>(rng.uniform_index(static_cast<std::uint64_t>(n))) + 1;
  return growth_step(alpha_down(t, i), GrowthConfig{alpha, false}, rng);
}

auto chain_step(const Tree& t, const NTreeChainConfig& cfg, RngStream& rng) -> Tree {
  return cfg.kind == NTreeChainKind::uniform ? uniform_step(t, rng) : alpha_step(t, cfg.alpha, rng);
}

auto growth_config(const NTreeChainConfig& cfg) -> GrowthConfig {
  return cfg.kind == NTreeChainKind::uniform ? GrowthConfig{Rational{1, 2}, false} : GrowthConfig{cfg.alpha, false};
}

auto kernel_row(const Tree& t, const NTreeChainConfig& cfg) -> FinitePmf<Tree> {
  require_chain_tree(t, "kernel_row");
  auto n = t.leaf_count();
  auto pick = ratio(1, n);
  auto entries = std::vector<FinitePmf<Tree>::Entry>{};
  for (auto i = 1; i <= n; ++i) {
    if (cfg.kind == NTreeChainKind::uniform) {
      auto [rest, removed] = down_move(t, i);
      auto each = Rational{pick / static_cast<int>(rest.edges().size())};
      for (auto e : rest.edges()) { entries.emplace_back(insert_leaf(rest, e, removed), each); }
    } else {
      auto rest = alpha_down(t, i);
      for (const auto& [e, p] : growth_edge_probs(rest, GrowthConfig{cfg.alpha, false})) {
        entries.emplace_back(insert_leaf(rest, e, n), pick * p);
      }
    }
  }
  return FinitePmf<Tree>::from_entries(std::move(entries));
}

auto stationary_law(int n, const NTreeChainConfig& cfg) -> FinitePmf<Tree> {
  return growth_law(n, growth_config(cfg));
}

auto resampled_label_pmf(int n, const Rational& alpha) -> FinitePmf<int> {
  if (n < 2) { throw std::invalid_argument("resampled_label_pmf: n must be at least 2"); }
  require_unit_interval(alpha, true, "resampled_label_pmf");
  auto denominator = Rational{n * (n - 1 - alpha)};
  auto entries = std::vector<FinitePmf<int>::Entry>{};
  entries.emplace_back(2, 2 * (1 - alpha) / denominator);
  for (auto j = 3; j <= n; ++j) { entries.emplace_back(j, (2 * j - 2 - alpha) / denominator); }
  return FinitePmf<int>::from_entries(std::move(entries));
}

}  // namespace downup
