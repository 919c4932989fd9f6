#include "downup/growth.h"

#include <stdexcept>

namespace downup {

namespace {

void require_prefix_labels(const Tree& t, const char* context) {
  if (t.labels() != LabelSet::range(t.leaf_count())) {
    throw std::invalid_argument(std::string{context} + ": tree must be labelled 1..m");
  }
}

auto edge_weight(LabelSet e, const GrowthConfig& cfg) -> Rational {
  if (e.size() >= 2) { return cfg.alpha; }
  if (cfg.modified && e == LabelSet::of(1)) { return cfg.alpha; }
  return 1 - cfg.alpha;
}

}  // namespace

void validate(const GrowthConfig& cfg) {
  require_unit_interval(cfg.alpha, cfg.modified, cfg.modified ? "modified growth" : "growth");
}

auto growth_edge_probs(const Tree& t, const GrowthConfig& cfg) -> std::vector<Weighted<LabelSet>> {
  validate(cfg);
  require_prefix_labels(t, "growth_edge_probs");
  auto out = std::vector<Weighted<LabelSet>>{};
  if (t.leaf_count() == 1) {
    out.push_back({t.root(), Rational{1}});
    return out;
  }
  auto total = Rational{0};
  for (auto e : t.edges()) {
    auto w = edge_weight(e, cfg);
    total += w;
    out.push_back({e, w});
  }
  for (auto& w : out) { w.weight /= total; }
  return out;
}

auto growth_step(const Tree& t, const GrowthConfig& cfg, RngStream& rng) -> Tree {
  require_prefix_labels(t, "growth_step");
  auto m = t.leaf_count();
  if (m == 1) { return insert_leaf(t, t.root(), 2); }
  auto a = to_double(cfg.alpha);
  auto weights = std::vector<double>{};
  weights.reserve(t.edges().size());
  for (auto e : t.edges()) {
    auto external = e.size() == 1 && !(cfg.modified && e == LabelSet::of(1));
    weights.push_back(external ? 1.0 - a : a);
  }
  auto idx = rng.weighted_index(weights);
  return insert_leaf(t, t.edges()[idx], m + 1);
}

auto sample_tree(int n, const GrowthConfig& cfg, RngStream& rng) -> Tree {
  if (n < 1 || n > k_max_label) { throw std::out_of_range("sample_tree: n must lie in 1..64"); }
  validate(cfg);
  auto t = Tree::singleton(1);
  for (auto m = 1; m < n; ++m) { t = growth_step(t, cfg, rng); }
  return t;
}

auto growth_pmf(const Tree& t, const GrowthConfig& cfg) -> Rational {
  validate(cfg);
  require_prefix_labels(t, "growth_pmf");
  auto p = Rational{1};
  auto current = t;
  // Peel leaves n, n-1, ..., 3; the attachment edge of leaf j is its sibling in t ∩ [j].
  for (auto j = t.leaf_count(); j >= 3; --j) {
    auto attach = current.sibling(LabelSet::of(j));
    auto smaller = delete_leaf(current, j);
    auto total = Rational{0};
    for (auto e : smaller.edges()) { total += edge_weight(e, cfg); }
    p *= edge_weight(attach, cfg) / total;
    if (p == 0) { return p; }
    current = std::move(smaller);
  }
  return p;
}

auto growth_law(int n, const GrowthConfig& cfg) -> FinitePmf<Tree> {
  auto entries = std::vector<FinitePmf<Tree>::Entry>{};
  for (auto& t : enumerate_trees(n)) {
    auto p = growth_pmf(t, cfg);
    if (p != 0) { entries.emplace_back(std::move(t), std::move(p)); }
  }
  return FinitePmf<Tree>::from_entries(std::move(entries));
}

}  // namespace downup
