#include "downup/decorated_chain.h"

#include <algorithm>
#include <array>
#include <stdexcept>

#include "downup/distributions.h"
#include "downup/tree.h"

namespace downup {

namespace {

using EdgeMasses = std::vector<std::pair<LabelSet, int>>;

auto edge_masses(const DecoratedKTree& d) -> EdgeMasses {
  auto out = EdgeMasses{};
  out.reserve(d.masses().size());
  for (auto i = std::size_t{0}; i < d.masses().size(); ++i) { out.emplace_back(d.shape().edges()[i], d.masses()[i]); }
  return out;
}

auto build(const Tree& shape, const EdgeMasses& masses) -> DecoratedKTree {
  auto aligned = std::vector<int>(shape.edges().size(), -1);
  for (const auto& [e, m] : masses) { aligned[shape.edge_index(e)] = m; }
  return DecoratedKTree{shape, std::move(aligned)};
}

auto with_mass_change(const DecoratedKTree& d, LabelSet edge, int delta) -> DecoratedKTree {
  auto masses = std::vector<int>(d.masses().begin(), d.masses().end());
  masses[d.shape().edge_index(edge)] += delta;
  return DecoratedKTree{d.shape(), std::move(masses)};
}

// Inserts label on edge; the edge keeps `lower`, the new leaf gets `leaf` and the new parent
// edge gets `upper`. Every other edge keeps its mass.
auto split_insert(const Tree& shape, const EdgeMasses& masses, LabelSet edge, Label label, int lower, int leaf, int upper)
    -> DecoratedKTree {
  auto grown = insert_leaf(shape, edge, label);
  auto add = LabelSet::of(label);
  auto out = EdgeMasses{};
  for (const auto& [e, m] : masses) {
    if (e == edge) { continue; }
    out.emplace_back(e.contains(edge) ? e | add : e, m);
  }
  out.emplace_back(edge, lower);
  out.emplace_back(add, leaf);
  out.emplace_back(edge | add, upper);
  return build(grown, out);
}

void require_removable(const DecoratedKTree& d, Label i, const char* context) {
  if (d.k() < 2 || i < 1 || i > d.k()) { throw std::invalid_argument(std::string{context} + ": invalid leaf"); }
  auto leaf = LabelSet::of(i);
  if (d.x(i) != 1 || d.mass(d.shape().parent(leaf)) != 0) {
    throw std::invalid_argument(std::string{context} + ": leaf must have mass one and an empty parent edge");
  }
}

// Masses of d without leaf i and its parent edge, edges mapped through f.
template <typename F>
auto masses_without(const DecoratedKTree& d, Label i, F f) -> EdgeMasses {
  auto leaf = LabelSet::of(i);
  auto parent = d.shape().parent(leaf);
  auto out = EdgeMasses{};
  for (const auto& [e, m] : edge_masses(d)) {
    if (e == leaf || e == parent) { continue; }
    out.emplace_back(f(e), m);
  }
  return out;
}

auto half() -> Rational { return Rational{1, 2}; }

auto split_weights(const Rational& a, const Rational& b, const Rational& c) -> std::array<Rational, 3> { return {a, b, c}; }

auto to_doubles(const std::array<Rational, 3>& w) -> std::array<double, 3> {
  return {to_double(w[0]), to_double(w[1]), to_double(w[2])};
}

struct ResampleSite {
  LabelSet edge;
  Rational weight;
};

// Edges of the shape with leaf i removed (labels kept), weighted for reinsertion of i.
auto resample_sites(const DecoratedKTree& reduced_source, Label i, Tree& reduced, EdgeMasses& masses) -> std::vector<ResampleSite> {
  reduced = delete_leaf(reduced_source.shape(), i);
  masses = masses_without(reduced_source, i, [&](LabelSet e) { return e - LabelSet::of(i); });
  auto n = reduced_source.total_mass();
  auto denominator = ratio(2 * n - 3, 2);
  auto sites = std::vector<ResampleSite>{};
  for (const auto& [e, m] : masses) {
    Rational w = (e.size() == 1 ? Rational{m - half()} : Rational{m + half()}) / denominator;
    sites.push_back({e, w});
  }
  return sites;
}

auto insert_outcome(const Tree& shape, const EdgeMasses& masses, LabelSet edge, Label label, const Composition& j)
    -> DecoratedKTree {
  if (edge.size() == 1) { return split_insert(shape, masses, edge, label, j[0] + 1, j[1] + 1, j[2]); }
  return split_insert(shape, masses, edge, label, j[1], j[2] + 1, j[0]);
}

auto insert_denominator(const DecoratedKTree& d) -> int {
  auto denominator = d.total_mass() - d.k();
  if (denominator < 1) { throw std::invalid_argument("insert_label: total mass must exceed the number of leaves"); }
  return denominator;
}

auto chain_alpha(const DecoratedChainConfig& cfg) -> Rational {
  return cfg.kind == DecoratedChainKind::uniform ? half() : cfg.alpha;
}

void require_chain_state(const DecoratedKTree& d, const DecoratedChainConfig& cfg) {
  if (d.total_mass() < 3) { throw std::invalid_argument("decorated chain: total mass must be at least 3"); }
  if (cfg.kind == DecoratedChainKind::alpha) {
    require_unit_interval(cfg.alpha, true, "alpha decorated chain");
    if (d.k() >= d.total_mass()) { throw std::invalid_argument("alpha decorated chain: need k < n"); }
  }
}

}  // namespace

auto swap_leaf_labels(const DecoratedKTree& d, Label a, Label b) -> DecoratedKTree {
  if (a == b) { return d; }
  auto masses = EdgeMasses{};
  for (const auto& [e, m] : edge_masses(d)) { masses.emplace_back(swap_labels(e, a, b), m); }
  return build(swap_labels(d.shape(), a, b), masses);
}

auto drop_label(const DecoratedKTree& d, Label i) -> DecoratedKTree {
  require_removable(d, i, "drop_label");
  auto masses = masses_without(d, i, [&](LabelSet e) { return close_label_gap(e, i); });
  return build(close_label_gap(d.shape(), i), masses);
}

auto insert_label_law(const DecoratedKTree& d, const Rational& alpha) -> std::vector<Weighted<DecoratedKTree>> {
  require_unit_interval(alpha, true, "insert_label");
  auto denominator = insert_denominator(d);
  auto label = d.k() + 1;
  auto masses = edge_masses(d);
  auto ext = split_weights(1 - alpha, 1 - alpha, alpha);
  auto in = split_weights(alpha, alpha, 1 - alpha);
  auto out = std::vector<Weighted<DecoratedKTree>>{};
  for (const auto& [e, m] : masses) {
    auto external = e.size() == 1;
    auto units = external ? m - 1 : m;
    if (units <= 0) { continue; }
    auto w = ratio(units, denominator);
    for (const auto& [j, pj] : dm_pmf(units - 1, external ? ext : in)) {
      out.push_back({insert_outcome(d.shape(), masses, e, label, j), w * pj});
    }
  }
  return out;
}

auto insert_label(const DecoratedKTree& d, const Rational& alpha, RngStream& rng) -> DecoratedKTree {
  require_unit_interval(alpha, true, "insert_label");
  insert_denominator(d);
  auto masses = edge_masses(d);
  auto weights = std::vector<double>{};
  for (const auto& [e, m] : masses) { weights.push_back(std::max(e.size() == 1 ? m - 1 : m, 0)); }
  const auto& [e, m] = masses[rng.weighted_index(weights)];
  auto external = e.size() == 1;
  auto units = external ? m - 1 : m;
  auto w = to_doubles(external ? split_weights(1 - alpha, 1 - alpha, alpha) : split_weights(alpha, alpha, 1 - alpha));
  auto j = dm_sample(units - 1, w, rng);
  return insert_outcome(d.shape(), masses, e, d.k() + 1, j);
}

auto up_move_law(const DecoratedKTree& d, const Rational& alpha) -> std::vector<Weighted<DecoratedKTree>> {
  auto denominator = Rational{d.total_mass() - alpha};
  auto out = std::vector<Weighted<DecoratedKTree>>{};
  for (const auto& [e, m] : edge_masses(d)) {
    Rational w = (e.size() == 1 ? Rational{m - alpha} : Rational{m + alpha}) / denominator;
    if (w > 0) { out.push_back({with_mass_change(d, e, 1), w}); }
  }
  return out;
}

auto up_move(const DecoratedKTree& d, const Rational& alpha, RngStream& rng) -> DecoratedKTree {
  auto a = to_double(alpha);
  auto weights = std::vector<double>{};
  for (auto e : d.shape().edges()) {
    auto m = d.mass(e);
    weights.push_back(e.size() == 1 ? m - a : m + a);
  }
  return with_mass_change(d, d.shape().edges()[rng.weighted_index(weights)], 1);
}

auto resample_label_law(const DecoratedKTree& d, Label i) -> std::vector<Weighted<DecoratedKTree>> {
  require_removable(d, i, "resample_label");
  auto reduced = Tree::singleton(1);
  auto masses = EdgeMasses{};
  auto sites = resample_sites(d, i, reduced, masses);
  auto even = split_weights(half(), half(), half());
  auto out = std::vector<Weighted<DecoratedKTree>>{};
  for (auto s = std::size_t{0}; s < sites.size(); ++s) {
    auto mass = masses[s].second;
    auto units = sites[s].edge.size() == 1 ? mass - 1 : mass;
    for (const auto& [j, pj] : dm_pmf(units, even)) {
      out.push_back({insert_outcome(reduced, masses, sites[s].edge, i, j), sites[s].weight * pj});
    }
  }
  return out;
}

auto resample_label(const DecoratedKTree& d, Label i, RngStream& rng) -> DecoratedKTree {
  require_removable(d, i, "resample_label");
  auto reduced = Tree::singleton(1);
  auto masses = EdgeMasses{};
  auto sites = resample_sites(d, i, reduced, masses);
  auto weights = std::vector<double>{};
  for (const auto& s : sites) { weights.push_back(to_double(s.weight)); }
  auto s = rng.weighted_index(weights);
  auto mass = masses[s].second;
  auto units = sites[s].edge.size() == 1 ? mass - 1 : mass;
  auto j = dm_sample(units, std::array{0.5, 0.5, 0.5}, rng);
  return insert_outcome(reduced, masses, sites[s].edge, i, j);
}

auto decorated_transitions(const DecoratedKTree& d, const DecoratedChainConfig& cfg) -> std::vector<DecoratedBranch> {
  require_chain_state(d, cfg);
  auto alpha = chain_alpha(cfg);
  auto n = d.total_mass();
  auto out = std::vector<DecoratedBranch>{};
  auto add_up_moves = [&](const DecoratedKTree& reduced, const Rational& p, MoveCase c) {
    for (auto& [next, w] : up_move_law(reduced, alpha)) { out.push_back({std::move(next), p * w, c, 0}); }
  };
  for (auto e : d.shape().edges()) {
    auto m = d.mass(e);
    if (m == 0) { continue; }
    auto select = ratio(m, n);
    if (e.size() >= 2 || m >= 2) {
      add_up_moves(with_mass_change(d, e, -1), select, MoveCase::a);
      continue;
    }
    auto i = e.min_label();
    auto parent = d.shape().parent(e);
    auto y = d.mass(parent);
    if (y > 0) {
      for (const auto& [size, p] : decrement_pmf(y, alpha)) {
        auto split = with_mass_change(with_mass_change(d, e, size - 1), parent, -size);
        add_up_moves(split, select * p, MoveCase::b);
      }
      continue;
    }
    auto target = swap_target(d.shape(), i);
    auto swapped = swap_leaf_labels(d, i, target);
    if (cfg.kind == DecoratedChainKind::uniform) {
      for (auto& [next, w] : resample_label_law(swapped, target)) {
        out.push_back({std::move(next), select * w, MoveCase::c, target});
      }
    } else {
      for (const auto& [inserted, w] : insert_label_law(drop_label(swapped, target), alpha)) {
        for (auto& [next, u] : up_move_law(inserted, alpha)) {
          out.push_back({std::move(next), select * w * u, MoveCase::c, target});
        }
      }
    }
  }
  return out;
}

auto decorated_kernel_row(const DecoratedKTree& d, const DecoratedChainConfig& cfg) -> FinitePmf<DecoratedKTree> {
  auto entries = std::vector<FinitePmf<DecoratedKTree>::Entry>{};
  for (auto& b : decorated_transitions(d, cfg)) { entries.emplace_back(std::move(b.next), std::move(b.prob)); }
  return FinitePmf<DecoratedKTree>::from_entries(std::move(entries));
}

auto decorated_step(const DecoratedKTree& d, const DecoratedChainConfig& cfg, RngStream& rng) -> DecoratedKTree {
  require_chain_state(d, cfg);
  auto alpha = chain_alpha(cfg);
  auto weights = std::vector<double>(d.masses().begin(), d.masses().end());
  auto e = d.shape().edges()[rng.weighted_index(weights)];
  auto m = d.mass(e);
  if (e.size() >= 2 || m >= 2) { return up_move(with_mass_change(d, e, -1), alpha, rng); }
  auto i = e.min_label();
  auto parent = d.shape().parent(e);
  auto y = d.mass(parent);
  if (y > 0) {
    auto size = decrement_sample(y, to_double(alpha), rng);
    return up_move(with_mass_change(with_mass_change(d, e, size - 1), parent, -size), alpha, rng);
  }
  auto target = swap_target(d.shape(), i);
  auto swapped = swap_leaf_labels(d, i, target);
  if (cfg.kind == DecoratedChainKind::uniform) { return resample_label(swapped, target, rng); }
  return up_move(insert_label(drop_label(swapped, target), alpha, rng), alpha, rng);
}

auto uniform_decorated_step(const DecoratedKTree& d, RngStream& rng) -> DecoratedKTree {
  return decorated_step(d, DecoratedChainConfig{DecoratedChainKind::uniform, half()}, rng);
}

auto alpha_decorated_step(const DecoratedKTree& d, const Rational& alpha, RngStream& rng) -> DecoratedKTree {
  return decorated_step(d, DecoratedChainConfig{DecoratedChainKind::alpha, alpha}, rng);
}

}  // namespace downup
