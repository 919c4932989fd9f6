#include "downup/projection.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "downup/growth.h"

namespace downup {

namespace {

void require_shape(const Tree& shape, const char* context) {
  if (shape.labels() != LabelSet::range(shape.leaf_count())) {
    throw std::invalid_argument(std::string{context} + ": shape must be labelled 1..k");
  }
}

void require_projection_args(const Tree& t, int k, const char* context) {
  auto n = t.leaf_count();
  if (t.labels() != LabelSet::range(n)) {
    throw std::invalid_argument(std::string{context} + ": tree must be labelled 1..n");
  }
  if (k < 1 || k > n) { throw std::invalid_argument(std::string{context} + ": need 1 <= k <= n"); }
}

// For every leaf, the edge of the shape it projects onto: B ∩ [k] for the smallest edge B of t
// that contains the leaf and meets [k].
auto leaf_images(const Tree& t, LabelSet kset) -> std::vector<LabelSet> {
  auto n = t.leaf_count();
  auto images = std::vector<LabelSet>(static_cast<std::size_t>(n));
  for (auto l = 1; l <= n; ++l) {
    for (auto e : t.edges()) {
      if (e.contains(l) && e.intersects(kset)) {
        images[static_cast<std::size_t>(l - 1)] = e & kset;
        break;
      }
    }
  }
  return images;
}

// Smallest and largest edges of t whose trace on [k] equals b.
auto trace_extremes(const Tree& t, LabelSet kset, LabelSet b) -> std::pair<LabelSet, LabelSet> {
  auto lowest = LabelSet{};
  auto highest = LabelSet{};
  for (auto e : t.edges()) {
    if ((e & kset) != b) { continue; }
    if (lowest.empty()) { lowest = e; }
    highest = e;
  }
  return {lowest, highest};
}

auto structure_law(int mass, bool internal, const Rational& alpha) -> FinitePmf<Tree> {
  return internal ? growth_law(mass + 1, GrowthConfig{alpha, true}) : growth_law(mass, GrowthConfig{alpha, false});
}

auto structure_labels(LabelSet block, bool internal) -> std::vector<Label> {
  auto labels = std::vector<Label>{};
  if (internal) { labels.push_back(1); }
  for (auto j : block.labels()) { labels.push_back(j); }
  return labels;
}

template <typename State, typename Project>
auto conditional_law(int n, const Rational& alpha, const State& target, Project project) -> FinitePmf<Tree> {
  auto entries = std::vector<FinitePmf<Tree>::Entry>{};
  for (const auto& [t, p] : growth_law(n, GrowthConfig{alpha, false})) {
    if (project(t) == target) { entries.emplace_back(t, p); }
  }
  if (entries.empty()) { throw std::invalid_argument("conditional law: projection has no preimage"); }
  return FinitePmf<Tree>::normalized(std::move(entries));
}

}  // namespace

DecoratedKTree::DecoratedKTree(Tree shape, std::vector<int> masses) : shape_{std::move(shape)}, masses_{std::move(masses)} {
  require_shape(shape_, "DecoratedKTree");
  if (masses_.size() != shape_.edges().size()) { throw std::invalid_argument("DecoratedKTree: one mass per edge"); }
  for (auto i = std::size_t{0}; i < masses_.size(); ++i) {
    auto floor = i < static_cast<std::size_t>(k()) ? 1 : 0;
    if (masses_[i] < floor) {
      throw std::invalid_argument("DecoratedKTree: mass on " + shape_.edges()[i].to_string() + " below " +
                                  std::to_string(floor));
    }
  }
}

auto DecoratedKTree::total_mass() const -> int { return std::accumulate(masses_.begin(), masses_.end(), 0); }

CollapsedKTree::CollapsedKTree(Tree shape, std::vector<LabelSet> blocks) : shape_{std::move(shape)}, blocks_{std::move(blocks)} {
  require_shape(shape_, "CollapsedKTree");
  if (blocks_.size() != shape_.edges().size()) { throw std::invalid_argument("CollapsedKTree: one block per edge"); }
  auto all = LabelSet{};
  auto kset = shape_.labels();
  for (auto i = std::size_t{0}; i < blocks_.size(); ++i) {
    auto b = blocks_[i];
    if (all.intersects(b)) { throw std::invalid_argument("CollapsedKTree: blocks overlap"); }
    all |= b;
    auto own = i < static_cast<std::size_t>(k()) ? shape_.edges()[i] : LabelSet{};
    if ((b & kset) != own) {
      throw std::invalid_argument("CollapsedKTree: block on " + shape_.edges()[i].to_string() + " has wrong shape labels");
    }
  }
  if (all != LabelSet::range(all.size())) { throw std::invalid_argument("CollapsedKTree: blocks must cover 1..n"); }
}

auto CollapsedKTree::n() const -> int {
  auto all = LabelSet{};
  for (auto b : blocks_) { all |= b; }
  return all.size();
}

BeadedKTree::BeadedKTree(Tree shape, std::vector<int> x, std::vector<Composition> beads)
    : shape_{std::move(shape)}, x_{std::move(x)}, beads_{std::move(beads)} {
  require_shape(shape_, "BeadedKTree");
  if (static_cast<int>(x_.size()) != k() || beads_.size() != shape_.internal_edges().size()) {
    throw std::invalid_argument("BeadedKTree: decoration does not match the shape");
  }
  for (auto v : x_) {
    if (v < 1) { throw std::invalid_argument("BeadedKTree: leaf masses must be positive"); }
  }
  for (const auto& string : beads_) {
    for (auto v : string) {
      if (v < 1) { throw std::invalid_argument("BeadedKTree: bead masses must be positive"); }
    }
  }
}

auto BeadedKTree::beads(LabelSet edge) const -> const Composition& {
  auto idx = shape_.edge_index(edge);
  if (idx < static_cast<std::size_t>(k())) { throw std::invalid_argument("BeadedKTree: external edges carry no beads"); }
  return beads_[idx - static_cast<std::size_t>(k())];
}

auto parse_projection(std::string_view name) -> ProjectionKind {
  if (name == "none") { return ProjectionKind::none; }
  if (name == "mass") { return ProjectionKind::mass; }
  if (name == "star") { return ProjectionKind::star; }
  if (name == "beads") { return ProjectionKind::beads; }
  throw std::invalid_argument("unknown projection '" + std::string{name} + "' (none|mass|star|beads)");
}

auto projection_name(ProjectionKind kind) -> std::string {
  switch (kind) {
    case ProjectionKind::none: return "none";
    case ProjectionKind::mass: return "mass";
    case ProjectionKind::star: return "star";
    case ProjectionKind::beads: return "beads";
  }
  return "none";
}

auto forget_labels(const CollapsedKTree& c) -> DecoratedKTree {
  auto masses = std::vector<int>{};
  masses.reserve(c.blocks().size());
  for (auto b : c.blocks()) { masses.push_back(b.size()); }
  return DecoratedKTree{c.shape(), std::move(masses)};
}

auto forget_beads(const BeadedKTree& b) -> DecoratedKTree {
  auto masses = std::vector<int>(b.x().begin(), b.x().end());
  for (const auto& string : b.beads()) { masses.push_back(std::accumulate(string.begin(), string.end(), 0)); }
  return DecoratedKTree{b.shape(), std::move(masses)};
}

auto project_collapsed(const Tree& t, int k) -> CollapsedKTree {
  require_projection_args(t, k, "project_collapsed");
  auto kset = LabelSet::range(k);
  auto shape = restrict_to(t, kset);
  auto blocks = std::vector<LabelSet>(shape.edges().size());
  auto images = leaf_images(t, kset);
  for (auto l = 1; l <= t.leaf_count(); ++l) {
    blocks[shape.edge_index(images[static_cast<std::size_t>(l - 1)])] |= LabelSet::of(l);
  }
  return CollapsedKTree{std::move(shape), std::move(blocks)};
}

auto project_mass(const Tree& t, int k) -> DecoratedKTree { return forget_labels(project_collapsed(t, k)); }

auto project_beads(const Tree& t, int k) -> BeadedKTree {
  require_projection_args(t, k, "project_beads");
  auto kset = LabelSet::range(k);
  auto shape = restrict_to(t, kset);
  // The edges of the reduced tree r: those meeting [k] in at least two labels, and for each
  // j <= k the largest edge meeting [k] in {j} alone.
  auto r = std::vector<LabelSet>{};
  auto x = std::vector<int>(static_cast<std::size_t>(k));
  auto leaf_tops = std::vector<LabelSet>(static_cast<std::size_t>(k));
  for (auto e : t.edges()) {
    auto trace = e & kset;
    if (trace.size() >= 2) { r.push_back(e); }
    if (trace.size() == 1) { leaf_tops[static_cast<std::size_t>(trace.min_label() - 1)] = e; }
  }
  r.insert(r.end(), leaf_tops.begin(), leaf_tops.end());
  std::sort(r.begin(), r.end(), canonical_less);
  // Push each leaf's unit mass to the smallest edge of r containing it.
  auto pushed = std::vector<int>(r.size(), 0);
  for (auto l = 1; l <= t.leaf_count(); ++l) {
    auto it = std::find_if(r.begin(), r.end(), [&](LabelSet e) { return e.contains(l); });
    ++pushed[static_cast<std::size_t>(it - r.begin())];
  }
  auto mass_of = [&](LabelSet e) {
    return pushed[static_cast<std::size_t>(std::lower_bound(r.begin(), r.end(), e, canonical_less) - r.begin())];
  };
  for (auto j = 0; j < k; ++j) { x[static_cast<std::size_t>(j)] = mass_of(leaf_tops[static_cast<std::size_t>(j)]); }
  auto beads = std::vector<Composition>{};
  for (auto b : shape.internal_edges()) {
    auto chain = std::vector<LabelSet>{};
    for (auto e : r) {
      if ((e & kset) == b) { chain.push_back(e); }
    }
    // chain is ordered from the lowest (degree-3) vertex upwards; beads run from the root end.
    auto string = Composition{};
    for (auto i = chain.size(); i-- > 1;) { string.push_back(mass_of(chain[i])); }
    beads.push_back(std::move(string));
  }
  return BeadedKTree{std::move(shape), std::move(x), std::move(beads)};
}

auto internal_structures(const Tree& t, int k) -> std::vector<Tree> {
  auto c = project_collapsed(t, k);
  auto kset = LabelSet::range(k);
  auto result = std::vector<Tree>{};
  result.reserve(c.blocks().size());
  for (auto i = std::size_t{0}; i < c.blocks().size(); ++i) {
    auto b = c.shape().edges()[i];
    auto block = c.blocks()[i];
    if (b.size() == 1) {
      result.push_back(rank_relabel(restrict_to(t, block)));
      continue;
    }
    auto [lowest, highest] = trace_extremes(t, kset, b);
    auto placeholder = LabelSet::of(1);
    auto edges = std::vector<LabelSet>{};
    for (auto e : t.edges()) {
      if (!highest.contains(e)) { continue; }
      if (e.contains(lowest)) {
        edges.push_back((e - lowest) | placeholder);
      } else if (!lowest.contains(e)) {
        edges.push_back(e);
      }
    }
    result.push_back(rank_relabel(Tree::from_valid_edges(std::move(edges))));
  }
  return result;
}

auto reassemble(const CollapsedKTree& c, std::span<const Tree> structures) -> Tree {
  const auto& shape = c.shape();
  if (structures.size() != shape.edges().size()) { throw std::invalid_argument("reassemble: one structure per edge"); }
  auto tops = std::vector<LabelSet>(shape.edges().size());
  auto edges = std::vector<LabelSet>{};
  // Canonical order visits children before parents.
  for (auto i = std::size_t{0}; i < shape.edges().size(); ++i) {
    auto b = shape.edges()[i];
    auto block = c.blocks()[i];
    auto internal = b.size() >= 2;
    auto expected = block.size() + (internal ? 1 : 0);
    const auto& tau = structures[i];
    if (tau.leaf_count() != expected || tau.labels() != LabelSet::range(expected)) {
      throw std::invalid_argument("reassemble: structure on " + b.to_string() + " must be a tree on 1.." +
                                  std::to_string(expected));
    }
    auto v = unrank_relabel(tau, structure_labels(block, internal));
    if (!internal) {
      edges.insert(edges.end(), v.edges().begin(), v.edges().end());
      tops[i] = block;
      continue;
    }
    auto [c1, c2] = shape.children(b);
    auto lowest = tops[shape.edge_index(c1)] | tops[shape.edge_index(c2)];
    auto placeholder = LabelSet::of(1);
    for (auto e : v.edges()) {
      edges.push_back(e.contains(placeholder) ? (e - placeholder) | lowest : e);
    }
    tops[i] = lowest | block;
  }
  return Tree::from_edges(std::move(edges));
}

auto lambda_mass(const DecoratedKTree& d, const Rational& alpha) -> FinitePmf<Tree> {
  return conditional_law(d.total_mass(), alpha, d, [&](const Tree& t) { return project_mass(t, d.k()); });
}

auto lambda_star(const CollapsedKTree& c, const Rational& alpha) -> FinitePmf<Tree> {
  return conditional_law(c.n(), alpha, c, [&](const Tree& t) { return project_collapsed(t, c.k()); });
}

auto lambda_beads(const BeadedKTree& b, const Rational& alpha) -> FinitePmf<Tree> {
  auto n = forget_beads(b).total_mass();
  return conditional_law(n, alpha, b, [&](const Tree& t) { return project_beads(t, b.k()); });
}

auto lambda_star_product(const CollapsedKTree& c, const Rational& alpha) -> FinitePmf<Tree> {
  require_unit_interval(alpha, true, "lambda_star_product");
  auto laws = std::vector<FinitePmf<Tree>>{};
  for (auto i = std::size_t{0}; i < c.blocks().size(); ++i) {
    laws.push_back(structure_law(c.blocks()[i].size(), c.shape().edges()[i].size() >= 2, alpha));
  }
  auto entries = std::vector<FinitePmf<Tree>::Entry>{};
  auto pick = std::vector<std::size_t>(laws.size(), 0);
  auto chosen = std::vector<Tree>{};
  while (true) {
    chosen.clear();
    auto p = Rational{1};
    for (auto i = std::size_t{0}; i < laws.size(); ++i) {
      const auto& [tau, q] = laws[i].entries()[pick[i]];
      chosen.push_back(tau);
      p *= q;
    }
    entries.emplace_back(reassemble(c, chosen), p);
    auto i = std::size_t{0};
    while (i < laws.size() && ++pick[i] == laws[i].size()) { pick[i++] = 0; }
    if (i == laws.size()) { break; }
  }
  return FinitePmf<Tree>::from_entries(std::move(entries));
}

auto lambda_star_sample(const CollapsedKTree& c, const Rational& alpha, RngStream& rng) -> Tree {
  require_unit_interval(alpha, true, "lambda_star_sample");
  auto structures = std::vector<Tree>{};
  for (auto i = std::size_t{0}; i < c.blocks().size(); ++i) {
    auto internal = c.shape().edges()[i].size() >= 2;
    auto mass = c.blocks()[i].size();
    structures.push_back(internal ? sample_tree(mass + 1, GrowthConfig{alpha, true}, rng)
                                  : sample_tree(mass, GrowthConfig{alpha, false}, rng));
  }
  return reassemble(c, structures);
}

auto decorated_marginal_pmf(int n, int k, const Rational& alpha) -> FinitePmf<DecoratedKTree> {
  if (k < 1 || k > n) { throw std::invalid_argument("decorated_marginal_pmf: need 1 <= k <= n"); }
  auto weights = dm_alpha_weights(k, alpha);
  auto masses = dm_pmf(n - k, weights);
  auto entries = std::vector<FinitePmf<DecoratedKTree>::Entry>{};
  for (const auto& [shape, ps] : growth_law(k, GrowthConfig{alpha, false})) {
    for (const auto& [j, pj] : masses) {
      auto m = j;
      for (auto i = 0; i < k; ++i) { ++m[static_cast<std::size_t>(i)]; }
      entries.emplace_back(DecoratedKTree{shape, std::move(m)}, ps * pj);
    }
  }
  return FinitePmf<DecoratedKTree>::from_entries(std::move(entries));
}

auto decorated_marginal_sample(int n, int k, const Rational& alpha, RngStream& rng) -> DecoratedKTree {
  if (k < 1 || k > n) { throw std::invalid_argument("decorated_marginal_sample: need 1 <= k <= n"); }
  auto shape = sample_tree(k, GrowthConfig{alpha, false}, rng);
  auto weights = std::vector<double>{};
  for (const auto& w : dm_alpha_weights(k, alpha)) { weights.push_back(to_double(w)); }
  auto m = dm_sample(n - k, weights, rng);
  for (auto i = 0; i < k; ++i) { ++m[static_cast<std::size_t>(i)]; }
  return DecoratedKTree{std::move(shape), std::move(m)};
}

auto enumerate_decorated(int n, int k) -> std::vector<DecoratedKTree> {
  if (k < 1 || k > n) { throw std::invalid_argument("enumerate_decorated: need 1 <= k <= n"); }
  auto result = std::vector<DecoratedKTree>{};
  for (const auto& shape : enumerate_trees(k)) {
    for (auto m : weak_compositions(n - k, 2 * k - 1)) {
      for (auto i = 0; i < k; ++i) { ++m[static_cast<std::size_t>(i)]; }
      result.emplace_back(shape, std::move(m));
    }
  }
  std::sort(result.begin(), result.end());
  return result;
}

auto enumerate_collapsed(int n, int k) -> std::vector<CollapsedKTree> {
  if (k < 1 || k > n) { throw std::invalid_argument("enumerate_collapsed: need 1 <= k <= n"); }
  auto result = std::vector<CollapsedKTree>{};
  auto edges = static_cast<std::size_t>(2 * k - 1);
  for (const auto& shape : enumerate_trees(k)) {
    auto choice = std::vector<std::size_t>(static_cast<std::size_t>(n - k), 0);
    while (true) {
      auto blocks = std::vector<LabelSet>(edges);
      for (auto j = 0; j < k; ++j) { blocks[static_cast<std::size_t>(j)] = LabelSet::of(j + 1); }
      for (auto l = std::size_t{0}; l < choice.size(); ++l) {
        blocks[choice[l]] |= LabelSet::of(k + 1 + static_cast<int>(l));
      }
      result.emplace_back(shape, std::move(blocks));
      auto l = std::size_t{0};
      while (l < choice.size() && ++choice[l] == edges) { choice[l++] = 0; }
      if (l == choice.size()) { break; }
    }
  }
  std::sort(result.begin(), result.end());
  return result;
}

namespace {

// Ordered compositions of m into positive parts; the empty composition for m = 0.
auto positive_compositions(int m) -> std::vector<Composition> {
  if (m == 0) { return {Composition{}}; }
  auto result = std::vector<Composition>{};
  for (auto first = 1; first <= m; ++first) {
    for (auto rest : positive_compositions(m - first)) {
      rest.insert(rest.begin(), first);
      result.push_back(std::move(rest));
    }
  }
  return result;
}

}  // namespace

auto enumerate_beaded(int n, int k) -> std::vector<BeadedKTree> {
  if (k < 1 || k > n) { throw std::invalid_argument("enumerate_beaded: need 1 <= k <= n"); }
  auto result = std::vector<BeadedKTree>{};
  for (const auto& shape : enumerate_trees(k)) {
    for (auto m : weak_compositions(n - k, 2 * k - 1)) {
      auto x = std::vector<int>(m.begin(), m.begin() + k);
      for (auto& v : x) { ++v; }
      auto options = std::vector<std::vector<Composition>>{};
      for (auto i = static_cast<std::size_t>(k); i < m.size(); ++i) { options.push_back(positive_compositions(m[i])); }
      auto pick = std::vector<std::size_t>(options.size(), 0);
      while (true) {
        auto beads = std::vector<Composition>{};
        for (auto i = std::size_t{0}; i < options.size(); ++i) { beads.push_back(options[i][pick[i]]); }
        result.emplace_back(shape, x, std::move(beads));
        auto i = std::size_t{0};
        while (i < options.size() && ++pick[i] == options[i].size()) { pick[i++] = 0; }
        if (i == options.size()) { break; }
      }
    }
  }
  std::sort(result.begin(), result.end());
  return result;
}

}  // namespace downup
