#include "downup/tree.h"

#include <algorithm>
#include <array>
#include <optional>

namespace downup {

namespace {

void sort_canonical(std::vector<LabelSet>& edges) {
  std::sort(edges.begin(), edges.end(), canonical_less);
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

struct EdgeProblem {
  std::string message;
  std::size_t edge;
};

// Checks a canonically sorted, duplicate-free edge list against the tree axioms.
auto find_problem(const std::vector<LabelSet>& edges) -> std::optional<EdgeProblem> {
  if (edges.empty()) { return EdgeProblem{"empty edge set", 0}; }
  if (edges.front().empty()) { return EdgeProblem{"empty edge", 0}; }
  auto all = LabelSet{};
  for (auto e : edges) { all |= e; }
  if (edges.back() != all) { return EdgeProblem{"missing root edge " + all.to_string(), edges.size()}; }
  auto n = all.size();
  for (auto j : all.labels()) {
    if (!std::binary_search(edges.begin(), edges.end(), LabelSet::of(j), canonical_less)) {
      return EdgeProblem{"missing singleton edge {" + std::to_string(j) + "}", edges.size()};
    }
  }
  if (static_cast<int>(edges.size()) != 2 * n - 1) {
    return EdgeProblem{"expected " + std::to_string(2 * n - 1) + " edges, found " + std::to_string(edges.size()),
                       edges.size()};
  }
  for (auto a = std::size_t{0}; a < edges.size(); ++a) {
    for (auto b = a + 1; b < edges.size(); ++b) {
      auto meet = edges[a] & edges[b];
      if (!meet.empty() && meet != edges[a] && meet != edges[b]) {
        return EdgeProblem{"edges " + edges[a].to_string() + " and " + edges[b].to_string() + " overlap", b};
      }
    }
  }
  for (auto a = std::size_t{0}; a + 1 < edges.size(); ++a) {
    auto parent = std::find_if(edges.begin() + static_cast<std::ptrdiff_t>(a) + 1, edges.end(),
                               [&](LabelSet c) { return c.contains(edges[a]) && c != edges[a]; });
    auto sib = *parent - edges[a];
    if (!std::binary_search(edges.begin(), edges.end(), sib, canonical_less)) {
      return EdgeProblem{"edge " + edges[a].to_string() + " has no sibling", a};
    }
  }
  return std::nullopt;
}

auto map_labels(const Tree& t, const std::array<std::uint64_t, 64>& image) -> std::vector<LabelSet> {
  auto edges = std::vector<LabelSet>{};
  edges.reserve(t.edges().size());
  for (auto e : t.edges()) {
    auto out = std::uint64_t{0};
    for (auto bits = e.bits(); bits != 0; bits &= bits - 1) { out |= image[std::countr_zero(bits)]; }
    edges.push_back(LabelSet{out});
  }
  return edges;
}

}  // namespace

auto Tree::from_edges(std::vector<LabelSet> edges) -> Tree {
  auto n = edges.size();
  sort_canonical(edges);
  if (edges.size() != n) { throw std::invalid_argument("tree: duplicate edges"); }
  if (auto problem = find_problem(edges)) { throw std::invalid_argument("tree: " + problem->message); }
  return Tree{std::move(edges)};
}

auto Tree::from_valid_edges(std::vector<LabelSet> edges) -> Tree {
  sort_canonical(edges);
  return Tree{std::move(edges)};
}

auto Tree::singleton(Label j) -> Tree { return Tree{{LabelSet::of(j)}}; }

auto Tree::has_edge(LabelSet b) const -> bool {
  return std::binary_search(edges_.begin(), edges_.end(), b, canonical_less);
}

auto Tree::edge_index(LabelSet b) const -> std::size_t {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), b, canonical_less);
  if (it == edges_.end() || *it != b) { throw std::out_of_range("tree: " + b.to_string() + " is not an edge"); }
  return static_cast<std::size_t>(it - edges_.begin());
}

auto Tree::parent(LabelSet b) const -> LabelSet {
  auto it = std::upper_bound(edges_.begin(), edges_.end(), b, canonical_less);
  for (; it != edges_.end(); ++it) {
    if (it->contains(b) && *it != b) { return *it; }
  }
  throw std::out_of_range("tree: " + b.to_string() + " has no parent");
}

auto Tree::children(LabelSet b) const -> std::pair<LabelSet, LabelSet> {
  auto idx = edge_index(b);
  for (auto i = idx; i-- > 0;) {
    if (b.contains(edges_[i])) {
      auto c1 = edges_[i];
      auto c2 = b - c1;
      return c1.min_label() < c2.min_label() ? std::pair{c1, c2} : std::pair{c2, c1};
    }
  }
  throw std::out_of_range("tree: " + b.to_string() + " is a leaf edge");
}

auto Tree::operator<=>(const Tree& other) const -> std::strong_ordering {
  return std::lexicographical_compare_three_way(edges_.begin(), edges_.end(), other.edges_.begin(),
                                                other.edges_.end(), canonical_compare);
}

auto TreeHash::operator()(const Tree& t) const noexcept -> std::size_t {
  auto h = std::uint64_t{0x9e3779b97f4a7c15ULL};
  for (auto e : t.edges()) {
    h ^= e.bits() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

DecodeError::DecodeError(const std::string& what, std::size_t position)
    : std::invalid_argument{"decode: " + what + " at byte " + std::to_string(position)}, position_{position} {}

auto delete_leaf(const Tree& t, Label j) -> Tree {
  if (!t.labels().contains(j)) { throw std::invalid_argument("delete_leaf: label " + std::to_string(j) + " absent"); }
  if (t.leaf_count() < 2) { throw std::invalid_argument("delete_leaf: tree has a single leaf"); }
  auto drop = LabelSet::of(j);
  auto edges = std::vector<LabelSet>{};
  edges.reserve(t.edges().size());
  for (auto e : t.edges()) {
    auto r = e - drop;
    if (!r.empty()) { edges.push_back(r); }
  }
  return Tree::from_valid_edges(std::move(edges));
}

auto insert_leaf(const Tree& s, LabelSet edge, Label j) -> Tree {
  if (j < 1 || j > k_max_label) { throw std::out_of_range("insert_leaf: label out of range"); }
  if (s.labels().contains(j)) { throw std::invalid_argument("insert_leaf: label " + std::to_string(j) + " present"); }
  if (!s.has_edge(edge)) { throw std::invalid_argument("insert_leaf: " + edge.to_string() + " is not an edge"); }
  auto add = LabelSet::of(j);
  auto edges = std::vector<LabelSet>{};
  edges.reserve(s.edges().size() + 2);
  for (auto b : s.edges()) {
    edges.push_back(b.contains(edge) ? b | add : b);
  }
  edges.push_back(edge);
  edges.push_back(add);
  return Tree::from_valid_edges(std::move(edges));
}

auto restrict_to(const Tree& t, LabelSet c) -> Tree {
  if (!t.labels().intersects(c)) { throw std::invalid_argument("restrict_to: empty restriction"); }
  auto edges = std::vector<LabelSet>{};
  edges.reserve(t.edges().size());
  for (auto e : t.edges()) {
    auto r = e & c;
    if (!r.empty()) { edges.push_back(r); }
  }
  return Tree::from_valid_edges(std::move(edges));
}

auto swap_labels(const Tree& t, Label a, Label b) -> Tree {
  if (a == b) { return t; }
  auto edges = std::vector<LabelSet>{};
  edges.reserve(t.edges().size());
  for (auto e : t.edges()) { edges.push_back(swap_labels(e, a, b)); }
  return Tree::from_valid_edges(std::move(edges));
}

auto close_label_gap(const Tree& t, Label j) -> Tree {
  const auto& base = t.labels().contains(j) ? delete_leaf(t, j) : t;
  auto edges = std::vector<LabelSet>{};
  edges.reserve(base.edges().size());
  for (auto e : base.edges()) { edges.push_back(close_label_gap(e, j)); }
  return Tree::from_valid_edges(std::move(edges));
}

auto rank_relabel(const Tree& t) -> Tree {
  auto image = std::array<std::uint64_t, 64>{};
  auto rank = 0;
  for (auto j : t.labels().labels()) { image[static_cast<std::size_t>(j - 1)] = std::uint64_t{1} << rank++; }
  return Tree::from_valid_edges(map_labels(t, image));
}

auto unrank_relabel(const Tree& t, std::span<const Label> labels) -> Tree {
  if (static_cast<int>(labels.size()) != t.leaf_count()) {
    throw std::invalid_argument("unrank_relabel: label count mismatch");
  }
  auto image = std::array<std::uint64_t, 64>{};
  auto target = LabelSet{};
  auto rank = std::size_t{0};
  for (auto j : t.labels().labels()) {
    auto to = labels[rank++];
    if (to < 1 || to > k_max_label || target.contains(to)) {
      throw std::invalid_argument("unrank_relabel: invalid target label " + std::to_string(to));
    }
    target |= LabelSet::of(to);
    image[static_cast<std::size_t>(j - 1)] = LabelSet::of(to).bits();
  }
  return Tree::from_valid_edges(map_labels(t, image));
}

auto spinal_subtrees(const Tree& t, Label j) -> std::vector<SpinalSubtree> {
  auto current = LabelSet::of(j);
  if (!t.has_edge(current)) { throw std::invalid_argument("spinal_subtrees: label " + std::to_string(j) + " absent"); }
  auto result = std::vector<SpinalSubtree>{};
  while (current != t.root()) {
    auto parent = t.parent(current);
    auto sib = parent - current;
    result.push_back({sib, restrict_to(t, sib)});
    current = parent;
  }
  return result;
}

auto swap_target(const Tree& t, Label i) -> Label {
  auto leaf = LabelSet::of(i);
  if (!t.has_edge(leaf)) { throw std::invalid_argument("swap_target: label " + std::to_string(i) + " absent"); }
  if (t.leaf_count() < 2) { throw std::invalid_argument("swap_target: tree has a single leaf"); }
  auto parent = t.parent(leaf);
  auto a = (parent - leaf).min_label();
  auto b = parent == t.root() ? 0 : t.sibling(parent).min_label();
  return std::max({i, a, b});
}

auto tree_count(int n) -> std::uint64_t {
  if (n < 1) { throw std::invalid_argument("tree_count: n must be positive"); }
  auto count = std::uint64_t{1};
  for (auto i = 1; i < n; ++i) {
    if (__builtin_mul_overflow(count, static_cast<std::uint64_t>(2 * i - 1), &count)) {
      throw std::overflow_error("tree_count: overflow for n = " + std::to_string(n));
    }
  }
  return count;
}

namespace {

void grow_all(const Tree& t, int next, int n, const std::function<void(const Tree&)>& visit) {
  if (next > n) {
    visit(t);
    return;
  }
  for (auto e : t.edges()) { grow_all(insert_leaf(t, e, next), next + 1, n, visit); }
}

}  // namespace

void for_each_tree(int n, const std::function<void(const Tree&)>& visit) {
  if (n < 1 || n > k_max_enumeration_size) {
    throw std::out_of_range("enumerate: n must lie in 1.." + std::to_string(k_max_enumeration_size));
  }
  grow_all(Tree::singleton(1), 2, n, visit);
}

auto enumerate_trees(int n) -> std::vector<Tree> {
  auto result = std::vector<Tree>{};
  if (n >= 1 && n <= k_max_enumeration_size) { result.reserve(tree_count(n)); }
  for_each_tree(n, [&](const Tree& t) { result.push_back(t); });
  std::sort(result.begin(), result.end());
  return result;
}

auto enumerate_trees(LabelSet labels) -> std::vector<Tree> {
  auto order = labels.labels();
  auto result = enumerate_trees(static_cast<int>(order.size()));
  for (auto& t : result) { t = unrank_relabel(t, order); }
  std::sort(result.begin(), result.end());
  return result;
}

auto encode(const Tree& t) -> std::string {
  auto out = std::string{"["};
  auto first_edge = true;
  for (auto e : t.edges()) {
    if (!first_edge) { out += ','; }
    first_edge = false;
    out += '[';
    auto first_label = true;
    for (auto j : e.labels()) {
      if (!first_label) { out += ','; }
      first_label = false;
      out += std::to_string(j);
    }
    out += ']';
  }
  return out + "]";
}

namespace {

class EdgeListScanner {
 public:
  explicit EdgeListScanner(std::string_view text) : text_{text} {}

  auto parse(std::vector<std::size_t>& offsets) -> std::vector<LabelSet> {
    auto edges = std::vector<LabelSet>{};
    skip_ws();
    expect('[');
    skip_ws();
    if (peek() == ']') { throw DecodeError("empty edge list", pos_); }
    while (true) {
      skip_ws();
      offsets.push_back(pos_);
      auto e = parse_edge();
      if (!edges.empty() && !canonical_less(edges.back(), e)) {
        throw DecodeError("edges out of canonical order or duplicated", offsets.back());
      }
      edges.push_back(e);
      skip_ws();
      if (peek() == ',') {
        ++pos_;
        continue;
      }
      expect(']');
      break;
    }
    skip_ws();
    if (pos_ != text_.size()) { throw DecodeError("trailing characters", pos_); }
    return edges;
  }

 private:
  auto peek() const -> char { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' || text_[pos_] == '\r')) {
      ++pos_;
    }
  }

  void expect(char c) {
    if (peek() != c) { throw DecodeError(std::string{"expected '"} + c + "'", pos_); }
    ++pos_;
  }

  auto parse_label() -> Label {
    auto start = pos_;
    if (peek() < '1' || peek() > '9') { throw DecodeError("expected a positive label", pos_); }
    auto value = 0;
    while (peek() >= '0' && peek() <= '9') {
      value = value * 10 + (peek() - '0');
      ++pos_;
      if (value > k_max_label) { throw DecodeError("label exceeds " + std::to_string(k_max_label), start); }
    }
    return value;
  }

  auto parse_edge() -> LabelSet {
    expect('[');
    auto edge = LabelSet{};
    auto last = 0;
    while (true) {
      skip_ws();
      auto at = pos_;
      auto j = parse_label();
      if (j <= last) { throw DecodeError("labels within an edge must increase strictly", at); }
      last = j;
      edge |= LabelSet::of(j);
      skip_ws();
      if (peek() == ',') {
        ++pos_;
        continue;
      }
      expect(']');
      return edge;
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

auto decode(std::string_view text) -> Tree {
  auto offsets = std::vector<std::size_t>{};
  auto edges = EdgeListScanner{text}.parse(offsets);
  if (auto problem = find_problem(edges)) {
    auto at = problem->edge < offsets.size() ? offsets[problem->edge] : text.size();
    throw DecodeError(problem->message, at);
  }
  return Tree::from_valid_edges(std::move(edges));
}

namespace {

void newick_into(const Tree& t, LabelSet b, std::string& out) {
  if (b.size() == 1) {
    out += std::to_string(b.min_label());
    return;
  }
  auto [c1, c2] = t.children(b);
  out += '(';
  newick_into(t, c1, out);
  out += ',';
  newick_into(t, c2, out);
  out += ')';
}

}  // namespace

auto to_newick(const Tree& t) -> std::string {
  auto out = std::string{};
  newick_into(t, t.root(), out);
  return out + ";";
}

}  // namespace downup
