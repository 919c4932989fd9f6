#include "downup/verify.h"

#include <chrono>
#include <map>
#include <sstream>
#include <tuple>

#include "downup/growth.h"
#include "downup/io.h"
#include "json.hpp"

namespace downup {

namespace {

using Clock = std::chrono::steady_clock;

auto start_report(std::string check, int n, std::optional<int> k, std::optional<Rational> alpha) -> VerificationReport {
  auto r = VerificationReport{};
  r.check = std::move(check);
  r.n = n;
  r.k = k;
  r.alpha = std::move(alpha);
  return r;
}

// Runs body, records wall time, and turns exceptions from malformed rows into failures.
template <typename Body>
auto timed(VerificationReport report, Body body) -> VerificationReport {
  auto t0 = Clock::now();
  try {
    body(report);
  } catch (const SizeLimitExceeded&) {
    throw;
  } catch (const std::invalid_argument& e) {
    report.passed = false;
    report.invalid = true;
    report.detail = std::string{"error: "} + e.what();
  }
  report.wall_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return report;
}

auto fail(VerificationReport& r, std::string what, std::string row, std::string column, const Rational& lhs,
          const Rational& rhs) {
  r.passed = false;
  r.counterexample = Counterexample{std::move(what), std::move(row), std::move(column), to_string(lhs), to_string(rhs)};
}

auto chain_alpha(const NTreeChainConfig& cfg) -> Rational {
  return cfg.kind == NTreeChainKind::uniform ? Rational{1, 2} : cfg.alpha;
}

auto tree_config_for(const DecoratedChainConfig& cfg) -> NTreeChainConfig {
  return cfg.kind == DecoratedChainKind::uniform ? NTreeChainConfig{NTreeChainKind::uniform, Rational{1, 2}}
                                                  : NTreeChainConfig{NTreeChainKind::alpha, cfg.alpha};
}

auto decorated_alpha(const DecoratedChainConfig& cfg) -> Rational {
  return cfg.kind == DecoratedChainKind::uniform ? Rational{1, 2} : cfg.alpha;
}

// A projection of the tree chain: image space, the map g, Lambda (conditional law of the tree
// given its image under the stationary law) and the 0/1 kernel of g.
template <typename Y>
struct Lumping {
  StateSpace<Y> space;
  std::vector<std::size_t> g;
  StochasticKernel lambda;
  StochasticKernel g_kernel;
};

template <typename Project>
auto lump(const TreeChainModel& m, Project project) {
  using Y = std::decay_t<decltype(project(std::declval<const Tree&>()))>;
  auto images = std::vector<Y>{};
  images.reserve(m.space.size());
  for (const auto& t : m.space.states()) { images.push_back(project(t)); }
  auto result = Lumping<Y>{StateSpace<Y>{images}, {}, {}, {}};
  result.g.reserve(images.size());
  for (const auto& y : images) { result.g.push_back(result.space.index_of(y)); }
  auto fibre_mass = std::vector<Rational>(result.space.size());
  for (auto x = std::size_t{0}; x < images.size(); ++x) { fibre_mass[result.g[x]] += m.stationary[x]; }
  auto rows = std::vector<StochasticKernel::Row>(result.space.size());
  for (auto x = std::size_t{0}; x < images.size(); ++x) {
    auto y = result.g[x];
    rows[y].push_back({x, m.stationary[x] / fibre_mass[y]});
  }
  result.lambda = StochasticKernel{m.space.size(), std::move(rows)};
  result.g_kernel = deterministic_kernel(result.g, result.space.size());
  return result;
}

template <typename Y>
auto induced_kernel(const Lumping<Y>& l, const StochasticKernel& p) -> StochasticKernel {
  return multiply(multiply(l.lambda, p), l.g_kernel);
}

template <typename Y>
auto describe(const StateSpace<Y>& space, std::size_t i) -> std::string {
  return state_to_string(space[i]);
}

auto states_detail(std::size_t states, std::size_t nonzeros) -> std::string {
  return "states=" + std::to_string(states) + " nonzeros=" + std::to_string(nonzeros);
}

template <typename Y>
auto fill_kernel_difference(VerificationReport& r, const std::string& what, const StateSpace<Y>& rows,
                            const StateSpace<Y>& cols, const KernelDifference& d) {
  fail(r, what, describe(rows, d.row), describe(cols, d.col), d.lhs, d.rhs);
}

template <typename Y>
auto check_pmf_equal(VerificationReport& r, const std::string& what, const FinitePmf<Y>& lhs, const FinitePmf<Y>& rhs)
    -> bool {
  auto outcomes = std::vector<Y>{};
  for (const auto& [y, p] : lhs) { outcomes.push_back(y); }
  for (const auto& [y, p] : rhs) { outcomes.push_back(y); }
  for (const auto& y : outcomes) {
    auto a = lhs.prob(y);
    auto b = rhs.prob(y);
    if (a != b) {
      fail(r, what, state_to_string(y), "", a, b);
      return false;
    }
  }
  return true;
}

}  // namespace

auto report_to_json(const VerificationReport& r) -> std::string {
  auto doc = nlohmann::ordered_json::object();
  doc["check"] = r.check;
  auto params = nlohmann::ordered_json::object();
  params["n"] = r.n;
  if (r.k) { params["k"] = *r.k; }
  if (r.alpha) { params["alpha"] = to_string(*r.alpha); }
  doc["params"] = params;
  doc["verdict"] = r.passed ? "pass" : "fail";
  if (r.counterexample) {
    const auto& c = *r.counterexample;
    doc["counterexample"] = {{"what", c.what}, {"row", c.row}, {"column", c.column}, {"lhs", c.lhs}, {"rhs", c.rhs}};
  } else {
    doc["counterexample"] = nullptr;
  }
  doc["detail"] = r.detail;
  doc["wall_time_s"] = r.wall_seconds;
  return doc.dump(2);
}

auto build_tree_chain_model(int n, const NTreeChainConfig& cfg, double size_bound) -> TreeChainModel {
  if (n < 2 || n > k_max_enumeration_size) {
    throw std::invalid_argument("tree chain model: n must lie in 2.." + std::to_string(k_max_enumeration_size));
  }
  auto work = static_cast<double>(tree_count(n)) * n * (2 * n - 3);
  if (work > size_bound) {
    throw SizeLimitExceeded("tree chain model for n = " + std::to_string(n) + " exceeds the size bound");
  }
  auto law = stationary_law(n, cfg);
  auto states = std::vector<Tree>{};
  for (const auto& [t, p] : law) { states.push_back(t); }
  auto model = TreeChainModel{StateSpace<Tree>{std::move(states)}, {}, {}};
  model.stationary = pmf_to_vector(law, model.space);
  model.kernel = build_kernel(model.space, model.space, [&](const Tree& t) { return kernel_row(t, cfg); });
  return model;
}

auto build_decorated_chain_model(int n, int k, const DecoratedChainConfig& cfg) -> DecoratedChainModel {
  auto model = DecoratedChainModel{StateSpace<DecoratedKTree>{enumerate_decorated(n, k)}, {}, {}};
  model.stationary = pmf_to_vector(decorated_marginal_pmf(n, k, decorated_alpha(cfg)), model.space);
  model.kernel = build_kernel(model.space, model.space,
                              [&](const DecoratedKTree& d) { return decorated_kernel_row(d, cfg); });
  return model;
}

auto check_stationary(std::span<const Rational> pi, const StochasticKernel& k) -> VerificationReport {
  auto r = start_report("stationarity", 0, std::nullopt, std::nullopt);
  return timed(std::move(r), [&](VerificationReport& rep) {
    if (auto bad = k.first_non_stochastic_row()) {
      rep.passed = false;
      rep.detail = "row " + std::to_string(*bad) + " does not sum to one";
      return;
    }
    auto pushed = apply_left(pi, k);
    rep.passed = true;
    for (auto i = std::size_t{0}; i < pushed.size(); ++i) {
      if (pushed[i] != pi[i]) {
        fail(rep, "(pi K)(x) != pi(x)", std::to_string(i), "", pushed[i], pi[i]);
        return;
      }
    }
    rep.detail = states_detail(k.rows(), k.nonzeros());
  });
}

auto check_kemeny_snell(const StochasticKernel& k, std::span<const std::size_t> g, std::size_t ny) -> KemenySnellResult {
  auto result = KemenySnellResult{};
  result.report = timed(start_report("kemeny-snell", 0, std::nullopt, std::nullopt), [&](VerificationReport& rep) {
    auto qg = multiply(k, deterministic_kernel(g, ny));
    auto representative = std::vector<std::optional<std::size_t>>(ny);
    rep.passed = true;
    for (auto x = std::size_t{0}; x < g.size(); ++x) {
      auto& rep_x = representative[g[x]];
      if (!rep_x) {
        rep_x = x;
        continue;
      }
      const auto& a = qg.row(*rep_x);
      const auto& b = qg.row(x);
      auto same = a.size() == b.size();
      for (auto i = std::size_t{0}; same && i < a.size(); ++i) { same = a[i].col == b[i].col && a[i].prob == b[i].prob; }
      if (!same) {
        auto col = std::size_t{0};
        for (auto y = std::size_t{0}; y < ny; ++y) {
          if (qg.at(*rep_x, y) != qg.at(x, y)) {
            col = y;
            break;
          }
        }
        fail(rep, "rows of K g differ within a fibre", std::to_string(*rep_x) + " vs " + std::to_string(x),
             std::to_string(col), qg.at(*rep_x, col), qg.at(x, col));
        return;
      }
    }
    auto rows = std::vector<StochasticKernel::Row>{};
    for (auto y = std::size_t{0}; y < ny; ++y) {
      rows.push_back(representative[y] ? qg.row(*representative[y]) : StochasticKernel::Row{});
    }
    result.induced = StochasticKernel{ny, std::move(rows)};
  });
  return result;
}

auto check_intertwining(const StochasticKernel& lambda, const StochasticKernel& p, const StochasticKernel& q)
    -> VerificationReport {
  return timed(start_report("intertwining", 0, std::nullopt, std::nullopt), [&](VerificationReport& rep) {
    auto lhs = multiply(lambda, p);
    auto rhs = multiply(q, lambda);
    auto d = first_difference(lhs, rhs);
    rep.passed = !d;
    if (d) { fail(rep, "(Lambda P)(y, x) != (Q Lambda)(y, x)", std::to_string(d->row), std::to_string(d->col), d->lhs, d->rhs); }
  });
}

auto verify_tree_stationarity(int n, const NTreeChainConfig& cfg) -> VerificationReport {
  auto alpha = cfg.kind == NTreeChainKind::alpha ? std::optional{cfg.alpha} : std::nullopt;
  auto name = cfg.kind == NTreeChainKind::uniform ? "stationarity/uniform" : "stationarity/alpha";
  return timed(start_report(name, n, std::nullopt, alpha), [&](VerificationReport& rep) {
    auto m = build_tree_chain_model(n, cfg);
    auto inner = check_stationary(m.stationary, m.kernel);
    rep.passed = inner.passed;
    rep.detail = inner.detail;
    if (inner.counterexample) {
      auto c = *inner.counterexample;
      c.row = state_to_string(m.space[std::stoul(c.row)]);
      rep.counterexample = c;
    }
  });
}

auto verify_decorated_stationarity(int n, int k, const DecoratedChainConfig& cfg) -> VerificationReport {
  auto alpha = cfg.kind == DecoratedChainKind::alpha ? std::optional{cfg.alpha} : std::nullopt;
  auto name = cfg.kind == DecoratedChainKind::uniform ? "stationarity/dec-uniform" : "stationarity/dec-alpha";
  return timed(start_report(name, n, k, alpha), [&](VerificationReport& rep) {
    auto m = build_decorated_chain_model(n, k, cfg);
    auto inner = check_stationary(m.stationary, m.kernel);
    rep.passed = inner.passed;
    rep.detail = inner.detail;
    if (inner.counterexample) {
      auto c = *inner.counterexample;
      c.row = state_to_string(m.space[std::stoul(c.row)]);
      rep.counterexample = c;
    }
  });
}

auto verify_kernel_representation(int n, int k, const DecoratedChainConfig& cfg) -> VerificationReport {
  auto alpha = decorated_alpha(cfg);
  return timed(start_report("consistency", n, k, alpha), [&](VerificationReport& rep) {
    auto trees = build_tree_chain_model(n, tree_config_for(cfg));
    auto l = lump(trees, [&](const Tree& t) { return project_mass(t, k); });
    auto direct_space = StateSpace<DecoratedKTree>{enumerate_decorated(n, k)};
    if (direct_space.states() != l.space.states()) {
      rep.passed = false;
      rep.detail = "projection image differs from the enumerated decorated space";
      return;
    }
    auto induced = induced_kernel(l, trees.kernel);
    auto direct = build_kernel(direct_space, direct_space, [&](const DecoratedKTree& d) { return decorated_kernel_row(d, cfg); });
    if (auto d = first_difference(direct, induced)) {
      fill_kernel_difference(rep, "direct kernel != Lambda P rho", l.space, l.space, *d);
      return;
    }
    auto pushed = apply_left(trees.stationary, l.g_kernel);
    auto after = apply_left(pushed, direct);
    for (auto i = std::size_t{0}; i < pushed.size(); ++i) {
      if (after[i] != pushed[i]) {
        fail(rep, "projected stationary law not stationary", describe(l.space, i), "", after[i], pushed[i]);
        return;
      }
    }
    rep.passed = true;
    rep.detail = states_detail(direct.rows(), direct.nonzeros());
  });
}

auto verify_decorated_marginal(int n, int k, const Rational& alpha) -> VerificationReport {
  return timed(start_report("marginal", n, k, alpha), [&](VerificationReport& rep) {
    auto law = growth_law(n, GrowthConfig{alpha, false});
    auto pushed = law.pushforward([&](const Tree& t) { return project_mass(t, k); });
    rep.passed = check_pmf_equal(rep, "pushforward != shape x DM law", pushed, decorated_marginal_pmf(n, k, alpha));
    rep.detail = "states=" + std::to_string(pushed.size());
  });
}

auto verify_kemeny_snell(int n, int k, const NTreeChainConfig& cfg, bool direct_pair) -> VerificationReport {
  auto name = direct_pair ? "kemeny-snell/direct" : "kemeny-snell/collapsed";
  return timed(start_report(name, n, k, chain_alpha(cfg)), [&](VerificationReport& rep) {
    auto trees = build_tree_chain_model(n, cfg);
    if (direct_pair) {
      auto l = lump(trees, [&](const Tree& t) { return project_mass(t, k); });
      auto ks = check_kemeny_snell(trees.kernel, l.g, l.space.size());
      rep.passed = ks.report.passed;
      if (ks.report.counterexample) {
        auto c = *ks.report.counterexample;
        c.column = describe(l.space, std::stoul(c.column));
        rep.counterexample = c;
      }
      rep.detail = "trees=" + std::to_string(trees.space.size()) + " decorated=" + std::to_string(l.space.size());
      return;
    }
    auto star = lump(trees, [&](const Tree& t) { return project_collapsed(t, k); });
    auto q_star = induced_kernel(star, trees.kernel);
    auto images = std::vector<DecoratedKTree>{};
    for (const auto& c : star.space.states()) { images.push_back(forget_labels(c)); }
    auto mass_space = StateSpace<DecoratedKTree>{images};
    auto g = std::vector<std::size_t>{};
    for (const auto& d : images) { g.push_back(mass_space.index_of(d)); }
    auto ks = check_kemeny_snell(q_star, g, mass_space.size());
    rep.passed = ks.report.passed;
    if (ks.report.counterexample) {
      auto c = *ks.report.counterexample;
      c.column = describe(mass_space, std::stoul(c.column));
      rep.counterexample = c;
      return;
    }
    rep.detail = "collapsed=" + std::to_string(star.space.size()) + " decorated=" + std::to_string(mass_space.size());
    auto dcfg = cfg.kind == NTreeChainKind::uniform ? DecoratedChainConfig{DecoratedChainKind::uniform, Rational{1, 2}}
                                                     : DecoratedChainConfig{DecoratedChainKind::alpha, cfg.alpha};
    auto direct = build_kernel(mass_space, mass_space, [&](const DecoratedKTree& d) { return decorated_kernel_row(d, dcfg); });
    if (auto d = first_difference(*ks.induced, direct)) {
      fill_kernel_difference(rep, "lumped kernel != decorated kernel", mass_space, mass_space, *d);
    }
  });
}

auto verify_intertwining(int n, int k, const NTreeChainConfig& cfg) -> VerificationReport {
  return timed(start_report("intertwining", n, k, chain_alpha(cfg)), [&](VerificationReport& rep) {
    auto trees = build_tree_chain_model(n, cfg);
    auto star = lump(trees, [&](const Tree& t) { return project_collapsed(t, k); });
    auto q = induced_kernel(star, trees.kernel);
    auto inner = check_intertwining(star.lambda, trees.kernel, q);
    if (!inner.passed) {
      rep.passed = false;
      auto c = *inner.counterexample;
      c.row = describe(star.space, std::stoul(c.row));
      c.column = state_to_string(trees.space[std::stoul(c.column)]);
      rep.counterexample = c;
      return;
    }
    auto two_step = multiply(multiply(star.lambda, multiply(trees.kernel, trees.kernel)), star.g_kernel);
    if (auto d = first_difference(two_step, multiply(q, q))) {
      fill_kernel_difference(rep, "Lambda P^2 rho != Q^2", star.space, star.space, *d);
      return;
    }
    rep.passed = true;
    rep.detail = "collapsed=" + std::to_string(star.space.size()) + " trees=" + std::to_string(trees.space.size());
  });
}

auto verify_spatial_markov(int n, int k, const Rational& alpha) -> VerificationReport {
  return timed(start_report("spatial-markov", n, k, alpha), [&](VerificationReport& rep) {
    require_unit_interval(alpha, true, "spatial-markov");
    auto law = growth_law(n, GrowthConfig{alpha, false});
    auto fibre = std::map<CollapsedKTree, Rational>{};
    for (const auto& [t, p] : law) { fibre[project_collapsed(t, k)] += p; }
    for (const auto& [t, p] : law) {
      auto c = project_collapsed(t, k);
      auto structures = internal_structures(t, k);
      auto product = Rational{1};
      for (auto i = std::size_t{0}; i < structures.size(); ++i) {
        auto internal = c.shape().edges()[i].size() >= 2;
        product *= growth_pmf(structures[i], GrowthConfig{alpha, internal});
      }
      auto conditional = Rational{p / fibre[c]};
      if (conditional != product) {
        fail(rep, "q(t | collapsed) != product of structure laws", state_to_string(t), state_to_string(c), conditional,
             product);
        return;
      }
      if (reassemble(c, structures) != t) {
        rep.passed = false;
        rep.detail = "reassembly does not reproduce " + state_to_string(t);
        return;
      }
    }
    rep.passed = true;
    rep.detail = "trees=" + std::to_string(law.size()) + " collapsed=" + std::to_string(fibre.size());
  });
}

auto verify_decrement(int n, const Rational& alpha) -> VerificationReport {
  return timed(start_report("decrement", n, std::nullopt, alpha), [&](VerificationReport& rep) {
    if (n < 1 || n + 1 > k_max_enumeration_size) { throw std::invalid_argument("decrement: n must lie in 1..8"); }
    auto modified = GrowthConfig{alpha, true};
    auto sizes = std::map<int, Rational>{};
    auto joint = std::map<std::tuple<int, Tree, Tree>, Rational>{};
    for (const auto& [t, p] : growth_law(n + 1, modified)) {
      auto first = spinal_subtrees(t, 1).front();
      auto m = first.root_edge.size();
      sizes[m] += p;
      auto inner = rank_relabel(first.subtree);
      auto rest = rank_relabel(restrict_to(t, t.labels() - first.root_edge));
      joint[{m, inner, rest}] += p;
    }
    auto observed = std::vector<FinitePmf<int>::Entry>(sizes.begin(), sizes.end());
    if (!check_pmf_equal(rep, "P(M1 = m) != decrement law", FinitePmf<int>::from_entries(observed), decrement_pmf(n, alpha))) {
      return;
    }
    for (const auto& [m, pm] : sizes) {
      auto expected = std::map<std::pair<Tree, Tree>, Rational>{};
      for (const auto& [u, pu] : growth_law(m, GrowthConfig{alpha, false})) {
        for (const auto& [v, pv] : growth_law(n - m + 1, modified)) { expected[{u, v}] = pu * pv; }
      }
      auto seen = std::size_t{0};
      for (const auto& [key, p] : joint) {
        if (std::get<0>(key) != m) { continue; }
        ++seen;
        auto it = expected.find({std::get<1>(key), std::get<2>(key)});
        auto want = it == expected.end() ? Rational{0} : it->second;
        if (p / pm != want) {
          fail(rep, "conditional law of (int U, int V) given M1 = " + std::to_string(m) + " is not the product",
               state_to_string(std::get<1>(key)), state_to_string(std::get<2>(key)), p / pm, want);
          return;
        }
      }
      if (seen != expected.size()) {
        rep.passed = false;
        rep.detail = "support of (int U, int V) given M1 = " + std::to_string(m) + " is incomplete";
        return;
      }
    }
    rep.passed = true;
    rep.detail = "tree size " + std::to_string(n + 1) + ", M1 support " + std::to_string(sizes.size());
  });
}

namespace {

template <typename Y>
void markov_slices_for(VerificationReport& rep, const TreeChainModel& trees, const Lumping<Y>& l, MarkovStart start) {
  auto r = induced_kernel(l, trees.kernel);
  auto pg = multiply(trees.kernel, l.g_kernel);
  auto mu = std::vector<Rational>(trees.space.size());
  if (start == MarkovStart::stationary) {
    mu = trees.stationary;
  } else {
    auto fibre_size = std::vector<std::size_t>(l.space.size(), 0);
    for (auto y : l.g) { ++fibre_size[y]; }
    // The first tree of the largest fibre: smaller fibres can consist of trees that differ only
    // by relabelling, where a point mass behaves like the conditional law.
    auto x0 = std::size_t{0};
    for (auto x = std::size_t{1}; x < l.g.size(); ++x) {
      if (fibre_size[l.g[x]] > fibre_size[l.g[x0]]) { x0 = x; }
    }
    mu[x0] = 1;
    rep.detail = "start=" + state_to_string(trees.space[x0]) + " ";
  }
  auto joint = std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Rational>{};
  for (auto x0 = std::size_t{0}; x0 < mu.size(); ++x0) {
    if (mu[x0] == 0) { continue; }
    for (const auto& [x1, p1] : trees.kernel.row(x0)) {
      auto w = Rational{mu[x0] * p1};
      for (const auto& [y2, p2] : pg.row(x1)) { joint[{l.g[x0], l.g[x1], y2}] += w * p2; }
    }
  }
  auto mu_y = apply_left(mu, l.g_kernel);
  auto expected = std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Rational>{};
  for (auto y0 = std::size_t{0}; y0 < mu_y.size(); ++y0) {
    if (mu_y[y0] == 0) { continue; }
    for (const auto& [y1, r1] : r.row(y0)) {
      for (const auto& [y2, r2] : r.row(y1)) { expected[{y0, y1, y2}] = mu_y[y0] * r1 * r2; }
    }
  }
  auto keys = std::vector<std::tuple<std::size_t, std::size_t, std::size_t>>{};
  for (const auto& [key, p] : joint) { keys.push_back(key); }
  for (const auto& [key, p] : expected) { keys.push_back(key); }
  for (const auto& key : keys) {
    auto a = joint.count(key) ? joint[key] : Rational{0};
    auto b = expected.count(key) ? expected[key] : Rational{0};
    if (a != b) {
      auto [y0, y1, y2] = key;
      fail(rep, "P(Y0, Y1, Y2) != mu(y0) R(y0, y1) R(y1, y2)",
           describe(l.space, y0) + " -> " + describe(l.space, y1), describe(l.space, y2), a, b);
      return;
    }
  }
  rep.passed = true;
  rep.detail += "projected states=" + std::to_string(l.space.size()) + " triples=" + std::to_string(joint.size());
}

}  // namespace

auto verify_markov_slices(int n, int k, ProjectionKind projection, MarkovStart start, const NTreeChainConfig& cfg)
    -> VerificationReport {
  auto name = "markov-slices/" + projection_name(projection) +
              (start == MarkovStart::stationary ? "/stationary" : "/point-mass");
  return timed(start_report(name, n, k, chain_alpha(cfg)), [&](VerificationReport& rep) {
    auto trees = build_tree_chain_model(n, cfg);
    switch (projection) {
      case ProjectionKind::mass:
        markov_slices_for(rep, trees, lump(trees, [&](const Tree& t) { return project_mass(t, k); }), start);
        break;
      case ProjectionKind::star:
        markov_slices_for(rep, trees, lump(trees, [&](const Tree& t) { return project_collapsed(t, k); }), start);
        break;
      case ProjectionKind::beads:
        markov_slices_for(rep, trees, lump(trees, [&](const Tree& t) { return project_beads(t, k); }), start);
        break;
      case ProjectionKind::none:
        markov_slices_for(rep, trees, lump(trees, [](const Tree& t) { return t; }), start);
        break;
    }
  });
}

auto verify_resample_law(int n, const Rational& alpha) -> VerificationReport {
  return timed(start_report("resample-law", n, std::nullopt, alpha), [&](VerificationReport& rep) {
    auto tally = std::map<int, Rational>{};
    for (const auto& [t, p] : growth_law(n, GrowthConfig{alpha, false})) {
      for (auto i = 1; i <= n; ++i) { tally[swap_target(t, i)] += p / n; }
    }
    auto observed = FinitePmf<int>::from_entries({tally.begin(), tally.end()});
    rep.passed = check_pmf_equal(rep, "first-step tally != closed form", observed, resampled_label_pmf(n, alpha));
  });
}

auto verify_first_drop_law(int n, int k, const DecoratedChainConfig& cfg) -> VerificationReport {
  auto alpha = decorated_alpha(cfg);
  auto name = cfg.kind == DecoratedChainKind::uniform ? "first-drop-law/dec-uniform" : "first-drop-law/dec-alpha";
  return timed(start_report(name, n, k, alpha), [&](VerificationReport& rep) {
    if (k < 2) { throw std::invalid_argument("first-drop-law: need k >= 2"); }
    auto space = StateSpace<DecoratedKTree>{enumerate_decorated(n, k)};
    auto pi = pmf_to_vector(decorated_marginal_pmf(n, k, alpha), space);
    auto size = space.size();
    // Solve v (I - Q) = pi for the expected visits v before the first case-(c) step.
    auto system = std::vector<std::vector<Rational>>(size, std::vector<Rational>(size));
    auto drops = std::vector<std::map<int, Rational>>(size);
    for (auto y = std::size_t{0}; y < size; ++y) {
      system[y][y] += 1;
      for (const auto& b : decorated_transitions(space[y], cfg)) {
        if (b.move_case == MoveCase::c) {
          drops[y][b.dropped] += b.prob;
        } else {
          system[space.index_of(b.next)][y] -= b.prob;
        }
      }
    }
    auto visits = solve_linear_system(std::move(system), pi);
    auto law = std::map<int, Rational>{};
    for (auto y = std::size_t{0}; y < size; ++y) {
      for (const auto& [j, p] : drops[y]) { law[j] += visits[y] * p; }
    }
    auto observed = FinitePmf<int>::from_entries({law.begin(), law.end()});
    rep.passed = check_pmf_equal(rep, "first dropped label law != closed form", observed, resampled_label_pmf(k, alpha));
    rep.detail = "decorated states=" + std::to_string(size);
  });
}

auto verify_down_invariance(int n, const Rational& alpha) -> VerificationReport {
  return timed(start_report("down-invariance", n, std::nullopt, alpha), [&](VerificationReport& rep) {
    if (n < 3) { throw std::invalid_argument("down-invariance: need n >= 3"); }
    auto cfg = GrowthConfig{alpha, false};
    auto target = growth_law(n - 1, cfg);
    auto events = std::map<std::pair<int, int>, std::vector<FinitePmf<Tree>::Entry>>{};
    for (const auto& [t, p] : growth_law(n, cfg)) {
      for (auto i = 1; i <= n; ++i) { events[{i, swap_target(t, i)}].emplace_back(alpha_down(t, i), p); }
    }
    for (auto& [key, entries] : events) {
      auto conditional = FinitePmf<Tree>::normalized(std::move(entries));
      if (!check_pmf_equal(rep, "law after down-move given (i, j) = (" + std::to_string(key.first) + ", " +
                                    std::to_string(key.second) + ") != q_{n-1}",
                           conditional, target)) {
        return;
      }
    }
    rep.passed = true;
    rep.detail = "events=" + std::to_string(events.size());
  });
}

}  // namespace downup
