#include "downup/harness.h"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>

#include "downup/decorated_chain.h"
#include "downup/growth.h"
#include "downup/ntree_chain.h"

namespace downup {

auto parse_chain(std::string_view name) -> SimChain {
  if (name == "uniform") { return SimChain::uniform; }
  if (name == "alpha") { return SimChain::alpha; }
  if (name == "dec-uniform") { return SimChain::dec_uniform; }
  if (name == "dec-alpha") { return SimChain::dec_alpha; }
  throw std::invalid_argument("unknown chain: " + std::string{name});
}

auto chain_name(SimChain chain) -> std::string {
  switch (chain) {
    case SimChain::uniform: return "uniform";
    case SimChain::alpha: return "alpha";
    case SimChain::dec_uniform: return "dec-uniform";
    case SimChain::dec_alpha: return "dec-alpha";
  }
  return "";
}

auto is_decorated(SimChain chain) -> bool { return chain == SimChain::dec_uniform || chain == SimChain::dec_alpha; }

void validate(const SimSpec& spec) {
  if (spec.steps < 1) { throw std::invalid_argument("steps must be at least 1"); }
  if (spec.replicas < 1) { throw std::invalid_argument("replicas must be at least 1"); }
  if (spec.thin < 1) { throw std::invalid_argument("thin must be at least 1"); }
  if (spec.burn_in < 0) { throw std::invalid_argument("burn-in must be nonnegative"); }
  if (spec.n < 2 || spec.n > k_max_label) { throw std::invalid_argument("n must lie in 2..64"); }
  if (spec.chain == SimChain::alpha || spec.chain == SimChain::dec_alpha) {
    require_unit_interval(spec.alpha, false, "alpha");
  }
  if (is_decorated(spec.chain)) {
    if (!spec.k) { throw std::invalid_argument("decorated chains need k"); }
    if (spec.projection != ProjectionKind::none && spec.projection != ProjectionKind::mass) {
      throw std::invalid_argument("decorated chains support no projection other than mass");
    }
    if (spec.n < 3) { throw std::invalid_argument("decorated chains need n >= 3"); }
    if (spec.chain == SimChain::dec_alpha && *spec.k >= spec.n) {
      throw std::invalid_argument("the alpha decorated chain needs k < n");
    }
  } else if (spec.projection != ProjectionKind::none && !spec.k) {
    throw std::invalid_argument("a projection needs k");
  }
  if (spec.k && (*spec.k < 1 || *spec.k > spec.n)) { throw std::invalid_argument("k must lie in 1..n"); }
}

namespace {

auto tree_config(const SimSpec& spec) -> NTreeChainConfig {
  return spec.chain == SimChain::uniform ? NTreeChainConfig{NTreeChainKind::uniform, Rational{1, 2}}
                                         : NTreeChainConfig{NTreeChainKind::alpha, spec.alpha};
}

auto decorated_config(const SimSpec& spec) -> DecoratedChainConfig {
  return spec.chain == SimChain::dec_uniform ? DecoratedChainConfig{DecoratedChainKind::uniform, Rational{1, 2}}
                                             : DecoratedChainConfig{DecoratedChainKind::alpha, spec.alpha};
}

auto stationary_alpha(const SimSpec& spec) -> Rational {
  return spec.chain == SimChain::uniform || spec.chain == SimChain::dec_uniform ? Rational{1, 2} : spec.alpha;
}

template <typename Y>
struct TypedCounts {
  std::map<Y, std::int64_t> occupancy;
  std::map<std::pair<Y, Y>, std::int64_t> transitions;
};

template <typename State, typename Init, typename Step, typename Observe>
auto run_replica(const SimSpec& spec, std::uint64_t replica, Init init, Step step, Observe observe) -> SimSummary {
  using Y = std::decay_t<decltype(observe(std::declval<const State&>()))>;
  auto rng = RngStream{spec.seed, replica};
  State state = init(rng);
  for (auto t = std::int64_t{0}; t < spec.burn_in; ++t) { state = step(state, rng); }
  auto counts = TypedCounts<Y>{};
  auto previous = observe(state);
  for (auto t = std::int64_t{1}; t <= spec.steps; ++t) {
    state = step(state, rng);
    auto current = observe(state);
    if (spec.record_transitions) { ++counts.transitions[{previous, current}]; }
    if (t % spec.thin == 0) { ++counts.occupancy[current]; }
    previous = std::move(current);
  }
  auto out = SimSummary{};
  for (const auto& [y, c] : counts.occupancy) {
    out.occupancy[state_to_string(y)] += c;
    out.recorded += c;
  }
  for (const auto& [yy, c] : counts.transitions) {
    out.transitions[{state_to_string(yy.first), state_to_string(yy.second)}] += c;
  }
  return out;
}

template <typename State, typename Init, typename Step, typename Observe>
auto run_replicas(const SimSpec& spec, Init init, Step step, Observe observe) -> SimSummary {
  auto results = std::vector<SimSummary>(static_cast<std::size_t>(spec.replicas));
  auto errors = std::vector<std::exception_ptr>(results.size());
  auto next = std::atomic<std::size_t>{0};
  auto worker = [&] {
    for (auto r = next++; r < results.size(); r = next++) {
      try {
        results[r] = run_replica<State>(spec, r, init, step, observe);
      } catch (...) {
        errors[r] = std::current_exception();
      }
    }
  };
  auto threads = spec.threads > 0 ? spec.threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = std::min(threads, spec.replicas);
  auto pool = std::vector<std::thread>{};
  for (auto i = 1; i < threads; ++i) { pool.emplace_back(worker); }
  worker();
  for (auto& th : pool) { th.join(); }
  for (const auto& e : errors) {
    if (e) { std::rethrow_exception(e); }
  }
  auto merged = SimSummary{};
  for (const auto& r : results) {
    for (const auto& [key, c] : r.occupancy) { merged.occupancy[key] += c; }
    for (const auto& [key, c] : r.transitions) { merged.transitions[key] += c; }
    merged.recorded += r.recorded;
  }
  return merged;
}

// Dispatches on the observation map of a tree chain.
template <typename F>
auto with_tree_observer(const SimSpec& spec, F f) {
  auto k = spec.k.value_or(spec.n);
  switch (spec.projection) {
    case ProjectionKind::mass: return f([k](const Tree& t) { return project_mass(t, k); });
    case ProjectionKind::star: return f([k](const Tree& t) { return project_collapsed(t, k); });
    case ProjectionKind::beads: return f([k](const Tree& t) { return project_beads(t, k); });
    case ProjectionKind::none: break;
  }
  return f([](const Tree& t) { return t; });
}

}  // namespace

auto run_sim(const SimSpec& spec) -> SimSummary {
  validate(spec);
  if (is_decorated(spec.chain)) {
    auto cfg = decorated_config(spec);
    auto alpha = stationary_alpha(spec);
    auto init = [&](RngStream& rng) { return decorated_marginal_sample(spec.n, *spec.k, alpha, rng); };
    auto step = [&](const DecoratedKTree& d, RngStream& rng) { return decorated_step(d, cfg, rng); };
    return run_replicas<DecoratedKTree>(spec, init, step, [](const DecoratedKTree& d) { return d; });
  }
  auto cfg = tree_config(spec);
  auto gcfg = growth_config(cfg);
  auto init = [&](RngStream& rng) { return sample_tree(spec.n, gcfg, rng); };
  auto step = [&](const Tree& t, RngStream& rng) { return chain_step(t, cfg, rng); };
  return with_tree_observer(spec, [&](auto observe) { return run_replicas<Tree>(spec, init, step, observe); });
}

auto stationary_observed_sample(const SimSpec& spec, RngStream& rng) -> std::string {
  validate(spec);
  auto alpha = stationary_alpha(spec);
  if (is_decorated(spec.chain) || spec.projection == ProjectionKind::mass) {
    return state_to_string(decorated_marginal_sample(spec.n, *spec.k, alpha, rng));
  }
  auto t = sample_tree(spec.n, growth_config(tree_config(spec)), rng);
  return with_tree_observer(spec, [&](auto observe) { return state_to_string(observe(t)); });
}

auto stationary_observed_pmf(const SimSpec& spec) -> std::vector<PmfRow> {
  validate(spec);
  auto alpha = stationary_alpha(spec);
  if (is_decorated(spec.chain) || spec.projection == ProjectionKind::mass) {
    return pmf_rows(decorated_marginal_pmf(spec.n, *spec.k, alpha));
  }
  auto law = stationary_law(spec.n, tree_config(spec));
  return with_tree_observer(spec, [&](auto observe) { return pmf_rows(law.pushforward(observe)); });
}

auto occupancy_rows(const SimSummary& s) -> std::vector<CountRow> {
  auto rows = std::vector<CountRow>{};
  for (const auto& [key, c] : s.occupancy) { rows.push_back({key, c}); }
  return rows;
}

auto transition_row(const SimSummary& s, const std::string& from) -> std::vector<CountRow> {
  auto rows = std::vector<CountRow>{};
  for (auto it = s.transitions.lower_bound({from, ""}); it != s.transitions.end() && it->first.first == from; ++it) {
    rows.push_back({it->first.second, it->second});
  }
  return rows;
}

}  // namespace downup
