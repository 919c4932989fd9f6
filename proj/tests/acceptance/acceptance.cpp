// Acceptance suite: one PASS/FAIL line per criterion; exit status is nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "downup/distributions.h"
#include "downup/gof.h"
#include "downup/harness.h"
#include "downup/ntree_chain.h"
#include "downup/verify.h"

namespace {

using namespace downup;

struct Outcome {
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && passed) {
      passed = false;
      detail = what;
    }
  }
  void require(const VerificationReport& r) {
    auto what = r.check + " n=" + std::to_string(r.n) + (r.k ? " k=" + std::to_string(*r.k) : "") +
                (r.alpha ? " alpha=" + to_string(*r.alpha) : "");
    if (!r.passed && r.counterexample) { what += ": " + r.counterexample->what; }
    if (!r.passed && !r.detail.empty()) { what += " (" + r.detail + ")"; }
    require(r.passed, what);
  }
};

auto q(long a, long b) -> Rational { return ratio(a, b); }

auto uniform_tree() -> NTreeChainConfig { return {NTreeChainKind::uniform, q(1, 2)}; }
auto alpha_tree(const Rational& a) -> NTreeChainConfig { return {NTreeChainKind::alpha, a}; }
auto uniform_dec() -> DecoratedChainConfig { return {DecoratedChainKind::uniform, q(1, 2)}; }
auto alpha_dec(const Rational& a) -> DecoratedChainConfig { return {DecoratedChainKind::alpha, a}; }

// The i >= 3 values of the closed form, written out independently of the library.
void require_printed_form(Outcome& out, int n, const Rational& alpha) {
  auto law = resampled_label_pmf(n, alpha);
  for (auto j = 3; j <= n; ++j) {
    Rational printed = (2 * j - 2 - alpha) / (n * (n - 1 - alpha));
    out.require(law.prob(j) == printed, "closed form differs at i=" + std::to_string(j));
  }
  Rational complement = 1;
  for (auto j = 3; j <= n; ++j) { complement -= law.prob(j); }
  out.require(law.prob(2) == complement, "P(2) is not the complement");
}

auto c1() -> Outcome {
  auto out = Outcome{};
  auto expected = std::vector<std::uint64_t>{1, 1, 3, 15, 105, 945, 10395, 135135};
  for (auto n = 1; n <= 8; ++n) {
    auto enumerated = std::uint64_t{0};
    for_each_tree(n, [&](const Tree&) { ++enumerated; });
    out.require(enumerated == expected[static_cast<std::size_t>(n - 1)] && tree_count(n) == enumerated,
                "count mismatch at n=" + std::to_string(n));
  }
  return out;
}

auto c2() -> Outcome {
  auto out = Outcome{};
  for (auto n = 4; n <= 7; ++n) { out.require(verify_tree_stationarity(n, uniform_tree())); }
  return out;
}

auto c3() -> Outcome {
  auto out = Outcome{};
  for (auto n = 4; n <= 6; ++n) {
    for (const auto& a : {q(1, 4), q(1, 3), q(1, 2), q(2, 3)}) { out.require(verify_tree_stationarity(n, alpha_tree(a))); }
  }
  return out;
}

auto c4() -> Outcome {
  auto out = Outcome{};
  for (auto n = 4; n <= 6; ++n) {
    for (const auto& a : {q(1, 3), q(1, 2)}) {
      out.require(verify_resample_law(n, a));
      require_printed_form(out, n, a);
    }
  }
  return out;
}

auto c5() -> Outcome {
  auto out = Outcome{};
  for (auto n = 1; n <= 7; ++n) {
    for (const auto& a : {q(1, 3), q(1, 2)}) { out.require(verify_decrement(n, a)); }
  }
  for (auto n = 1; n <= 20; ++n) {
    out.require(decrement_pmf(n, q(1, 2)) == decrement_pmf_half_bridge(n), "bridge form differs at n=" + std::to_string(n));
  }
  return out;
}

auto c6() -> Outcome {
  auto out = Outcome{};
  for (auto [n, k] : std::vector<std::pair<int, int>>{{4, 2}, {5, 2}, {5, 3}, {6, 3}}) {
    for (const auto& a : {q(1, 3), q(1, 2)}) { out.require(verify_decorated_marginal(n, k, a)); }
  }
  return out;
}

auto c7() -> Outcome {
  auto out = Outcome{};
  for (auto [n, k] : std::vector<std::pair<int, int>>{{4, 2}, {5, 2}, {5, 3}}) {
    out.require(verify_kernel_representation(n, k, uniform_dec()));
  }
  for (auto [n, k] : std::vector<std::pair<int, int>>{{4, 2}, {5, 2}}) {
    for (const auto& a : {q(1, 3), q(1, 2)}) { out.require(verify_kernel_representation(n, k, alpha_dec(a))); }
  }
  return out;
}

auto c8() -> Outcome {
  auto out = Outcome{};
  for (auto n = 4; n <= 5; ++n) {
    out.require(verify_kemeny_snell(n, 2, uniform_tree()));
    out.require(verify_intertwining(n, 2, uniform_tree()));
  }
  auto direct = verify_kemeny_snell(4, 2, uniform_tree(), true);
  out.require(!direct.passed, "direct pair unexpectedly passes Kemeny-Snell at (4,2)");
  return out;
}

auto c9() -> Outcome {
  auto out = Outcome{};
  out.require(verify_spatial_markov(4, 2, q(1, 2)));
  out.require(verify_spatial_markov(5, 2, q(1, 3)));
  return out;
}

auto c10() -> Outcome {
  auto out = Outcome{};
  out.require(verify_markov_slices(4, 2, ProjectionKind::beads, MarkovStart::stationary));
  auto point = verify_markov_slices(4, 2, ProjectionKind::beads, MarkovStart::point_mass);
  out.require(!point.passed, "point-mass start unexpectedly factorizes");
  return out;
}

auto c11() -> Outcome {
  auto out = Outcome{};
  out.require(verify_first_drop_law(5, 3, uniform_dec()));
  out.require(verify_first_drop_law(5, 3, alpha_dec(q(1, 2))));
  out.require(verify_first_drop_law(6, 3, alpha_dec(q(1, 3))));
  require_printed_form(out, 3, q(1, 2));
  require_printed_form(out, 3, q(1, 3));
  return out;
}

auto mc_spec(SimChain chain, int n, std::optional<int> k, const Rational& alpha, std::uint64_t seed) -> SimSpec {
  auto spec = SimSpec{};
  spec.chain = chain;
  spec.n = n;
  spec.k = k;
  spec.alpha = alpha;
  spec.steps = 250000;
  spec.replicas = 4;
  spec.thin = 10;
  spec.seed = seed;
  return spec;
}

auto c12() -> Outcome {
  auto out = Outcome{};
  auto detail = std::string{};
  auto gof_runs = std::vector<std::pair<std::string, SimSpec>>{
      {"uniform n=6", mc_spec(SimChain::uniform, 6, std::nullopt, q(1, 2), 20240601)},
      {"alpha n=5 a=1/3", mc_spec(SimChain::alpha, 5, std::nullopt, q(1, 3), 20240602)},
      {"dec-uniform (8,2)", mc_spec(SimChain::dec_uniform, 8, 2, q(1, 2), 20240603)},
  };
  for (const auto& [name, spec] : gof_runs) {
    auto r = gof_test(occupancy_rows(run_sim(spec)), stationary_observed_pmf(spec));
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s p=%.3g; ", name.c_str(), r.p_value);
    detail += buf;
    out.require(r.p_value > 1e-3, name + " GOF p=" + std::to_string(r.p_value));
  }

  // Row TV: the most visited (5,2) state needs 10^6 departures; it has mass about 1/7.
  auto spec = mc_spec(SimChain::dec_uniform, 5, 2, q(1, 2), 20240604);
  spec.steps = 2000000;
  spec.thin = 1;
  spec.record_transitions = true;
  auto sim = run_sim(spec);
  auto departures = std::map<std::string, std::int64_t>{};
  for (const auto& [key, c] : sim.transitions) { departures[key.first] += c; }
  auto top = std::max_element(departures.begin(), departures.end(),
                              [](const auto& a, const auto& b) { return a.second < b.second; });
  out.require(top->second >= 1000000, "most visited state has only " + std::to_string(top->second) + " departures");
  auto worst = 0.0;
  auto rows = 0;
  for (const auto& d : enumerate_decorated(5, 2)) {
    auto key = state_to_string(d);
    if (departures[key] < 100000) { continue; }
    auto exact = pmf_rows(decorated_kernel_row(d, uniform_dec()));
    auto r = gof_test(transition_row(sim, key), exact);
    worst = std::max(worst, r.total_variation);
    ++rows;
    out.require(r.total_variation < 0.02, "row TV " + std::to_string(r.total_variation) + " from " + key);
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "row TV max=%.4f over %d rows, top departures=%lld", worst, rows,
                static_cast<long long>(top->second));
  detail += buf;
  if (out.passed) { out.detail = detail; }
  return out;
}

}  // namespace

int main() {
  auto criteria = std::vector<std::pair<std::string, std::function<Outcome()>>>{
      {"enumeration counts n=1..8", c1},
      {"uniform chain stationarity n=4..7", c2},
      {"alpha chain stationarity n=4..6, four alphas", c3},
      {"resampled-label law n=4..6", c4},
      {"decrement law n<=7 and bridge form n<=20", c5},
      {"projection marginal", c6},
      {"kernel representation and consistency", c7},
      {"Kemeny-Snell and intertwining, direct-pair control", c8},
      {"spatial Markov factorization", c9},
      {"bead-string slices, stationary vs point-mass start", c10},
      {"first-dropped-label law", c11},
      {"Monte Carlo GOF and row TV", c12},
  };
  auto failures = 0;
  for (auto i = std::size_t{0}; i < criteria.size(); ++i) {
    auto start = std::chrono::steady_clock::now();
    auto out = Outcome{};
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out.passed = false;
      out.detail = std::string{"exception: "} + e.what();
    }
    auto seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s [%zu] %s (%.1fs)%s%s\n", out.passed ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), seconds,
                out.detail.empty() ? "" : ": ", out.detail.c_str());
    std::fflush(stdout);
    if (!out.passed) { ++failures; }
  }
  return failures == 0 ? 0 : 1;
}
