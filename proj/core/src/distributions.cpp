#include "downup/distributions.h"

#include <numeric>
#include <stdexcept>
#include <string>

namespace downup {

namespace {

void compositions_into(int m, int d, Composition& prefix, std::vector<Composition>& out) {
  if (d == 1) {
    prefix.push_back(m);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (auto j = 0; j <= m; ++j) {
    prefix.push_back(j);
    compositions_into(m - j, d - 1, prefix, out);
    prefix.pop_back();
  }
}

auto factorial(int n) -> mpz_class {
  auto r = mpz_class{};
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

void check_weights(std::span<const Rational> weights, const char* context) {
  if (weights.empty()) { throw std::invalid_argument(std::string{context} + ": no weights"); }
  auto total = Rational{0};
  for (const auto& w : weights) {
    if (w < 0) { throw std::invalid_argument(std::string{context} + ": negative weight"); }
    total += w;
  }
  if (total <= 0) { throw std::invalid_argument(std::string{context} + ": weights sum to zero"); }
}

}  // namespace

auto weak_compositions(int m, int d) -> std::vector<Composition> {
  if (m < 0 || d < 1) { throw std::invalid_argument("weak_compositions: need m >= 0 and d >= 1"); }
  auto out = std::vector<Composition>{};
  auto prefix = Composition{};
  compositions_into(m, d, prefix, out);
  return out;
}

auto rising_factorial(const Rational& x, int j) -> Rational {
  auto r = Rational{1};
  for (auto i = 0; i < j; ++i) { r *= x + i; }
  return r;
}

auto binomial(int n, int m) -> Rational {
  if (m < 0 || m > n) { return 0; }
  auto r = mpz_class{};
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(m));
  return Rational{r};
}

auto dm_pmf(int m, std::span<const Rational> weights) -> FinitePmf<Composition> {
  if (m < 0) { throw std::invalid_argument("dm_pmf: m must be nonnegative"); }
  check_weights(weights, "dm_pmf");
  auto d = static_cast<int>(weights.size());
  auto total = std::accumulate(weights.begin(), weights.end(), Rational{0});
  auto denominator = rising_factorial(total, m);
  auto m_fact = factorial(m);
  auto entries = std::vector<FinitePmf<Composition>::Entry>{};
  for (auto& j : weak_compositions(m, d)) {
    auto p = Rational{m_fact};
    for (auto c = 0; c < d; ++c) {
      p *= rising_factorial(weights[static_cast<std::size_t>(c)], j[static_cast<std::size_t>(c)]);
      p /= Rational{factorial(j[static_cast<std::size_t>(c)])};
    }
    p /= denominator;
    if (p != 0) { entries.emplace_back(std::move(j), std::move(p)); }
  }
  return FinitePmf<Composition>::from_entries(std::move(entries));
}

auto dm_alpha_weights(int k, const Rational& alpha) -> std::vector<Rational> {
  if (k < 1) { throw std::invalid_argument("dm_alpha_weights: k must be positive"); }
  auto w = std::vector<Rational>(static_cast<std::size_t>(2 * k - 1), alpha);
  for (auto i = 0; i < k; ++i) { w[static_cast<std::size_t>(i)] = 1 - alpha; }
  return w;
}

auto dm_sample(int m, std::span<const double> weights, RngStream& rng) -> Composition {
  if (m < 0) { throw std::invalid_argument("dm_sample: m must be nonnegative"); }
  auto current = std::vector<double>(weights.begin(), weights.end());
  auto counts = Composition(weights.size(), 0);
  for (auto step = 0; step < m; ++step) {
    auto c = rng.weighted_index(current);
    ++counts[c];
    current[c] += 1.0;
  }
  return counts;
}

auto urn_step_pmf(const UrnState& urn) -> FinitePmf<int> {
  if (urn.weights.size() != urn.counts.size()) { throw std::invalid_argument("urn: size mismatch"); }
  check_weights(urn.weights, "urn_step_pmf");
  auto entries = std::vector<FinitePmf<int>::Entry>{};
  for (auto c = std::size_t{0}; c < urn.weights.size(); ++c) {
    entries.emplace_back(static_cast<int>(c), urn.weights[c] + urn.counts[c]);
  }
  return FinitePmf<int>::normalized(std::move(entries));
}

auto urn_step(UrnState& urn, RngStream& rng) -> int {
  if (urn.weights.size() != urn.counts.size()) { throw std::invalid_argument("urn: size mismatch"); }
  auto w = std::vector<double>{};
  w.reserve(urn.weights.size());
  for (auto c = std::size_t{0}; c < urn.weights.size(); ++c) { w.push_back(to_double(urn.weights[c]) + urn.counts[c]); }
  auto c = rng.weighted_index(w);
  ++urn.counts[c];
  return static_cast<int>(c);
}

auto decrement_pmf(int n, const Rational& alpha) -> FinitePmf<int> {
  if (n < 1) { throw std::invalid_argument("decrement_pmf: n must be positive"); }
  require_unit_interval(alpha, true, "decrement_pmf");
  auto denominator = rising_factorial(alpha, n);
  auto entries = std::vector<FinitePmf<int>::Entry>{};
  for (auto m = 1; m <= n; ++m) {
    auto p = Rational{alpha * binomial(n, m) * rising_factorial(1 - alpha, m - 1) * rising_factorial(alpha, n - m) / denominator};
    entries.emplace_back(m, p);
  }
  return FinitePmf<int>::from_entries(std::move(entries));
}

auto decrement_pmf_half_bridge(int n) -> FinitePmf<int> {
  if (n < 1) { throw std::invalid_argument("decrement_pmf_half_bridge: n must be positive"); }
  auto entries = std::vector<FinitePmf<int>::Entry>{};
  for (auto m = 1; m <= n; ++m) {
    auto p = Rational{binomial(2 * m, m) * binomial(2 * n - 2 * m, n - m) / (Rational{2 * m - 1} * binomial(2 * n, n))};
    entries.emplace_back(m, p);
  }
  return FinitePmf<int>::from_entries(std::move(entries));
}

auto decrement_weights(int n, double alpha) -> std::vector<double> {
  if (n < 1) { throw std::invalid_argument("decrement_weights: n must be positive"); }
  if (!(alpha > 0.0 && alpha < 1.0)) { throw std::invalid_argument("decrement_weights: alpha must lie in (0, 1)"); }
  auto w = std::vector<double>(static_cast<std::size_t>(n));
  // delta(n:1) = alpha n / (n - 1 + alpha), then the ratio of consecutive terms.
  w[0] = alpha * n / (n - 1 + alpha);
  for (auto m = 1; m < n; ++m) {
    w[static_cast<std::size_t>(m)] =
        w[static_cast<std::size_t>(m - 1)] * (n - m) / (m + 1) * (m - alpha) / (n - m - 1 + alpha);
  }
  return w;
}

auto decrement_sample(int n, double alpha, RngStream& rng) -> int {
  auto w = decrement_weights(n, alpha);
  return static_cast<int>(rng.weighted_index(w)) + 1;
}

}  // namespace downup
