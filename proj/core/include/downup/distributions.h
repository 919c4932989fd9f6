#ifndef DOWNUP_DISTRIBUTIONS_H_
#define DOWNUP_DISTRIBUTIONS_H_

#include <span>
#include <vector>

#include "downup/pmf.h"
#include "downup/rational.h"
#include "downup/rng.h"

namespace downup {

using Composition = std::vector<int>;

// All weak compositions of m into d nonnegative parts, in lexicographic order.
auto weak_compositions(int m, int d) -> std::vector<Composition>;

// Rising factorial x (x+1) ... (x+j-1).
auto rising_factorial(const Rational& x, int j) -> Rational;
auto binomial(int n, int m) -> Rational;

// Dirichlet-multinomial law of the colour counts after m draws from a Polya urn whose
// colours start with the given (nonnegative, not all zero) weights.
auto dm_pmf(int m, std::span<const Rational> weights) -> FinitePmf<Composition>;
// Weights of DM^alpha_{2k-1}: 1 - alpha on k external coordinates, then alpha on k - 1
// internal ones.
auto dm_alpha_weights(int k, const Rational& alpha) -> std::vector<Rational>;
// Draws from DM(m, weights) by running the urn m steps.
auto dm_sample(int m, std::span<const double> weights, RngStream& rng) -> Composition;

// A Polya urn: colour c is drawn with probability proportional to weights[c] + counts[c].
struct UrnState {
  std::vector<Rational> weights;
  std::vector<int> counts;
};

auto urn_step_pmf(const UrnState& urn) -> FinitePmf<int>;
// Draws a colour, increments its count and returns it.
auto urn_step(UrnState& urn, RngStream& rng) -> int;

// Decrement law delta_alpha(n : .) on {1, ..., n}:
//   alpha C(n, m) (1 - alpha)^(m-1 rising) alpha^(n-m rising) / alpha^(n rising).
// Requires n >= 1 and alpha in (0, 1).
auto decrement_pmf(int n, const Rational& alpha) -> FinitePmf<int>;
// The alpha = 1/2 law in random-walk-bridge form:
//   C(2m, m) C(2n - 2m, n - m) / ((2m - 1) C(2n, n)).
auto decrement_pmf_half_bridge(int n) -> FinitePmf<int>;
// Floating-point decrement weights indexed by m - 1, for sampling.
auto decrement_weights(int n, double alpha) -> std::vector<double>;
auto decrement_sample(int n, double alpha, RngStream& rng) -> int;

}  // namespace downup

#endif  // DOWNUP_DISTRIBUTIONS_H_
