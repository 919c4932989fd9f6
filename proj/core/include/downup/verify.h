#ifndef DOWNUP_VERIFY_H_
#define DOWNUP_VERIFY_H_

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "downup/decorated_chain.h"
#include "downup/kernel.h"
#include "downup/ntree_chain.h"
#include "downup/projection.h"
#include "downup/rational.h"

namespace downup {

struct Counterexample {
  std::string what;
  std::string row;
  std::string column;
  std::string lhs;
  std::string rhs;
};

struct VerificationReport {
  std::string check;
  int n = 0;
  std::optional<int> k;
  std::optional<Rational> alpha;
  bool passed = false;
  // Set when the parameters were rejected, so no verdict was reached.
  bool invalid = false;
  std::optional<Counterexample> counterexample;
  std::string detail;
  double wall_seconds = 0.0;
};

auto report_to_json(const VerificationReport& r) -> std::string;

// Exact checks refuse state spaces whose size times row support exceeds this bound.
inline constexpr double k_default_size_bound = 1e8;

class SizeLimitExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Exact tree chain on {1..n}: states in canonical order, stationary law and transition kernel.
struct TreeChainModel {
  StateSpace<Tree> space;
  std::vector<Rational> stationary;
  StochasticKernel kernel;
};

auto build_tree_chain_model(int n, const NTreeChainConfig& cfg, double size_bound = k_default_size_bound)
    -> TreeChainModel;

struct DecoratedChainModel {
  StateSpace<DecoratedKTree> space;
  std::vector<Rational> stationary;  // the decorated marginal law
  StochasticKernel kernel;
};

auto build_decorated_chain_model(int n, int k, const DecoratedChainConfig& cfg) -> DecoratedChainModel;

// pi K = pi, exactly.
auto check_stationary(std::span<const Rational> pi, const StochasticKernel& k) -> VerificationReport;

struct KemenySnellResult {
  VerificationReport report;
  std::optional<StochasticKernel> induced;  // the lumped kernel when the criterion holds
};

// Rows of K g must agree within each fibre of g (g maps row indices of K to 0..ny-1).
auto check_kemeny_snell(const StochasticKernel& k, std::span<const std::size_t> g, std::size_t ny) -> KemenySnellResult;
// Lambda P = Q Lambda, exactly.
auto check_intertwining(const StochasticKernel& lambda, const StochasticKernel& p, const StochasticKernel& q)
    -> VerificationReport;

auto verify_tree_stationarity(int n, const NTreeChainConfig& cfg) -> VerificationReport;
auto verify_decorated_stationarity(int n, int k, const DecoratedChainConfig& cfg) -> VerificationReport;
// The decorated kernel equals Lambda P rho for the matching tree chain, and the projected
// stationary law is stationary for it.
auto verify_kernel_representation(int n, int k, const DecoratedChainConfig& cfg) -> VerificationReport;
// The mass projection of q_{n,alpha} equals the shape-times-DM law.
auto verify_decorated_marginal(int n, int k, const Rational& alpha) -> VerificationReport;
// Kemeny-Snell for the lumped collapsed kernel under forgetting block labels; with
// direct_pair set, for the tree chain itself under the mass projection instead.
auto verify_kemeny_snell(int n, int k, const NTreeChainConfig& cfg, bool direct_pair = false) -> VerificationReport;
// Lambda P = Q Lambda and Lambda P^2 rho = Q^2 for the collapsed projection.
auto verify_intertwining(int n, int k, const NTreeChainConfig& cfg) -> VerificationReport;
// Given the collapsed projection, internal structures are independent with the growth laws.
auto verify_spatial_markov(int n, int k, const Rational& alpha) -> VerificationReport;
// Under modified growth with mass n (n + 1 leaves), the first spinal subtree of leaf 1 has
// size ~ decrement_pmf(n), and given its size m the two pieces are independent with laws
// q_{m} and modified q_{n-m+1}.
auto verify_decrement(int n, const Rational& alpha) -> VerificationReport;

enum class MarkovStart { stationary, point_mass };

// The projected chain over three slices factorizes as mu(y0) R(y0,y1) R(y1,y2) with R the
// stationary one-step kernel of the projection.
auto verify_markov_slices(int n, int k, ProjectionKind projection, MarkovStart start,
                          const NTreeChainConfig& cfg = {}) -> VerificationReport;
auto verify_resample_law(int n, const Rational& alpha) -> VerificationReport;
// Law of the first label dropped in case (c), started from the decorated marginal law.
auto verify_first_drop_law(int n, int k, const DecoratedChainConfig& cfg) -> VerificationReport;
// Given that leaf i swaps with j, the alpha down-move output is q_{n-1,alpha}.
auto verify_down_invariance(int n, const Rational& alpha) -> VerificationReport;

}  // namespace downup

#endif  // DOWNUP_VERIFY_H_
