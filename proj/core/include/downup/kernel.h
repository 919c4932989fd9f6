#ifndef DOWNUP_KERNEL_H_
#define DOWNUP_KERNEL_H_

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "downup/pmf.h"
#include "downup/rational.h"

namespace downup {

// A finite state space: distinct states in sorted order with index lookup.
template <typename State>
class StateSpace {
 public:
  StateSpace() = default;
  explicit StateSpace(std::vector<State> states) : states_{std::move(states)} {
    std::sort(states_.begin(), states_.end());
    states_.erase(std::unique(states_.begin(), states_.end()), states_.end());
    for (auto i = std::size_t{0}; i < states_.size(); ++i) { index_.emplace(states_[i], i); }
  }

  auto size() const -> std::size_t { return states_.size(); }
  auto states() const -> const std::vector<State>& { return states_; }
  auto operator[](std::size_t i) const -> const State& { return states_[i]; }
  auto find(const State& s) const -> std::optional<std::size_t> {
    auto it = index_.find(s);
    return it == index_.end() ? std::nullopt : std::optional{it->second};
  }
  auto index_of(const State& s) const -> std::size_t {
    auto it = index_.find(s);
    if (it == index_.end()) { throw std::out_of_range("state space: state not present"); }
    return it->second;
  }

 private:
  std::vector<State> states_;
  std::map<State, std::size_t> index_;
};

struct KernelEntry {
  std::size_t col;
  Rational prob;
};

// A sparse matrix of exact rationals between finite index spaces; rows are kept sorted by
// column with duplicates merged and zeros dropped.
class StochasticKernel {
 public:
  using Row = std::vector<KernelEntry>;

  StochasticKernel() = default;
  StochasticKernel(std::size_t cols, std::vector<Row> rows);

  auto rows() const -> std::size_t { return rows_.size(); }
  auto cols() const -> std::size_t { return cols_; }
  auto row(std::size_t i) const -> const Row& { return rows_[i]; }
  auto at(std::size_t i, std::size_t j) const -> Rational;
  auto nonzeros() const -> std::size_t;
  // First row whose entries do not sum to one, if any.
  auto first_non_stochastic_row() const -> std::optional<std::size_t>;

 private:
  std::size_t cols_ = 0;
  std::vector<Row> rows_;
};

struct KernelDifference {
  std::size_t row;
  std::size_t col;
  Rational lhs;
  Rational rhs;
};

auto multiply(const StochasticKernel& a, const StochasticKernel& b) -> StochasticKernel;
auto apply_left(std::span<const Rational> mu, const StochasticKernel& k) -> std::vector<Rational>;
// The 0/1 kernel of a map between index spaces.
auto deterministic_kernel(std::span<const std::size_t> map, std::size_t cols) -> StochasticKernel;
auto first_difference(const StochasticKernel& a, const StochasticKernel& b) -> std::optional<KernelDifference>;

// Solves A x = b exactly. Throws std::domain_error if A is singular.
auto solve_linear_system(std::vector<std::vector<Rational>> a, std::vector<Rational> b) -> std::vector<Rational>;

// Builds a kernel whose row for from[i] is row_fn(from[i]) mapped into the `to` space.
template <typename From, typename To, typename RowFn>
auto build_kernel(const StateSpace<From>& from, const StateSpace<To>& to, RowFn row_fn) -> StochasticKernel {
  auto rows = std::vector<StochasticKernel::Row>{};
  rows.reserve(from.size());
  for (const auto& state : from.states()) {
    auto row = StochasticKernel::Row{};
    for (const auto& [next, p] : row_fn(state)) { row.push_back({to.index_of(next), p}); }
    rows.push_back(std::move(row));
  }
  return StochasticKernel{to.size(), std::move(rows)};
}

template <typename State>
auto pmf_to_vector(const FinitePmf<State>& pmf, const StateSpace<State>& space) -> std::vector<Rational> {
  auto v = std::vector<Rational>(space.size());
  for (const auto& [s, p] : pmf) { v[space.index_of(s)] = p; }
  return v;
}

}  // namespace downup

#endif  // DOWNUP_KERNEL_H_
