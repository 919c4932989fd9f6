#include "downup/kernel.h"

namespace downup {

namespace {

void normalize_row(StochasticKernel::Row& row) {
  std::sort(row.begin(), row.end(), [](const KernelEntry& a, const KernelEntry& b) { return a.col < b.col; });
  auto out = StochasticKernel::Row{};
  out.reserve(row.size());
  for (auto& e : row) {
    if (!out.empty() && out.back().col == e.col) {
      out.back().prob += e.prob;
    } else {
      out.push_back(std::move(e));
    }
  }
  std::erase_if(out, [](const KernelEntry& e) { return e.prob == 0; });
  row = std::move(out);
}

}  // namespace

StochasticKernel::StochasticKernel(std::size_t cols, std::vector<Row> rows) : cols_{cols}, rows_{std::move(rows)} {
  for (auto& row : rows_) {
    normalize_row(row);
    if (!row.empty() && row.back().col >= cols_) { throw std::out_of_range("kernel: column index out of range"); }
  }
}

auto StochasticKernel::at(std::size_t i, std::size_t j) const -> Rational {
  const auto& r = rows_[i];
  auto it = std::lower_bound(r.begin(), r.end(), j, [](const KernelEntry& e, std::size_t c) { return e.col < c; });
  return it != r.end() && it->col == j ? it->prob : Rational{0};
}

auto StochasticKernel::nonzeros() const -> std::size_t {
  auto total = std::size_t{0};
  for (const auto& r : rows_) { total += r.size(); }
  return total;
}

auto StochasticKernel::first_non_stochastic_row() const -> std::optional<std::size_t> {
  for (auto i = std::size_t{0}; i < rows_.size(); ++i) {
    auto total = Rational{0};
    for (const auto& e : rows_[i]) { total += e.prob; }
    if (total != 1) { return i; }
  }
  return std::nullopt;
}

auto multiply(const StochasticKernel& a, const StochasticKernel& b) -> StochasticKernel {
  if (a.cols() != b.rows()) { throw std::invalid_argument("multiply: dimension mismatch"); }
  auto acc = std::vector<Rational>(b.cols());
  auto touched = std::vector<bool>(b.cols(), false);
  auto rows = std::vector<StochasticKernel::Row>{};
  rows.reserve(a.rows());
  auto cols = std::vector<std::size_t>{};
  for (auto i = std::size_t{0}; i < a.rows(); ++i) {
    cols.clear();
    for (const auto& [mid, p] : a.row(i)) {
      for (const auto& [j, q] : b.row(mid)) {
        if (!touched[j]) {
          touched[j] = true;
          cols.push_back(j);
          acc[j] = 0;
        }
        acc[j] += p * q;
      }
    }
    std::sort(cols.begin(), cols.end());
    auto row = StochasticKernel::Row{};
    row.reserve(cols.size());
    for (auto j : cols) {
      touched[j] = false;
      if (acc[j] != 0) { row.push_back({j, acc[j]}); }
    }
    rows.push_back(std::move(row));
  }
  return StochasticKernel{b.cols(), std::move(rows)};
}

auto apply_left(std::span<const Rational> mu, const StochasticKernel& k) -> std::vector<Rational> {
  if (mu.size() != k.rows()) { throw std::invalid_argument("apply_left: dimension mismatch"); }
  auto out = std::vector<Rational>(k.cols());
  for (auto i = std::size_t{0}; i < k.rows(); ++i) {
    if (mu[i] == 0) { continue; }
    for (const auto& [j, p] : k.row(i)) { out[j] += mu[i] * p; }
  }
  return out;
}

auto deterministic_kernel(std::span<const std::size_t> map, std::size_t cols) -> StochasticKernel {
  auto rows = std::vector<StochasticKernel::Row>{};
  rows.reserve(map.size());
  for (auto j : map) { rows.push_back({{j, Rational{1}}}); }
  return StochasticKernel{cols, std::move(rows)};
}

auto first_difference(const StochasticKernel& a, const StochasticKernel& b) -> std::optional<KernelDifference> {
  if (a.rows() != b.rows() || a.cols() != b.cols()) { throw std::invalid_argument("first_difference: shape mismatch"); }
  for (auto i = std::size_t{0}; i < a.rows(); ++i) {
    const auto& ra = a.row(i);
    const auto& rb = b.row(i);
    auto ia = std::size_t{0};
    auto ib = std::size_t{0};
    while (ia < ra.size() || ib < rb.size()) {
      auto ca = ia < ra.size() ? ra[ia].col : a.cols();
      auto cb = ib < rb.size() ? rb[ib].col : b.cols();
      auto col = std::min(ca, cb);
      auto pa = ca == col ? ra[ia].prob : Rational{0};
      auto pb = cb == col ? rb[ib].prob : Rational{0};
      if (pa != pb) { return KernelDifference{i, col, pa, pb}; }
      if (ca == col) { ++ia; }
      if (cb == col) { ++ib; }
    }
  }
  return std::nullopt;
}

auto solve_linear_system(std::vector<std::vector<Rational>> a, std::vector<Rational> b) -> std::vector<Rational> {
  auto n = a.size();
  if (b.size() != n) { throw std::invalid_argument("solve_linear_system: dimension mismatch"); }
  for (auto col = std::size_t{0}; col < n; ++col) {
    auto pivot = col;
    while (pivot < n && a[pivot][col] == 0) { ++pivot; }
    if (pivot == n) { throw std::domain_error("solve_linear_system: singular matrix"); }
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (auto r = col + 1; r < n; ++r) {
      if (a[r][col] == 0) { continue; }
      auto f = Rational{a[r][col] / a[col][col]};
      for (auto c = col; c < n; ++c) {
        if (a[col][c] != 0) { a[r][c] -= f * a[col][c]; }
      }
      b[r] -= f * b[col];
    }
  }
  auto x = std::vector<Rational>(n);
  for (auto r = n; r-- > 0;) {
    auto s = b[r];
    for (auto c = r + 1; c < n; ++c) { s -= a[r][c] * x[c]; }
    x[r] = s / a[r][r];
  }
  return x;
}

}  // namespace downup
