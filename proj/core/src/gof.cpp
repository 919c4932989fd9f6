#include "downup/gof.h"

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace downup {

auto chi_square_sf(double statistic, int degrees_of_freedom) -> double {
  if (degrees_of_freedom <= 0) { return 1.0; }
  if (statistic <= 0.0) { return 1.0; }
  return boost::math::gamma_q(0.5 * degrees_of_freedom, 0.5 * statistic);
}

auto gof_test(const std::vector<CountRow>& observed, const std::vector<PmfRow>& expected, double min_expected)
    -> GofResult {
  if (expected.empty()) { throw std::invalid_argument("gof: empty expected pmf"); }
  auto position = std::unordered_map<std::string, std::size_t>{};
  auto total_prob = Rational{0};
  for (auto i = std::size_t{0}; i < expected.size(); ++i) {
    if (!position.emplace(expected[i].outcome, i).second) {
      throw std::invalid_argument("gof: duplicate expected outcome " + expected[i].outcome);
    }
    if (expected[i].prob < 0) { throw std::invalid_argument("gof: negative expected probability"); }
    total_prob += expected[i].prob;
  }
  if (total_prob != 1) { throw std::invalid_argument("gof: expected probabilities sum to " + to_string(total_prob)); }

  auto counts = std::vector<std::int64_t>(expected.size(), 0);
  auto result = GofResult{};
  for (const auto& row : observed) {
    auto it = position.find(row.outcome);
    if (it == position.end()) { throw std::invalid_argument("gof: observed outcome outside the support: " + row.outcome); }
    counts[it->second] += row.count;
    result.total_count += row.count;
  }
  if (result.total_count == 0) { throw std::invalid_argument("gof: no observations"); }
  auto n = static_cast<double>(result.total_count);

  auto tv = 0.0;
  for (auto i = std::size_t{0}; i < expected.size(); ++i) {
    tv += std::abs(static_cast<double>(counts[i]) / n - to_double(expected[i].prob));
  }
  result.total_variation = 0.5 * tv;

  struct Cell {
    double expected;
    double observed;
  };
  auto cells = std::vector<Cell>{};
  auto open = Cell{0.0, 0.0};
  for (auto i = std::size_t{0}; i < expected.size(); ++i) {
    open.expected += n * to_double(expected[i].prob);
    open.observed += static_cast<double>(counts[i]);
    if (open.expected >= min_expected) {
      cells.push_back(open);
      open = Cell{0.0, 0.0};
    }
  }
  if (open.expected > 0.0 || open.observed > 0.0) {
    if (cells.empty()) {
      cells.push_back(open);
    } else {
      cells.back().expected += open.expected;
      cells.back().observed += open.observed;
    }
  }
  for (const auto& c : cells) {
    auto d = c.observed - c.expected;
    result.statistic += d * d / c.expected;
  }
  result.pooled_cells = cells.size();
  result.degrees_of_freedom = static_cast<int>(cells.size()) - 1;
  result.p_value = chi_square_sf(result.statistic, result.degrees_of_freedom);
  return result;
}

}  // namespace downup
