#ifndef DOWNUP_GOF_H_
#define DOWNUP_GOF_H_

#include <cstdint>
#include <map>
#include <vector>

#include "downup/io.h"
#include "downup/pmf.h"

namespace downup {

struct GofResult {
  double statistic = 0.0;
  int degrees_of_freedom = 0;
  double p_value = 1.0;
  double total_variation = 0.0;
  std::size_t pooled_cells = 0;
  std::int64_t total_count = 0;
};

// Pearson chi-square test of observed counts against an exact pmf. Cells are pooled in the
// order of `expected` until each pooled cell expects at least min_expected counts; a short
// tail joins the last pooled cell. Observed outcomes outside the support are an error.
auto gof_test(const std::vector<CountRow>& observed, const std::vector<PmfRow>& expected, double min_expected = 5.0)
    -> GofResult;

template <typename State>
auto gof_test(const std::map<State, std::int64_t>& observed, const FinitePmf<State>& expected) -> GofResult {
  auto rows = std::vector<CountRow>{};
  for (const auto& [s, c] : observed) { rows.push_back({state_to_string(s), c}); }
  return gof_test(rows, pmf_rows(expected));
}

// Chi-square survival function P(X >= statistic) with the given degrees of freedom.
auto chi_square_sf(double statistic, int degrees_of_freedom) -> double;

}  // namespace downup

#endif  // DOWNUP_GOF_H_
