#ifndef DOWNUP_IO_H_
#define DOWNUP_IO_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "downup/distributions.h"
#include "downup/pmf.h"
#include "downup/projection.h"
#include "downup/tree.h"

namespace downup {

// Compact JSON text for states. Trees use the canonical edge list; decorated trees are
//   {"shape":[[1],[2],[1,2]],"x":{"1":2,"2":1},"y":{"1-2":0}}
// with label arrays (collapsed) or bead arrays (beaded) in place of the masses.
auto state_to_string(const Tree& t) -> std::string;
auto state_to_string(const DecoratedKTree& d) -> std::string;
auto state_to_string(const CollapsedKTree& c) -> std::string;
auto state_to_string(const BeadedKTree& b) -> std::string;
auto state_to_string(int value) -> std::string;
auto state_to_string(const Composition& c) -> std::string;

struct PmfRow {
  std::string outcome;
  Rational prob;
};

struct CountRow {
  std::string outcome;
  std::int64_t count;
};

template <typename T>
auto pmf_rows(const FinitePmf<T>& pmf) -> std::vector<PmfRow> {
  auto rows = std::vector<PmfRow>{};
  rows.reserve(pmf.size());
  for (const auto& [outcome, p] : pmf) { rows.push_back({state_to_string(outcome), p}); }
  return rows;
}

// CSV with header outcome,prob_num,prob_den,prob_float.
void write_pmf_csv(std::ostream& out, const std::vector<PmfRow>& rows);
auto read_pmf_csv(std::istream& in) -> std::vector<PmfRow>;
// CSV with header outcome,count.
void write_counts_csv(std::ostream& out, const std::vector<CountRow>& rows);
auto read_counts_csv(std::istream& in) -> std::vector<CountRow>;

// One CSV record split into fields (RFC 4180 quoting).
auto split_csv_record(const std::string& line) -> std::vector<std::string>;
auto csv_field(const std::string& value) -> std::string;

}  // namespace downup

#endif  // DOWNUP_IO_H_
