#include "downup/io.h"

#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace downup {

namespace {

using ordered_json = nlohmann::ordered_json;

auto edge_json(LabelSet e) -> ordered_json {
  auto arr = ordered_json::array();
  for (auto j : e.labels()) { arr.push_back(j); }
  return arr;
}

auto shape_json(const Tree& t) -> ordered_json {
  auto arr = ordered_json::array();
  for (auto e : t.edges()) { arr.push_back(edge_json(e)); }
  return arr;
}

auto edge_key(LabelSet e) -> std::string {
  auto key = std::string{};
  for (auto j : e.labels()) {
    if (!key.empty()) { key += '-'; }
    key += std::to_string(j);
  }
  return key;
}

template <typename LeafValue, typename InternalValue>
auto decorated_json(const Tree& shape, LeafValue leaf_value, InternalValue internal_value) -> std::string {
  auto x = ordered_json::object();
  auto y = ordered_json::object();
  auto k = static_cast<std::size_t>(shape.leaf_count());
  for (auto i = std::size_t{0}; i < shape.edges().size(); ++i) {
    auto e = shape.edges()[i];
    if (i < k) {
      x[std::to_string(e.min_label())] = leaf_value(i);
    } else {
      y[edge_key(e)] = internal_value(i);
    }
  }
  auto doc = ordered_json::object();
  doc["shape"] = shape_json(shape);
  doc["x"] = std::move(x);
  doc["y"] = std::move(y);
  return doc.dump();
}

auto read_lines(std::istream& in) -> std::vector<std::string> {
  auto lines = std::vector<std::string>{};
  auto line = std::string{};
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') { line.pop_back(); }
    if (!line.empty()) { lines.push_back(line); }
  }
  return lines;
}

auto parse_integer(const std::string& s, const char* what) -> mpz_class {
  auto value = mpz_class{};
  if (s.empty() || value.set_str(s, 10) != 0) { throw std::invalid_argument(std::string{"csv: bad "} + what + " '" + s + "'"); }
  return value;
}

}  // namespace

auto state_to_string(const Tree& t) -> std::string { return encode(t); }

auto state_to_string(const DecoratedKTree& d) -> std::string {
  return decorated_json(
      d.shape(), [&](std::size_t i) { return d.masses()[i]; }, [&](std::size_t i) { return d.masses()[i]; });
}

auto state_to_string(const CollapsedKTree& c) -> std::string {
  auto block = [&](std::size_t i) { return edge_json(c.blocks()[i]); };
  return decorated_json(c.shape(), block, block);
}

auto state_to_string(const BeadedKTree& b) -> std::string {
  auto k = static_cast<std::size_t>(b.k());
  return decorated_json(
      b.shape(), [&](std::size_t i) { return b.x()[i]; },
      [&](std::size_t i) { return ordered_json(b.beads()[i - k]); });
}

auto state_to_string(int value) -> std::string { return std::to_string(value); }

auto state_to_string(const Composition& c) -> std::string { return ordered_json(c).dump(); }

auto csv_field(const std::string& value) -> std::string {
  if (value.find_first_of(",\"\n") == std::string::npos) { return value; }
  auto out = std::string{"\""};
  for (auto ch : value) {
    if (ch == '"') { out += '"'; }
    out += ch;
  }
  return out + "\"";
}

auto split_csv_record(const std::string& line) -> std::vector<std::string> {
  auto fields = std::vector<std::string>{};
  auto field = std::string{};
  auto quoted = false;
  for (auto i = std::size_t{0}; i < line.size(); ++i) {
    auto ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        field += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field += ch;
    }
  }
  if (quoted) { throw std::invalid_argument("csv: unterminated quote"); }
  fields.push_back(std::move(field));
  return fields;
}

void write_pmf_csv(std::ostream& out, const std::vector<PmfRow>& rows) {
  out << "outcome,prob_num,prob_den,prob_float\n";
  char buffer[64];
  for (const auto& row : rows) {
    std::snprintf(buffer, sizeof buffer, "%.17g", to_double(row.prob));
    out << csv_field(row.outcome) << ',' << row.prob.get_num().get_str() << ',' << row.prob.get_den().get_str() << ','
        << buffer << '\n';
  }
}

auto read_pmf_csv(std::istream& in) -> std::vector<PmfRow> {
  auto lines = read_lines(in);
  if (lines.empty() || split_csv_record(lines.front()) != std::vector<std::string>{"outcome", "prob_num", "prob_den", "prob_float"}) {
    throw std::invalid_argument("csv: expected header outcome,prob_num,prob_den,prob_float");
  }
  auto rows = std::vector<PmfRow>{};
  for (auto i = std::size_t{1}; i < lines.size(); ++i) {
    auto f = split_csv_record(lines[i]);
    if (f.size() != 4) { throw std::invalid_argument("csv: line " + std::to_string(i + 1) + " needs 4 fields"); }
    auto den = parse_integer(f[2], "denominator");
    if (den <= 0) { throw std::invalid_argument("csv: line " + std::to_string(i + 1) + " has a nonpositive denominator"); }
    auto p = Rational{parse_integer(f[1], "numerator"), den};
    p.canonicalize();
    rows.push_back({f[0], p});
  }
  return rows;
}

void write_counts_csv(std::ostream& out, const std::vector<CountRow>& rows) {
  out << "outcome,count\n";
  for (const auto& row : rows) { out << csv_field(row.outcome) << ',' << row.count << '\n'; }
}

auto read_counts_csv(std::istream& in) -> std::vector<CountRow> {
  auto lines = read_lines(in);
  if (lines.empty() || split_csv_record(lines.front()) != std::vector<std::string>{"outcome", "count"}) {
    throw std::invalid_argument("csv: expected header outcome,count");
  }
  auto rows = std::vector<CountRow>{};
  for (auto i = std::size_t{1}; i < lines.size(); ++i) {
    auto f = split_csv_record(lines[i]);
    if (f.size() != 2) { throw std::invalid_argument("csv: line " + std::to_string(i + 1) + " needs 2 fields"); }
    auto count = parse_integer(f[1], "count");
    if (count < 0 || !count.fits_slong_p()) { throw std::invalid_argument("csv: line " + std::to_string(i + 1) + " has a bad count"); }
    rows.push_back({f[0], count.get_si()});
  }
  return rows;
}

}  // namespace downup
