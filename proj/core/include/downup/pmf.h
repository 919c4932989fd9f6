#ifndef DOWNUP_PMF_H_
#define DOWNUP_PMF_H_

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "downup/rational.h"

namespace downup {

template <typename T>
struct Weighted {
  T value;
  Rational weight;
};

// An exact probability mass function on finitely many outcomes, kept sorted by outcome with
// strictly positive masses summing to exactly one.
template <typename T>
class FinitePmf {
 public:
  using Entry = std::pair<T, Rational>;

  FinitePmf() = default;

  // Merges duplicate outcomes and drops zero masses. Throws unless the masses sum to one.
  static auto from_entries(std::vector<Entry> entries) -> FinitePmf {
    auto merged = std::map<T, Rational>{};
    for (auto& [outcome, p] : entries) {
      if (p < 0) { throw std::invalid_argument("pmf: negative mass"); }
      merged[std::move(outcome)] += p;
    }
    auto pmf = FinitePmf{};
    auto total = Rational{0};
    for (auto& [outcome, p] : merged) {
      total += p;
      if (p != 0) { pmf.entries_.emplace_back(outcome, p); }
    }
    if (total != 1) { throw std::invalid_argument("pmf: masses sum to " + to_string(total)); }
    return pmf;
  }

  // Normalizes nonnegative weights with a positive total.
  static auto normalized(std::vector<Entry> entries) -> FinitePmf {
    auto total = Rational{0};
    for (const auto& e : entries) { total += e.second; }
    if (total <= 0) { throw std::invalid_argument("pmf: total weight must be positive"); }
    for (auto& e : entries) { e.second /= total; }
    return from_entries(std::move(entries));
  }

  static auto point_mass(T outcome) -> FinitePmf {
    auto pmf = FinitePmf{};
    pmf.entries_.emplace_back(std::move(outcome), Rational{1});
    return pmf;
  }

  auto entries() const -> const std::vector<Entry>& { return entries_; }
  auto size() const -> std::size_t { return entries_.size(); }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  auto prob(const T& outcome) const -> Rational {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), outcome,
                               [](const Entry& e, const T& x) { return e.first < x; });
    return it != entries_.end() && it->first == outcome ? it->second : Rational{0};
  }

  template <typename F>
  auto pushforward(F&& f) const {
    using U = std::decay_t<decltype(f(std::declval<const T&>()))>;
    auto out = std::vector<typename FinitePmf<U>::Entry>{};
    out.reserve(entries_.size());
    for (const auto& [outcome, p] : entries_) { out.emplace_back(f(outcome), p); }
    return FinitePmf<U>::from_entries(std::move(out));
  }

  auto operator==(const FinitePmf& other) const -> bool { return entries_ == other.entries_; }

 private:
  std::vector<Entry> entries_;
};

}  // namespace downup

#endif  // DOWNUP_PMF_H_
