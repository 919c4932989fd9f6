#include "downup/label_set.h"

#include <stdexcept>

namespace downup {

auto LabelSet::of(std::initializer_list<Label> labels) -> LabelSet {
  auto result = LabelSet{};
  for (auto j : labels) {
    if (j < 1 || j > k_max_label) { throw std::out_of_range("label out of range: " + std::to_string(j)); }
    result |= LabelSet::of(j);
  }
  return result;
}

auto LabelSet::labels() const -> std::vector<Label> {
  auto result = std::vector<Label>{};
  result.reserve(size());
  for (auto bits = bits_; bits != 0; bits &= bits - 1) {
    result.push_back(std::countr_zero(bits) + 1);
  }
  return result;
}

auto LabelSet::to_string() const -> std::string {
  auto result = std::string{"{"};
  auto first = true;
  for (auto j : labels()) {
    if (!first) { result += ','; }
    result += std::to_string(j);
    first = false;
  }
  return result + "}";
}

}  // namespace downup
