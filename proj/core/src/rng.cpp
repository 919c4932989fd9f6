#include "downup/rng.h"

#include <stdexcept>

namespace downup {

namespace {

constexpr auto k_golden = std::uint64_t{0x9e3779b97f4a7c15ULL};

constexpr auto mix64(std::uint64_t z) -> std::uint64_t {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : key_{mix64(mix64(seed + k_golden) ^ mix64(stream_id * 0xd1b54a32d192ed03ULL + 0x8cb92ba72f3d8dd7ULL))} {}

auto RngStream::operator()() -> result_type {
  auto x = key_ + (++counter_) * k_golden;
  return mix64(mix64(x) ^ key_);
}

auto RngStream::uniform01() -> double { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

auto RngStream::uniform_index(std::uint64_t n) -> std::uint64_t {
  if (n == 0) { throw std::invalid_argument("uniform_index: n must be positive"); }
  // Lemire's multiply-shift with rejection.
  auto x = (*this)();
  auto m = static_cast<unsigned __int128>(x) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    auto threshold = (0 - n) % n;
    while (low < threshold) {
      x = (*this)();
      m = static_cast<unsigned __int128>(x) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

auto RngStream::weighted_index(std::span<const double> weights) -> std::size_t {
  auto total = 0.0;
  for (auto w : weights) {
    if (!(w >= 0.0)) { throw std::invalid_argument("weighted_index: negative weight"); }
    total += w;
  }
  if (!(total > 0.0)) { throw std::invalid_argument("weighted_index: weights sum to zero"); }
  auto u = uniform01() * total;
  auto last_positive = std::size_t{0};
  for (auto i = std::size_t{0}; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) { continue; }
    last_positive = i;
    if (u < weights[i]) { return i; }
    u -= weights[i];
  }
  return last_positive;
}

}  // namespace downup
