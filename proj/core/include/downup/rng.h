#ifndef DOWNUP_RNG_H_
#define DOWNUP_RNG_H_

#include <cstdint>
#include <limits>
#include <span>

namespace downup {

// Counter-based 64-bit generator: output k of stream (seed, stream_id) is a fixed mixing
// function of (seed, stream_id, k), so runs are reproducible on every platform.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  static constexpr auto min() -> result_type { return 0; }
  static constexpr auto max() -> result_type { return std::numeric_limits<result_type>::max(); }

  auto operator()() -> result_type;
  // Uniform on [0, 1) with 53 random bits.
  auto uniform01() -> double;
  // Uniform on {0, ..., n - 1}, unbiased. Requires n > 0.
  auto uniform_index(std::uint64_t n) -> std::uint64_t;
  // Index drawn proportionally to nonnegative weights with a positive sum.
  auto weighted_index(std::span<const double> weights) -> std::size_t;

  auto counter() const -> std::uint64_t { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace downup

#endif  // DOWNUP_RNG_H_
