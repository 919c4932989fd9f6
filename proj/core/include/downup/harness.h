#ifndef DOWNUP_HARNESS_H_
#define DOWNUP_HARNESS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "downup/io.h"
#include "downup/pmf.h"
#include "downup/projection.h"
#include "downup/rational.h"
#include "downup/rng.h"

namespace downup {

enum class SimChain { uniform, alpha, dec_uniform, dec_alpha };

auto parse_chain(std::string_view name) -> SimChain;
auto chain_name(SimChain chain) -> std::string;
auto is_decorated(SimChain chain) -> bool;

struct SimSpec {
  SimChain chain = SimChain::uniform;
  int n = 0;
  std::optional<int> k;
  Rational alpha{1, 2};
  std::int64_t steps = 0;
  int replicas = 1;
  std::uint64_t seed = 0;
  ProjectionKind projection = ProjectionKind::none;
  // Occupancy records every thin-th state; transitions are counted at every step.
  std::int64_t thin = 1;
  // Exploratory only: steps discarded before recording.
  std::int64_t burn_in = 0;
  bool record_transitions = false;
  // Worker threads for replicas; 0 picks the hardware concurrency.
  int threads = 0;
};

// Throws std::invalid_argument on an inconsistent spec.
void validate(const SimSpec& spec);

// Counts keyed by the serialized observed state (tree encoding or k-tree JSON).
struct SimSummary {
  std::map<std::string, std::int64_t> occupancy;
  std::map<std::pair<std::string, std::string>, std::int64_t> transitions;
  std::int64_t recorded = 0;  // replicas * floor(steps / thin)
};

// Each replica r runs on RngStream(seed, r) from an exact stationary sample; results are
// merged in replica order.
auto run_sim(const SimSpec& spec) -> SimSummary;

// One sample from the stationary law of the observed process of spec.
auto stationary_observed_sample(const SimSpec& spec, RngStream& rng) -> std::string;
// The exact stationary law of the observed process, for gof. Requires exact-scale sizes.
auto stationary_observed_pmf(const SimSpec& spec) -> std::vector<PmfRow>;

auto occupancy_rows(const SimSummary& s) -> std::vector<CountRow>;
// Empirical transition row out of `from`, as counts.
auto transition_row(const SimSummary& s, const std::string& from) -> std::vector<CountRow>;

}  // namespace downup

#endif  // DOWNUP_HARNESS_H_
