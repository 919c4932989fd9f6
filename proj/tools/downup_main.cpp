#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "downup/gof.h"
#include "downup/growth.h"
#include "downup/harness.h"
#include "downup/io.h"
#include "downup/verify.h"
#include "json.hpp"

namespace {

using namespace downup;
using Json = nlohmann::ordered_json;

constexpr int k_exit_ok = 0;
constexpr int k_exit_fail = 1;
constexpr int k_exit_usage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

auto open_out(const std::string& path) -> std::ofstream {
  auto out = std::ofstream{path};
  if (!out) { throw UsageError("cannot open " + path + " for writing"); }
  return out;
}

auto open_in(const std::string& path) -> std::ifstream {
  auto in = std::ifstream{path};
  if (!in) { throw UsageError("cannot open " + path); }
  return in;
}

auto alpha_or(const std::string& text, const Rational& fallback) -> Rational {
  return text.empty() ? fallback : parse_rational(text);
}

struct EnumerateArgs {
  int n = 0;
  bool count_only = false;
  std::string format = "text";
};

auto run_enumerate(const EnumerateArgs& a) -> int {
  if (a.n < 1) { throw UsageError("--n must be at least 1"); }
  if (a.count_only) {
    auto count = tree_count(a.n);
    if (a.format == "json") {
      std::cout << Json{{"n", a.n}, {"count", count}}.dump() << '\n';
    } else {
      std::cout << count << '\n';
    }
    return k_exit_ok;
  }
  auto trees = enumerate_trees(a.n);
  if (a.format == "json") {
    auto doc = Json::array();
    for (const auto& t : trees) { doc.push_back(Json::parse(encode(t))); }
    std::cout << doc.dump() << '\n';
  } else {
    for (const auto& t : trees) { std::cout << encode(t) << '\n'; }
  }
  return k_exit_ok;
}

struct SampleArgs {
  std::string model = "remy";
  std::string alpha;
  int n = 0;
  int count = 1;
  std::uint64_t seed = 0;
};

auto run_sample(const SampleArgs& a) -> int {
  auto cfg = GrowthConfig{};
  if (a.model == "remy") {
    cfg = GrowthConfig{Rational{1, 2}, false};
  } else if (a.model == "ford" || a.model == "ford-modified") {
    if (a.alpha.empty()) { throw UsageError("--alpha is required for " + a.model); }
    cfg = GrowthConfig{parse_rational(a.alpha), a.model == "ford-modified"};
  } else {
    throw UsageError("unknown model " + a.model);
  }
  validate(cfg);
  if (a.n < 1 || a.n > k_max_label) { throw UsageError("--n must lie in 1..64"); }
  auto rng = RngStream{a.seed, 0};
  for (auto i = 0; i < a.count; ++i) { std::cout << encode(sample_tree(a.n, cfg, rng)) << '\n'; }
  return k_exit_ok;
}

struct RunArgs {
  std::string chain = "uniform";
  int n = 0;
  int k = 0;
  std::string alpha;
  std::int64_t steps = 0;
  int replicas = 1;
  std::uint64_t seed = 0;
  std::string project = "none";
  std::int64_t thin = 1;
  std::int64_t burn_in = 0;
  int threads = 0;
  std::string out;
  std::string transitions;
};

auto sim_spec(const std::string& chain, int n, int k, const std::string& alpha, const std::string& project) -> SimSpec {
  auto spec = SimSpec{};
  spec.chain = parse_chain(chain);
  spec.n = n;
  if (k > 0) { spec.k = k; }
  spec.alpha = alpha_or(alpha, Rational{1, 2});
  spec.projection = parse_projection(project);
  return spec;
}

auto run_run(const RunArgs& a) -> int {
  auto spec = sim_spec(a.chain, a.n, a.k, a.alpha, a.project);
  spec.steps = a.steps;
  spec.replicas = a.replicas;
  spec.seed = a.seed;
  spec.thin = a.thin;
  spec.burn_in = a.burn_in;
  spec.threads = a.threads;
  spec.record_transitions = !a.transitions.empty();
  validate(spec);
  auto summary = run_sim(spec);
  auto out = open_out(a.out);
  write_counts_csv(out, occupancy_rows(summary));
  if (!a.transitions.empty()) {
    auto tr = open_out(a.transitions);
    tr << "from,to,count\n";
    for (const auto& [key, c] : summary.transitions) {
      tr << csv_field(key.first) << ',' << csv_field(key.second) << ',' << c << '\n';
    }
  }
  std::cout << Json{{"chain", a.chain}, {"recorded", summary.recorded}, {"distinct", summary.occupancy.size()}}.dump()
            << '\n';
  return k_exit_ok;
}

struct StationaryArgs {
  std::string chain = "uniform";
  int n = 0;
  int k = 0;
  std::string alpha;
  std::string project = "none";
  std::string out;
};

auto run_stationary(const StationaryArgs& a) -> int {
  auto spec = sim_spec(a.chain, a.n, a.k, a.alpha, a.project);
  spec.steps = 1;
  auto rows = stationary_observed_pmf(spec);
  auto out = open_out(a.out);
  write_pmf_csv(out, rows);
  return k_exit_ok;
}

struct GofArgs {
  std::string observed;
  std::string expected;
  double min_expected = 5.0;
  double threshold = 0.001;
};

auto run_gof(const GofArgs& a) -> int {
  auto obs_in = open_in(a.observed);
  auto exp_in = open_in(a.expected);
  auto r = gof_test(read_counts_csv(obs_in), read_pmf_csv(exp_in), a.min_expected);
  auto pass = r.p_value > a.threshold;
  std::cout << Json{{"statistic", r.statistic},
                    {"degrees_of_freedom", r.degrees_of_freedom},
                    {"p_value", r.p_value},
                    {"total_variation", r.total_variation},
                    {"pooled_cells", r.pooled_cells},
                    {"sample_size", r.total_count},
                    {"threshold", a.threshold},
                    {"verdict", pass ? "pass" : "fail"}}
                   .dump(2)
            << '\n';
  return pass ? k_exit_ok : k_exit_fail;
}

struct VerifyArgs {
  std::string check;
  int n = 0;
  int k = 0;
  std::string alpha;
  std::string chain;
  std::string project = "beads";
  std::string start = "stationary";
  bool direct = false;
  std::string report;
};

auto need_k(const VerifyArgs& a) -> int {
  if (a.k < 1) { throw UsageError(a.check + " needs --k"); }
  return a.k;
}

auto tree_chain(const VerifyArgs& a) -> NTreeChainConfig {
  auto name = a.chain.empty() ? (a.alpha.empty() ? std::string{"uniform"} : std::string{"alpha"}) : a.chain;
  if (name == "uniform") { return {NTreeChainKind::uniform, Rational{1, 2}}; }
  if (name == "alpha") {
    if (a.alpha.empty()) { throw UsageError("the alpha chain needs --alpha"); }
    return {NTreeChainKind::alpha, parse_rational(a.alpha)};
  }
  throw UsageError("expected --chain uniform or alpha, got " + name);
}

auto decorated_chain(const VerifyArgs& a) -> DecoratedChainConfig {
  auto plain = a;
  if (a.chain.rfind("dec-", 0) == 0) { plain.chain = a.chain.substr(4); }
  auto t = tree_chain(plain);
  return t.kind == NTreeChainKind::uniform ? DecoratedChainConfig{DecoratedChainKind::uniform, Rational{1, 2}}
                                           : DecoratedChainConfig{DecoratedChainKind::alpha, t.alpha};
}

auto dispatch_verify(const VerifyArgs& a) -> VerificationReport {
  const auto& c = a.check;
  auto half = Rational{1, 2};
  if (c == "stationarity") {
    if (a.chain.rfind("dec-", 0) == 0) { return verify_decorated_stationarity(a.n, need_k(a), decorated_chain(a)); }
    return verify_tree_stationarity(a.n, tree_chain(a));
  }
  if (c == "kemeny-snell") { return verify_kemeny_snell(a.n, need_k(a), tree_chain(a), a.direct); }
  if (c == "intertwining") { return verify_intertwining(a.n, need_k(a), tree_chain(a)); }
  if (c == "consistency") { return verify_kernel_representation(a.n, need_k(a), decorated_chain(a)); }
  if (c == "marginal") { return verify_decorated_marginal(a.n, need_k(a), alpha_or(a.alpha, half)); }
  if (c == "spatial-markov") { return verify_spatial_markov(a.n, need_k(a), alpha_or(a.alpha, half)); }
  if (c == "decrement") { return verify_decrement(a.n, alpha_or(a.alpha, half)); }
  if (c == "markov-slices") {
    auto start = a.start == "stationary" ? MarkovStart::stationary
                 : a.start == "point-mass" ? MarkovStart::point_mass
                                           : throw UsageError("--start must be stationary or point-mass");
    return verify_markov_slices(a.n, need_k(a), parse_projection(a.project), start, tree_chain(a));
  }
  if (c == "resample-law") { return verify_resample_law(a.n, alpha_or(a.alpha, half)); }
  if (c == "first-drop-law") { return verify_first_drop_law(a.n, need_k(a), decorated_chain(a)); }
  if (c == "down-invariance") { return verify_down_invariance(a.n, alpha_or(a.alpha, half)); }
  throw UsageError("unknown check " + c);
}

auto run_verify(const VerifyArgs& a) -> int {
  auto report = dispatch_verify(a);
  auto text = report_to_json(report);
  std::cout << text << '\n';
  if (!a.report.empty()) { open_out(a.report) << text << '\n'; }
  if (report.invalid) { return k_exit_usage; }
  return report.passed ? k_exit_ok : k_exit_fail;
}

}  // namespace

int main(int argc, char** argv) {
  auto app = CLI::App{"Exact and Monte Carlo tools for down-up chains on labelled binary trees"};
  app.require_subcommand(1);

  auto en = EnumerateArgs{};
  auto* enumerate = app.add_subcommand("enumerate", "List every tree on {1..n} in canonical order");
  enumerate->add_option("--n", en.n)->required();
  enumerate->add_flag("--count-only", en.count_only);
  enumerate->add_option("--format", en.format)->check(CLI::IsMember({"text", "json"}));

  auto sa = SampleArgs{};
  auto* sample = app.add_subcommand("sample", "Draw trees from a growth process");
  sample->add_option("--model", sa.model)->check(CLI::IsMember({"remy", "ford", "ford-modified"}));
  sample->add_option("--alpha", sa.alpha);
  sample->add_option("--n", sa.n)->required();
  sample->add_option("--count", sa.count)->check(CLI::PositiveNumber);
  sample->add_option("--seed", sa.seed);

  auto ra = RunArgs{};
  auto* run = app.add_subcommand("run", "Simulate a chain and write occupancy counts");
  run->add_option("--chain", ra.chain)->required()->check(CLI::IsMember({"uniform", "alpha", "dec-uniform", "dec-alpha"}));
  run->add_option("--n", ra.n)->required();
  run->add_option("--k", ra.k);
  run->add_option("--alpha", ra.alpha);
  run->add_option("--steps", ra.steps)->required();
  run->add_option("--replicas", ra.replicas);
  run->add_option("--seed", ra.seed)->required();
  run->add_option("--project", ra.project)->check(CLI::IsMember({"none", "mass", "star", "beads"}));
  run->add_option("--thin", ra.thin);
  run->add_option("--burn-in", ra.burn_in);
  run->add_option("--threads", ra.threads);
  run->add_option("--out", ra.out)->required();
  run->add_option("--transitions", ra.transitions, "Also write transition counts (from,to,count)");

  auto st = StationaryArgs{};
  auto* stationary = app.add_subcommand("stationary", "Write the exact stationary law of an observed process");
  stationary->add_option("--chain", st.chain)->check(CLI::IsMember({"uniform", "alpha", "dec-uniform", "dec-alpha"}));
  stationary->add_option("--n", st.n)->required();
  stationary->add_option("--k", st.k);
  stationary->add_option("--alpha", st.alpha);
  stationary->add_option("--project", st.project)->check(CLI::IsMember({"none", "mass", "star", "beads"}));
  stationary->add_option("--out", st.out)->required();

  auto va = VerifyArgs{};
  auto* verify = app.add_subcommand("verify", "Run an exact check and print a JSON report");
  verify->add_option("check", va.check)
      ->required()
      ->check(CLI::IsMember({"stationarity", "kemeny-snell", "intertwining", "consistency", "marginal",
                             "spatial-markov", "decrement", "markov-slices", "resample-law", "first-drop-law",
                             "down-invariance"}));
  verify->add_option("--n", va.n)->required();
  verify->add_option("--k", va.k);
  verify->add_option("--alpha", va.alpha);
  verify->add_option("--chain", va.chain)->check(CLI::IsMember({"uniform", "alpha", "dec-uniform", "dec-alpha"}));
  verify->add_option("--project", va.project)->check(CLI::IsMember({"mass", "star", "beads"}));
  verify->add_option("--start", va.start)->check(CLI::IsMember({"stationary", "point-mass"}));
  verify->add_flag("--direct", va.direct, "Kemeny-Snell for the tree chain under the mass projection");
  verify->add_option("--report", va.report);

  auto ga = GofArgs{};
  auto* gof = app.add_subcommand("gof", "Pearson chi-square test of counts against an exact pmf");
  gof->add_option("--observed", ga.observed)->required();
  gof->add_option("--expected", ga.expected)->required();
  gof->add_option("--min-expected", ga.min_expected);
  gof->add_option("--threshold", ga.threshold);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    auto code = app.exit(e);
    return code == 0 ? k_exit_ok : k_exit_usage;
  }

  try {
    if (*enumerate) { return run_enumerate(en); }
    if (*sample) { return run_sample(sa); }
    if (*run) { return run_run(ra); }
    if (*stationary) { return run_stationary(st); }
    if (*verify) { return run_verify(va); }
    if (*gof) { return run_gof(ga); }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return k_exit_usage;
  } catch (const SizeLimitExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return k_exit_usage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return k_exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return k_exit_fail;
  }
  return k_exit_usage;
}
