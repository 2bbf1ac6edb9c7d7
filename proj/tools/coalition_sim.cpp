// coalition-sim: command-line front end.
//
//   run --config FILE [--seed S] [--realizations R] [--out DIR]
//   complexity --n-max N --q Q [--q Q ...]
//   oracle --n N --model M --q Q --seed S [--games G]
//
// Exit codes: 0 success, 2 validation error, 3 invariant violation.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "coalition/campaign.hpp"
#include "coalition/complexity.hpp"
#include "coalition/errors.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitInvariant = 3;

struct RunArgs {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> realizations;
  std::optional<std::string> out;
  std::optional<int> threads;
  std::string trace;
  std::string dump_channels;
};

int run_command(const RunArgs& args) {
  using namespace coalition;
  auto config = load_campaign_config(args.config);
  if (args.seed) config.network.seed = *args.seed;
  if (args.realizations) config.realizations = *args.realizations;
  if (args.out) config.out_dir = *args.out;
  if (args.threads) config.threads = *args.threads;
  config.validate();

  const bool keep_traces = !args.trace.empty();
  const auto result = run_campaign(config, keep_traces);
  write_campaign_outputs(config, result, config.out_dir);

  if (keep_traces) {
    std::ofstream out(args.trace);
    if (!out) throw std::runtime_error("cannot write " + args.trace);
    for (const auto& rec : result.records) {
      for (std::size_t m = 0; m < config.models.size(); ++m) {
        for (const auto& step : rec.outcomes[m].trace) {
          out << rec.index << ' ' << config.models[m].label() << ' ' << format_trace_line(step) << '\n';
        }
      }
    }
  }
  if (!args.dump_channels.empty()) {
    std::ofstream out(args.dump_channels);
    if (!out) throw std::runtime_error("cannot write " + args.dump_channels);
    miso::write_channel_dump(out, miso::generate_realization(config.network, result.transmitters, std::uint64_t{0}));
  }

  const auto& stats = result.stats;
  std::cout << fmt::format("{} realizations, {} links, {} antennas; noncooperation sum rate {:.4f}\n",
                           stats.realizations, stats.n_links, config.network.antennas, stats.mean_baseline_sum_rate);
  std::cout << fmt::format("{:<16} {:>10} {:>8} {:>10} {:>12} {:>10}\n", "model", "sum_rate", "se", "link_rate",
                           "cooperating", "coalitions");
  for (const auto& ms : stats.models) {
    std::cout << fmt::format("{:<16} {:>10.4f} {:>8.4f} {:>10.4f} {:>12.3f} {:>10.3f}\n", ms.model.label(),
                             ms.mean_sum_rate, ms.se_sum_rate, ms.mean_link_rate, ms.mean_cooperating,
                             ms.mean_coalitions);
  }
  std::cout << "outputs written to " << config.out_dir.string() << '\n';
  return 0;
}

int complexity_command(unsigned n_max, const std::vector<std::string>& q_args) {
  using namespace coalition;
  std::vector<unsigned> qs;
  for (const auto& q : q_args) {
    if (q == "n") {
      qs.push_back(kQEqualsN);
      continue;
    }
    std::size_t used = 0;
    const unsigned long value = std::stoul(q, &used);
    if (used != q.size() || value < 2) throw DomainError("--q expects an integer >= 2 or 'n', got '" + q + "'");
    qs.push_back(static_cast<unsigned>(value));
  }
  std::cout << "n,q,D,T\n";
  for (const auto& row : complexity_table(n_max, qs)) {
    std::cout << row.n << ',' << row.q << ',' << row.merge << ',' << row.split << '\n';
  }
  return 0;
}

int oracle_command(int n, const std::string& model_name, int q, std::uint64_t seed, int games) {
  using namespace coalition;
  if (n < 1 || n > kBruteForceMaxPlayers) {
    throw DomainError(fmt::format("--n must be in [1, {}]", kBruteForceMaxPlayers));
  }
  if (games < 1) throw DomainError("--games must be positive");
  DeviationModel model{parse_deviation_kind(model_name), q, n};
  model.validate();

  miso::NetworkConfig net;
  net.n_links = n;
  net.antennas = n;
  net.seed = seed;
  const auto tx = miso::deploy_transmitters(net);
  const bool uses_history = model.kind == DeviationKind::merge_split || model.kind == DeviationKind::individual;

  int agree = 0;
  for (int g = 0; g < games; ++g) {
    const auto chan = miso::generate_realization(net, tx, static_cast<std::uint64_t>(g));
    const miso::MisoOracle oracle(chan, net);
    const auto run = run_formation(oracle, model, CoalitionStructure::singletons(n));
    const auto stable_set = brute_force_stable_set(oracle, model, n, uses_history ? run.state.ledger : HistoryLedger{});
    const bool ok = std::find(stable_set.begin(), stable_set.end(), run.stable()) != stable_set.end();
    agree += ok ? 1 : 0;
    std::cout << fmt::format("game {:>3}: formed {:<20} steps {:>3}  stable set size {:>4}  {}\n", g,
                             run.stable().to_string(), run.state.step_count, stable_set.size(),
                             ok ? "agree" : "DISAGREE");
  }
  std::cout << fmt::format("agreement: {}/{} ({})\n", agree, games, model.label());
  return agree == games ? 0 : kExitInvariant;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coalition formation for multiuser networks"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Monte Carlo campaign on random MISO interference channels");
  run->add_option("--config", run_args.config, "Campaign configuration file")->required()->check(CLI::ExistingFile);
  run->add_option("--seed", run_args.seed, "Master seed (overrides the file)");
  run->add_option("--realizations", run_args.realizations, "Number of channel realizations");
  run->add_option("--out", run_args.out, "Output directory");
  run->add_option("--threads", run_args.threads, "Worker threads (0 = OpenMP default)");
  run->add_option("--trace", run_args.trace, "Write every accepted step to this file");
  run->add_option("--dump-channels", run_args.dump_channels, "Write realization 0's channels to this file");

  unsigned n_max = 17;
  std::vector<std::string> q_args;
  auto* complexity = app.add_subcommand("complexity", "Merge/split enumeration counts D(n,q), T(n,q) as CSV");
  complexity->add_option("--n-max", n_max, "Largest player count")->required();
  complexity->add_option("--q", q_args, "Deviation bound; repeatable; 'n' means q = n")->required();

  int oracle_n = 4;
  std::string oracle_model = "merge";
  int oracle_q = 2;
  std::uint64_t oracle_seed = 1;
  int oracle_games = 50;
  auto* oracle = app.add_subcommand("oracle", "Cross-check formation against brute-force stability");
  oracle->add_option("--n", oracle_n, "Number of links (antennas = n)")->required();
  oracle->add_option("--model", oracle_model, "merge | split | merge_split | individual")->required();
  oracle->add_option("--q", oracle_q, "Deviation bound");
  oracle->add_option("--seed", oracle_seed, "Seed");
  oracle->add_option("--games", oracle_games, "Number of random games");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*run) return run_command(run_args);
    if (*complexity) return complexity_command(n_max, q_args);
    if (*oracle) return oracle_command(oracle_n, oracle_model, oracle_q, oracle_seed, oracle_games);
  } catch (const coalition::InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const coalition::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const coalition::DomainError& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kExitValidation;
  } catch (const coalition::ResourceError& e) {
    std::cerr << "too large: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
