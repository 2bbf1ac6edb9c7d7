// OpenMP campaign loop vs the serial reference on the same configuration.

#include <benchmark/benchmark.h>

#include "coalition/campaign.hpp"

namespace {

coalition::CampaignConfig bench_config(int realizations) {
  coalition::CampaignConfig c;
  c.network.n_links = 10;
  c.network.antennas = 4;
  c.network.seed = 99;
  c.realizations = realizations;
  c.models = {{coalition::DeviationKind::merge, 2, 4},
              {coalition::DeviationKind::merge_split, 3, 4},
              {coalition::DeviationKind::individual, 0, 4}};
  return c;
}

void BM_CampaignSerial(benchmark::State& state) {
  const auto config = bench_config(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(coalition::run_campaign_serial(config));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_CampaignOpenMP(benchmark::State& state) {
  const auto config = bench_config(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(coalition::run_campaign(config));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_RatesOracle(benchmark::State& state) {
  auto config = bench_config(1);
  config.network.n_links = 17;
  config.network.antennas = 8;
  const auto tx = coalition::miso::deploy_transmitters(config.network);
  const auto chan = coalition::miso::generate_realization(config.network, tx, std::uint64_t{0});
  const auto cs = coalition::CoalitionStructure::parse("0,1,2|3,4|5|6,7,8,9|10|11,12|13|14,15,16");
  for (auto _ : state) {
    const coalition::miso::MisoOracle oracle(chan, config.network);
    benchmark::DoNotOptimize(oracle.evaluate(cs));
  }
}

}  // namespace

BENCHMARK(BM_CampaignSerial)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CampaignOpenMP)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RatesOracle)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
