#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "coalition/campaign.hpp"
#include "coalition/errors.hpp"

using namespace coalition;

namespace {

CampaignConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_campaign_config(in, "test.cfg");
}

CampaignConfig small_config(int n, int t, int realizations) {
  CampaignConfig c;
  c.network.n_links = n;
  c.network.antennas = t;
  c.network.seed = 2024;
  c.realizations = realizations;
  c.models = {{DeviationKind::merge, 2, t}, {DeviationKind::merge_split, 2, t}, {DeviationKind::individual, 0, t}};
  return c;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

RealizationRecord record(double sum_rate, const std::string& structure) {
  RealizationRecord r;
  r.baseline_sum_rate = 1.0;
  ModelOutcome o;
  o.stable = CoalitionStructure::parse(structure);
  o.sum_rate = sum_rate;
  r.outcomes.push_back(o);
  return r;
}

}  // namespace

TEST_CASE("config parsing") {
  const auto c = parse(R"(# campaign
n_links = 10
antennas = 4
seed = 7
realizations = 20
q = 2,3
model = merge
model = merge_split,4
model = individual
pathloss_slope_db_per_decade = 3.76
)");
  CHECK(c.network.n_links == 10);
  CHECK(c.network.antennas == 4);
  CHECK(c.network.seed == 7);
  CHECK(c.realizations == 20);
  CHECK(c.network.pathloss_slope_db_per_decade == 3.76);
  REQUIRE(c.models.size() == 4);
  CHECK(c.models[0] == DeviationModel{DeviationKind::merge, 2, 4});
  CHECK(c.models[1] == DeviationModel{DeviationKind::merge, 3, 4});
  CHECK(c.models[2] == DeviationModel{DeviationKind::merge_split, 4, 4});
  CHECK(c.models[3].kind == DeviationKind::individual);
  CHECK(c.models[3].max_coalition_size == 4);
}

TEST_CASE("config errors carry location and key") {
  auto message = [](const std::string& text) {
    try {
      parse(text);
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message("model = merge\nn_links = ten\n") == "test.cfg:2: key 'n_links': expected a number, got 'ten'");
  CHECK(message("model = merge\ncolour = red\n") == "test.cfg:2: unknown key 'colour'");
  CHECK(message("model = merge\njust text\n") == "test.cfg:2: expected 'key = value'");
  CHECK(message("model = hop,2\n").starts_with("test.cfg:1: key 'model'"));
  CHECK(message("n_links = 3\n") == "test.cfg: at least one model is required");
  CHECK(message("model = merge,1\n").starts_with("test.cfg: model merge_1"));
  CHECK(message("model = merge\nrealizations = 0\n") == "test.cfg: realizations must be at least 1");
}

TEST_CASE("summarize") {
  const std::vector<DeviationModel> models{{DeviationKind::merge, 2}};
  const std::vector<RealizationRecord> one{record(2.0, "0,1|2")};
  auto s = summarize(one, models, 3);
  CHECK(s.models[0].se_sum_rate == 0.0);
  CHECK(s.models[0].mean_sum_rate == 2.0);

  const std::vector<RealizationRecord> two{record(2.0, "0,1,2"), record(4.0, "0,1,2")};
  s = summarize(two, models, 3);
  CHECK(s.models[0].mean_sum_rate == 3.0);
  CHECK(s.models[0].se_sum_rate == doctest::Approx(1.0));
  for (double f : s.models[0].cooperation_frequency) CHECK(f == 1.0);

  const std::vector<RealizationRecord> mixed{record(1.0, "0,1|2"), record(1.0, "0|1,2")};
  s = summarize(mixed, models, 3);
  const auto& m = s.models[0].cooperation_frequency;
  for (int i = 0; i < 3; ++i) {
    CHECK(m[static_cast<std::size_t>(i * 3 + i)] == 1.0);
    for (int j = 0; j < 3; ++j) CHECK(m[static_cast<std::size_t>(i * 3 + j)] == m[static_cast<std::size_t>(j * 3 + i)]);
  }
  CHECK(m[1] == 0.5);
  CHECK(m[2] == 0.0);

  CHECK_THROWS_AS(summarize(std::vector<RealizationRecord>{}, models, 3), DomainError);
}

TEST_CASE("parallel and serial campaigns agree") {
  auto config = small_config(6, 3, 8);
  config.threads = 3;
  const auto par = run_campaign(config);
  const auto ser = run_campaign_serial(config);
  std::ostringstream a, b;
  write_results_csv(a, config, par.records);
  write_results_csv(b, config, ser.records);
  CHECK(a.str() == b.str());
  CHECK(par.stats.models[0].mean_sum_rate == ser.stats.models[0].mean_sum_rate);
}

TEST_CASE("no cross channels means no cooperation") {
  auto config = small_config(5, 3, 6);
  config.network.zero_cross_channels = true;
  const auto result = run_campaign(config);
  for (const auto& ms : result.stats.models) {
    CHECK(ms.mean_cooperating == 0.0);
    for (int i = 0; i < 5; ++i) {
      for (int j = 0; j < 5; ++j) {
        CHECK(ms.cooperation_frequency[static_cast<std::size_t>(i * 5 + j)] == (i == j ? 1.0 : 0.0));
      }
    }
  }
}

TEST_CASE("merging never loses against noncooperation on paired channels") {
  CampaignConfig config = small_config(4, 4, 200);
  config.models = {{DeviationKind::merge, 4, 4}};
  const auto result = run_campaign(config);
  CHECK(result.stats.models[0].mean_sum_rate >= result.stats.mean_baseline_sum_rate);
}

TEST_CASE("outputs are written and reproducible") {
  const auto dir = std::filesystem::temp_directory_path() / "coalition_campaign_test";
  std::filesystem::remove_all(dir);
  const auto config = small_config(5, 3, 4);
  write_campaign_outputs(config, run_campaign(config), dir / "a");
  write_campaign_outputs(config, run_campaign(config), dir / "b");
  for (const auto* name : {"results.csv", "aggregate.csv", "diagnostics.csv", "deployment.csv",
                           "coop_matrix_merge_2.csv", "coop_matrix_merge_split_2.csv",
                           "coop_matrix_individual_0.csv"}) {
    CHECK_MESSAGE(std::filesystem::exists(dir / "a" / name), name);
    CHECK(slurp(dir / "a" / name) == slurp(dir / "b" / name));
  }
  const auto results = slurp(dir / "a" / "results.csv");
  CHECK(results.starts_with("model,q,realization,sum_rate_bps_hz,n_cooperating,n_coalitions,steps,evals\n"));
  CHECK(std::count(results.begin(), results.end(), '\n') == 1 + 3 * 4);
  CHECK(slurp(dir / "a" / "aggregate.csv")
            .starts_with("model,q,mean_sum_rate,se_sum_rate,mean_cooperating,mean_coalitions\n"));
  std::filesystem::remove_all(dir);
}
