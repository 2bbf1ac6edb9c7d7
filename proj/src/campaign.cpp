#include "coalition/campaign.hpp"

#include <cmath>
#include <exception>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>

#include <fmt/format.h>
#include <omp.h>

#include "coalition/errors.hpp"

namespace coalition {

namespace {

double sum(const UtilityVector& u) { return std::accumulate(u.begin(), u.end(), 0.0); }

int cooperating_links(const CoalitionStructure& cs) {
  int count = 0;
  for (const Coalition& b : cs.blocks()) {
    if (b.size() >= 2) count += b.size();
  }
  return count;
}

void verify_trace(const FormationResult& run, const DeviationModel& model, std::uint64_t index) {
  for (const TraceStep& step : run.trace) {
    if (!deviation_preferred(step.deviation, step.after, step.before)) {
      throw InvariantViolation(fmt::format("realization {} model {}: accepted step {} is not preferred", index,
                                           model.label(), step.index));
    }
  }
}

struct Accumulator {
  double sum = 0.0;
  double sum_sq = 0.0;

  void add(double x) {
    sum += x;
    sum_sq += x * x;
  }
  double mean(std::size_t r) const { return sum / static_cast<double>(r); }
  // Sample standard deviation over sqrt(R); zero for a single record.
  double standard_error(std::size_t r) const {
    if (r < 2) return 0.0;
    const double m = mean(r);
    const double var = std::max(0.0, (sum_sq - static_cast<double>(r) * m * m) / static_cast<double>(r - 1));
    return std::sqrt(var / static_cast<double>(r));
  }
};

void write_atomically(const std::filesystem::path& path, const std::string& contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

CampaignResult collect(const CampaignConfig& config, std::vector<miso::Point> tx,
                       std::vector<RealizationRecord> records) {
  CampaignResult result;
  result.stats = summarize(records, config.models, config.network.n_links);
  result.transmitters = std::move(tx);
  result.records = std::move(records);
  return result;
}

}  // namespace

RealizationRecord simulate_realization(const CampaignConfig& config, std::span<const miso::Point> transmitters,
                                       std::uint64_t index, bool keep_traces) {
  const auto& net = config.network;
  const auto chan = miso::generate_realization(net, transmitters, index);
  const miso::MisoOracle oracle(chan, net);
  const auto init = CoalitionStructure::singletons(net.n_links);

  RealizationRecord record;
  record.index = index;
  record.baseline_sum_rate = sum(oracle.evaluate(init));
  record.outcomes.reserve(config.models.size());
  for (const DeviationModel& model : config.models) {
    auto run = run_formation(oracle, model, init);
    verify_trace(run, model, index);
    ModelOutcome out;
    out.sum_rate = sum(run.state.utilities);
    out.n_cooperating = cooperating_links(run.stable());
    out.n_coalitions = static_cast<int>(run.stable().block_count());
    out.steps = run.state.step_count;
    out.evals = run.state.candidate_evals;
    out.unrestricted_stable = run.unrestricted_stable;
    out.stable = run.stable();
    if (keep_traces) out.trace = std::move(run.trace);
    record.outcomes.push_back(std::move(out));
  }
  return record;
}

CampaignResult run_campaign(const CampaignConfig& config, bool keep_traces) {
  config.validate();
  auto tx = miso::deploy_transmitters(config.network);
  const auto count = static_cast<std::int64_t>(config.realizations);
  std::vector<RealizationRecord> records(static_cast<std::size_t>(count));
  std::exception_ptr first_error;
  std::int64_t first_error_index = count;
  const int threads = config.threads > 0 ? config.threads : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::int64_t r = 0; r < count; ++r) {
    try {
      records[static_cast<std::size_t>(r)] = simulate_realization(config, tx, static_cast<std::uint64_t>(r), keep_traces);
    } catch (...) {
#pragma omp critical(campaign_error)
      {
        if (r < first_error_index) {
          first_error_index = r;
          first_error = std::current_exception();
        }
      }
    }
  }
  if (first_error) std::rethrow_exception(first_error);
  return collect(config, std::move(tx), std::move(records));
}

CampaignResult run_campaign_serial(const CampaignConfig& config, bool keep_traces) {
  config.validate();
  auto tx = miso::deploy_transmitters(config.network);
  std::vector<RealizationRecord> records;
  records.reserve(static_cast<std::size_t>(config.realizations));
  for (int r = 0; r < config.realizations; ++r) {
    records.push_back(simulate_realization(config, tx, static_cast<std::uint64_t>(r), keep_traces));
  }
  return collect(config, std::move(tx), std::move(records));
}

RunStatistics summarize(std::span<const RealizationRecord> records, std::span<const DeviationModel> models,
                        int n_links) {
  if (records.empty()) throw DomainError("cannot summarize zero realizations");
  const std::size_t r = records.size();
  const auto n = static_cast<std::size_t>(n_links);

  RunStatistics stats;
  stats.n_links = n_links;
  stats.realizations = r;
  Accumulator baseline;
  for (const auto& rec : records) baseline.add(rec.baseline_sum_rate);
  stats.mean_baseline_sum_rate = baseline.mean(r);
  stats.se_baseline_sum_rate = baseline.standard_error(r);

  for (std::size_t m = 0; m < models.size(); ++m) {
    Accumulator sum_rate, cooperating, coalitions, steps, evals;
    double unrestricted = 0.0;
    std::vector<double> together(n * n, 0.0);
    for (const auto& rec : records) {
      if (rec.outcomes.size() != models.size()) throw DomainError("record does not match the model list");
      const ModelOutcome& o = rec.outcomes[m];
      if (o.stable.player_count() != n_links) throw DomainError("record does not match the link count");
      sum_rate.add(o.sum_rate);
      cooperating.add(o.n_cooperating);
      coalitions.add(o.n_coalitions);
      steps.add(static_cast<double>(o.steps));
      evals.add(static_cast<double>(o.evals));
      unrestricted += o.unrestricted_stable ? 1.0 : 0.0;
      for (const Coalition& b : o.stable.blocks()) {
        b.for_each([&](Player i) {
          b.for_each([&](Player j) { together[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)] += 1.0; });
        });
      }
    }
    ModelStatistics ms;
    ms.model = models[m];
    ms.mean_sum_rate = sum_rate.mean(r);
    ms.se_sum_rate = sum_rate.standard_error(r);
    ms.mean_link_rate = ms.mean_sum_rate / static_cast<double>(n_links);
    ms.mean_cooperating = cooperating.mean(r);
    ms.mean_coalitions = coalitions.mean(r);
    ms.mean_steps = steps.mean(r);
    ms.mean_evals = evals.mean(r);
    ms.unrestricted_stable_fraction = unrestricted / static_cast<double>(r);
    for (double& f : together) f /= static_cast<double>(r);
    ms.cooperation_frequency = std::move(together);
    stats.models.push_back(std::move(ms));
  }
  return stats;
}

void write_results_csv(std::ostream& out, const CampaignConfig& config, std::span<const RealizationRecord> records) {
  out << "model,q,realization,sum_rate_bps_hz,n_cooperating,n_coalitions,steps,evals\n";
  for (std::size_t m = 0; m < config.models.size(); ++m) {
    const auto& model = config.models[m];
    for (const auto& rec : records) {
      const auto& o = rec.outcomes[m];
      out << fmt::format("{},{},{},{:.12g},{},{},{},{}\n", to_string(model.kind), reported_q(model), rec.index,
                         o.sum_rate, o.n_cooperating, o.n_coalitions, o.steps, o.evals);
    }
  }
}

void write_aggregate_csv(std::ostream& out, const RunStatistics& stats) {
  out << "model,q,mean_sum_rate,se_sum_rate,mean_cooperating,mean_coalitions\n";
  for (const auto& ms : stats.models) {
    out << fmt::format("{},{},{:.12g},{:.12g},{:.12g},{:.12g}\n", to_string(ms.model.kind), reported_q(ms.model),
                       ms.mean_sum_rate, ms.se_sum_rate, ms.mean_cooperating, ms.mean_coalitions);
  }
}

void write_campaign_outputs(const CampaignConfig& config, const CampaignResult& result,
                            const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto& stats = result.stats;

  std::ostringstream results;
  write_results_csv(results, config, result.records);

  std::ostringstream aggregate;
  write_aggregate_csv(aggregate, stats);

  std::ostringstream diagnostics;
  diagnostics << "model,q,mean_link_rate,mean_steps,mean_evals,unrestricted_stable_fraction,"
                 "mean_baseline_sum_rate\n";
  for (const auto& ms : stats.models) {
    diagnostics << fmt::format("{},{},{:.12g},{:.12g},{:.12g},{:.12g},{:.12g}\n", to_string(ms.model.kind),
                               reported_q(ms.model), ms.mean_link_rate, ms.mean_steps, ms.mean_evals,
                               ms.unrestricted_stable_fraction, stats.mean_baseline_sum_rate);
  }

  std::ostringstream deployment;
  deployment << "link,x_m,y_m\n";
  for (std::size_t i = 0; i < result.transmitters.size(); ++i) {
    deployment << fmt::format("{},{:.12g},{:.12g}\n", i, result.transmitters[i].x, result.transmitters[i].y);
  }

  std::vector<std::pair<std::filesystem::path, std::string>> files{
      {dir / "results.csv", results.str()},
      {dir / "aggregate.csv", aggregate.str()},
      {dir / "diagnostics.csv", diagnostics.str()},
      {dir / "deployment.csv", deployment.str()},
  };
  const auto n = static_cast<std::size_t>(stats.n_links);
  for (const auto& ms : stats.models) {
    std::ostringstream matrix;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (j > 0) matrix << ',';
        matrix << fmt::format("{:.12g}", ms.cooperation_frequency[i * n + j]);
      }
      matrix << '\n';
    }
    files.emplace_back(dir / fmt::format("coop_matrix_{}_{}.csv", to_string(ms.model.kind), reported_q(ms.model)),
                       matrix.str());
  }
  for (const auto& [path, contents] : files) write_atomically(path, contents);
}

}  // namespace coalition
