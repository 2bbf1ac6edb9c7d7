#pragma once

// Monte Carlo campaigns over random MISO interference channels: configuration,
// per-realization formation runs, aggregation and CSV output.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "coalition/deviation.hpp"
#include "coalition/engine.hpp"
#include "coalition/misoic.hpp"

namespace coalition {

struct CampaignConfig {
  miso::NetworkConfig network;  // network.seed is the master seed
  int realizations = 1000;
  std::vector<DeviationModel> models;
  std::filesystem::path out_dir = "results";
  /// Worker threads for the realization loop; 0 uses the OpenMP default.
  int threads = 0;

  /// Throws ConfigError.
  void validate() const;
};

/// Parses the "key = value" format. Lines starting with '#' are comments.
/// `model = kind[,q]` may repeat; a model without q expands over the `q` list.
/// Relative paths resolve against `base_dir`. Errors name the source, line and
/// key.
CampaignConfig parse_campaign_config(std::istream& in, const std::string& source,
                                     const std::filesystem::path& base_dir = {});
CampaignConfig load_campaign_config(const std::filesystem::path& path);

/// q as written to CSV: 0 for individual deviation.
int reported_q(const DeviationModel& model);

struct ModelOutcome {
  CoalitionStructure stable;
  double sum_rate = 0.0;
  int n_cooperating = 0;  // links in coalitions of two or more
  int n_coalitions = 0;
  std::uint64_t steps = 0;
  std::uint64_t evals = 0;
  bool unrestricted_stable = false;
  std::vector<TraceStep> trace;  // filled only when traces are requested
};

struct RealizationRecord {
  std::uint64_t index = 0;
  /// Sum rate with every link alone.
  double baseline_sum_rate = 0.0;
  /// One entry per configured model, in configuration order.
  std::vector<ModelOutcome> outcomes;
};

struct ModelStatistics {
  DeviationModel model;
  double mean_sum_rate = 0.0;
  double se_sum_rate = 0.0;
  double mean_link_rate = 0.0;
  double mean_cooperating = 0.0;
  double mean_coalitions = 0.0;
  double mean_steps = 0.0;
  double mean_evals = 0.0;
  double unrestricted_stable_fraction = 0.0;
  /// n x n row-major; fraction of realizations in which i and j share a
  /// coalition.
  std::vector<double> cooperation_frequency;
};

struct RunStatistics {
  int n_links = 0;
  std::size_t realizations = 0;
  double mean_baseline_sum_rate = 0.0;
  double se_baseline_sum_rate = 0.0;
  std::vector<ModelStatistics> models;
};

/// Means, standard errors (sample std / sqrt(R)) and cooperation matrices.
/// Folds records in the given order. Throws DomainError on empty input.
RunStatistics summarize(std::span<const RealizationRecord> records, std::span<const DeviationModel> models,
                        int n_links);

struct CampaignResult {
  std::vector<miso::Point> transmitters;
  std::vector<RealizationRecord> records;
  RunStatistics stats;
};

/// Runs every model on realization `index` (the same channel for all models)
/// from the all-singleton structure and re-checks each accepted step.
RealizationRecord simulate_realization(const CampaignConfig& config, std::span<const miso::Point> transmitters,
                                       std::uint64_t index, bool keep_traces = false);

/// Realizations in parallel over OpenMP threads.
CampaignResult run_campaign(const CampaignConfig& config, bool keep_traces = false);

/// Single-threaded reference; produces the same result as run_campaign.
CampaignResult run_campaign_serial(const CampaignConfig& config, bool keep_traces = false);

/// Writes results.csv, aggregate.csv, diagnostics.csv, deployment.csv and one
/// coop_matrix_<model>_<q>.csv per model into `dir`. Each file is written to a
/// temporary name and renamed into place.
void write_campaign_outputs(const CampaignConfig& config, const CampaignResult& result,
                            const std::filesystem::path& dir);

void write_results_csv(std::ostream& out, const CampaignConfig& config, std::span<const RealizationRecord> records);
void write_aggregate_csv(std::ostream& out, const RunStatistics& stats);

}  // namespace coalition
