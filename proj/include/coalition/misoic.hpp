#pragma once

// MISO interference channel: geometry, fading, zero-forcing beamforming and
// per-link achievable rates. Provides the utility oracle for the simulator.

#include <complex>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <random>
#include <span>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "coalition/engine.hpp"
#include "coalition/partition.hpp"
#include "coalition/preference.hpp"

namespace coalition::miso {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

double distance(Point a, Point b);

struct NetworkConfig {
  int n_links = 17;
  int antennas = 8;
  double power_dbm = 46.0;
  double pathloss_intercept_db = 15.3;
  // Path loss is intercept + slope * log10(d / 1 m).
  double pathloss_slope_db_per_decade = 37.6;
  double shadow_sigma_db = 8.0;
  double noise_psd_dbm_hz = -174.0;
  double noise_figure_db = 9.0;
  double bandwidth_hz = 1e7;
  double max_rx_distance_m = 200.0;
  double min_rx_distance_m = 10.0;
  /// Side of the square transmitters are dropped in.
  double area_side_m = 1000.0;
  /// Fixed transmitter positions; when empty they are drawn from `seed`.
  std::vector<Point> tx_positions;
  std::uint64_t seed = 1;
  /// Test hook: every cross channel h[j][i], j != i, is zero.
  bool zero_cross_channels = false;

  /// Throws ConfigError on an invalid value.
  void validate() const;
  double power_watts() const;
};

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

/// Thermal noise plus noise figure over the bandwidth, in watts.
double noise_power(const NetworkConfig& config);

/// Independent generator for stream `stream` (e.g. a realization index) under
/// `seed`. `domain` separates unrelated uses of the same seed.
std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t domain, std::uint64_t stream);

inline constexpr std::uint64_t kDeploymentDomain = 1;
inline constexpr std::uint64_t kRealizationDomain = 2;

/// Transmitter positions: config.tx_positions if given, otherwise uniform in
/// the deployment square, drawn once from the seed.
std::vector<Point> deploy_transmitters(const NetworkConfig& config);

/// One "x,y" pair per line, meters. Blank lines and '#' comments are skipped.
std::vector<Point> read_coordinates(std::istream& in);
std::vector<Point> load_coordinates(const std::filesystem::path& path);

struct ChannelRealization {
  int n = 0;
  int t = 0;
  /// h[tx * n + rx]: channel from transmitter tx to receiver rx.
  std::vector<Eigen::VectorXcd> h;
  /// Large-scale gain (path loss and shadowing) per (tx, rx), dB.
  std::vector<double> gain_db;
  std::vector<Point> rx_positions;

  const Eigen::VectorXcd& channel(int tx, int rx) const {
    return h[static_cast<std::size_t>(tx) * static_cast<std::size_t>(n) + static_cast<std::size_t>(rx)];
  }
};

/// Draws receivers around `transmitters`, large-scale gains and Rayleigh
/// fading from `rng`.
ChannelRealization generate_realization(const NetworkConfig& config, std::span<const Point> transmitters,
                                        std::mt19937_64& rng);

/// Realization `index` on its own substream of config.seed.
ChannelRealization generate_realization(const NetworkConfig& config, std::span<const Point> transmitters,
                                        std::uint64_t index);

/// Per (tx, rx) pair: "tx,rx,gain_db,re0,im0,re1,im1,...".
void write_channel_dump(std::ostream& out, const ChannelRealization& chan);

/// Relative threshold below which the projected own channel counts as zero.
inline constexpr double kNullTolerance = 1e-12;

/// Transmit vector maximizing |h_own^H w| subject to ||w||^2 <= p and
/// h_c^H w = 0 for every cross channel. With no cross channels this is
/// maximum ratio transmission. Returns zero when h_own lies in the span of the
/// cross channels. Throws DomainError for a zero own channel or p <= 0.
Eigen::VectorXcd zf_beamformer(const Eigen::VectorXcd& h_own, std::span<const Eigen::VectorXcd> h_cross, double p);

/// Beamformer of every transmitter under cs. Throws DomainError if a block is
/// larger than the antenna count.
std::vector<Eigen::VectorXcd> compute_beamformers(const CoalitionStructure& cs, const ChannelRealization& chan,
                                                  const NetworkConfig& config);

/// Achievable rate of every link (bits/s/Hz) under single-user decoding, with
/// interference from transmitters outside the link's coalition.
UtilityVector evaluate_rates(const CoalitionStructure& cs, const ChannelRealization& chan,
                             const NetworkConfig& config);

/// Rate oracle over one realization. Memoizes each transmitter's received
/// powers per coalition, so it is not safe for concurrent use; create one per
/// thread. Results equal evaluate_rates bit for bit.
class MisoOracle final : public UtilityOracle {
 public:
  MisoOracle(const ChannelRealization& chan, const NetworkConfig& config);

  int player_count() const override { return chan_.n; }
  UtilityVector evaluate(const CoalitionStructure& cs) const override;

 private:
  const std::vector<double>& received_power(Player tx, Coalition c) const;

  const ChannelRealization& chan_;
  double power_;
  double noise_;
  mutable std::vector<std::unordered_map<Coalition, std::vector<double>, CoalitionHash>> cache_;
};

}  // namespace coalition::miso
