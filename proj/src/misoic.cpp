#include "coalition/misoic.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "coalition/errors.hpp"

namespace coalition::miso {

namespace {

double uniform01(std::mt19937_64& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

void check_block_sizes(const CoalitionStructure& cs, int antennas) {
  for (const Coalition& b : cs.blocks()) {
    if (b.size() > antennas) {
      throw DomainError("coalition {" + b.to_string() + "} has " + std::to_string(b.size()) +
                        " members but transmitters have " + std::to_string(antennas) + " antennas");
    }
  }
}

Eigen::VectorXcd coalition_beamformer(Player tx, Coalition c, const ChannelRealization& chan, double power) {
  std::vector<Eigen::VectorXcd> cross;
  cross.reserve(static_cast<std::size_t>(c.size()));
  c.for_each([&](Player rx) {
    if (rx != tx) cross.push_back(chan.channel(tx, rx));
  });
  return zf_beamformer(chan.channel(tx, tx), cross, power);
}

std::vector<double> received_powers(Player tx, const Eigen::VectorXcd& w, const ChannelRealization& chan) {
  std::vector<double> out(static_cast<std::size_t>(chan.n));
  for (Player rx = 0; rx < chan.n; ++rx) out[static_cast<std::size_t>(rx)] = std::norm(chan.channel(tx, rx).dot(w));
  return out;
}

// rx_power(j) returns the powers transmitter j delivers to every receiver
// under its coalition in cs.
template <typename RxPower>
UtilityVector rates_from_received(const CoalitionStructure& cs, int n, double noise, RxPower&& rx_power) {
  std::vector<const std::vector<double>*> delivered(static_cast<std::size_t>(n));
  for (Player j = 0; j < n; ++j) delivered[static_cast<std::size_t>(j)] = &rx_power(j);
  UtilityVector rates(static_cast<std::size_t>(n));
  for (Player i = 0; i < n; ++i) {
    const Coalition own = cs.coalition_of(i);
    const auto ui = static_cast<std::size_t>(i);
    double interference = 0.0;
    for (Player j = 0; j < n; ++j) {
      if (!own.contains(j)) interference += (*delivered[static_cast<std::size_t>(j)])[ui];
    }
    rates[ui] = std::log2(1.0 + (*delivered[ui])[ui] / (interference + noise));
  }
  return rates;
}

}  // namespace

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

void NetworkConfig::validate() const {
  auto fail = [](const std::string& what) { throw ConfigError(what); };
  if (n_links < 1 || n_links > kMaxPlayers) fail("n_links must be in [1, 64]");
  if (antennas < 1) fail("antennas must be at least 1");
  if (!std::isfinite(power_dbm)) fail("power_dbm must be finite");
  if (!(bandwidth_hz > 0.0)) fail("bandwidth_hz must be positive");
  if (!(shadow_sigma_db >= 0.0)) fail("shadow_sigma_db must be non-negative");
  if (!(min_rx_distance_m > 0.0)) fail("min_rx_distance_m must be positive");
  if (!(max_rx_distance_m >= min_rx_distance_m)) fail("max_rx_distance_m must be at least min_rx_distance_m");
  if (!(area_side_m > 0.0)) fail("area_side_m must be positive");
  if (!tx_positions.empty() && static_cast<int>(tx_positions.size()) != n_links) {
    fail("tx coordinates give " + std::to_string(tx_positions.size()) + " positions for " +
         std::to_string(n_links) + " links");
  }
}

double NetworkConfig::power_watts() const { return dbm_to_watts(power_dbm); }

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

double noise_power(const NetworkConfig& config) {
  return dbm_to_watts(config.noise_psd_dbm_hz + 10.0 * std::log10(config.bandwidth_hz) + config.noise_figure_db);
}

std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t domain, std::uint64_t stream) {
  auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffU); };
  auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
  std::seed_seq seq{lo(seed), hi(seed), lo(domain), hi(domain), lo(stream), hi(stream)};
  return std::mt19937_64(seq);
}

std::vector<Point> deploy_transmitters(const NetworkConfig& config) {
  if (!config.tx_positions.empty()) return config.tx_positions;
  auto rng = make_stream(config.seed, kDeploymentDomain, 0);
  std::vector<Point> out(static_cast<std::size_t>(config.n_links));
  for (Point& p : out) {
    p.x = config.area_side_m * uniform01(rng);
    p.y = config.area_side_m * uniform01(rng);
  }
  return out;
}

std::vector<Point> read_coordinates(std::istream& in) {
  std::vector<Point> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto comma = line.find(',');
    Point p;
    try {
      if (comma == std::string::npos) throw std::invalid_argument("missing comma");
      std::size_t used = 0;
      const std::string xs = line.substr(0, comma);
      const std::string ys = line.substr(comma + 1);
      p.x = std::stod(xs, &used);
      if (xs.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument("trailing text");
      p.y = std::stod(ys, &used);
      if (ys.find_first_not_of(" \t\r", used) != std::string::npos) throw std::invalid_argument("trailing text");
    } catch (const std::exception&) {
      throw ConfigError("coordinates line " + std::to_string(line_no) + ": expected \"x,y\", got \"" + line + "\"");
    }
    out.push_back(p);
  }
  return out;
}

std::vector<Point> load_coordinates(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open coordinates file " + path.string());
  return read_coordinates(in);
}

ChannelRealization generate_realization(const NetworkConfig& config, std::span<const Point> transmitters,
                                        std::mt19937_64& rng) {
  const int n = config.n_links;
  const int t = config.antennas;
  if (static_cast<int>(transmitters.size()) != n) throw DomainError("transmitter count does not match n_links");

  ChannelRealization chan;
  chan.n = n;
  chan.t = t;
  chan.rx_positions.resize(static_cast<std::size_t>(n));
  // Uniform over the annulus area between the minimum and maximum distance.
  const double r2_min = config.min_rx_distance_m * config.min_rx_distance_m;
  const double r2_max = config.max_rx_distance_m * config.max_rx_distance_m;
  for (Player i = 0; i < n; ++i) {
    const double r = std::sqrt(r2_min + (r2_max - r2_min) * uniform01(rng));
    const double phi = 2.0 * M_PI * uniform01(rng);
    const Point tx = transmitters[static_cast<std::size_t>(i)];
    chan.rx_positions[static_cast<std::size_t>(i)] = {tx.x + r * std::cos(phi), tx.y + r * std::sin(phi)};
  }

  std::normal_distribution<double> shadow(0.0, 1.0);
  std::normal_distribution<double> fading(0.0, std::sqrt(0.5));
  const auto pairs = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  chan.h.assign(pairs, Eigen::VectorXcd::Zero(t));
  chan.gain_db.assign(pairs, 0.0);
  for (Player tx = 0; tx < n; ++tx) {
    for (Player rx = 0; rx < n; ++rx) {
      const std::size_t k = static_cast<std::size_t>(tx) * static_cast<std::size_t>(n) + static_cast<std::size_t>(rx);
      const double d = std::max(config.min_rx_distance_m,
                                distance(transmitters[static_cast<std::size_t>(tx)],
                                         chan.rx_positions[static_cast<std::size_t>(rx)]));
      const double gain_db = -(config.pathloss_intercept_db + config.pathloss_slope_db_per_decade * std::log10(d)) +
                             config.shadow_sigma_db * shadow(rng);
      const double amplitude = std::sqrt(std::pow(10.0, gain_db / 10.0));
      Eigen::VectorXcd& h = chan.h[k];
      for (int a = 0; a < t; ++a) {
        const double re = fading(rng);
        const double im = fading(rng);
        h[a] = amplitude * std::complex<double>(re, im);
      }
      chan.gain_db[k] = gain_db;
      if (config.zero_cross_channels && tx != rx) h.setZero();
    }
  }
  return chan;
}

ChannelRealization generate_realization(const NetworkConfig& config, std::span<const Point> transmitters,
                                        std::uint64_t index) {
  auto rng = make_stream(config.seed, kRealizationDomain, index);
  return generate_realization(config, transmitters, rng);
}

void write_channel_dump(std::ostream& out, const ChannelRealization& chan) {
  out << "tx,rx,gain_db";
  for (int a = 0; a < chan.t; ++a) out << ",re" << a << ",im" << a;
  out << '\n';
  for (Player tx = 0; tx < chan.n; ++tx) {
    for (Player rx = 0; rx < chan.n; ++rx) {
      const auto k = static_cast<std::size_t>(tx) * static_cast<std::size_t>(chan.n) + static_cast<std::size_t>(rx);
      out << fmt::format("{},{},{:.17g}", tx, rx, chan.gain_db[k]);
      for (const auto& z : chan.h[k]) out << fmt::format(",{:.17g},{:.17g}", z.real(), z.imag());
      out << '\n';
    }
  }
}

Eigen::VectorXcd zf_beamformer(const Eigen::VectorXcd& h_own, std::span<const Eigen::VectorXcd> h_cross, double p) {
  if (!(p > 0.0)) throw DomainError("transmit power must be positive");
  const double own_norm = h_own.norm();
  if (own_norm == 0.0) throw DomainError("own channel is zero");
  const Eigen::Index t = h_own.size();

  Eigen::VectorXcd v = h_own;
  if (!h_cross.empty()) {
    Eigen::MatrixXcd cross(t, static_cast<Eigen::Index>(h_cross.size()));
    for (std::size_t c = 0; c < h_cross.size(); ++c) {
      if (h_cross[c].size() != t) throw DomainError("cross channel dimension differs from own channel");
      cross.col(static_cast<Eigen::Index>(c)) = h_cross[c];
    }
    const Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(cross);
    const Eigen::Index rank = qr.rank();
    if (rank > 0) {
      const Eigen::MatrixXcd basis = qr.householderQ() * Eigen::MatrixXcd::Identity(t, rank);
      // Second pass removes what rounding left in the cross-channel span.
      for (int pass = 0; pass < 2; ++pass) v -= basis * (basis.adjoint() * v);
    }
  }
  const double projected = v.norm();
  if (projected < kNullTolerance * own_norm) return Eigen::VectorXcd::Zero(t);
  return (std::sqrt(p) / projected) * v;
}

std::vector<Eigen::VectorXcd> compute_beamformers(const CoalitionStructure& cs, const ChannelRealization& chan,
                                                  const NetworkConfig& config) {
  check_block_sizes(cs, chan.t);
  std::vector<Eigen::VectorXcd> out;
  out.reserve(static_cast<std::size_t>(chan.n));
  for (Player i = 0; i < chan.n; ++i) out.push_back(coalition_beamformer(i, cs.coalition_of(i), chan, config.power_watts()));
  return out;
}

UtilityVector evaluate_rates(const CoalitionStructure& cs, const ChannelRealization& chan,
                             const NetworkConfig& config) {
  if (cs.player_count() != chan.n) throw DomainError("structure and channel disagree on the number of links");
  const auto beams = compute_beamformers(cs, chan, config);
  std::vector<std::vector<double>> delivered;
  delivered.reserve(beams.size());
  for (Player j = 0; j < chan.n; ++j) delivered.push_back(received_powers(j, beams[static_cast<std::size_t>(j)], chan));
  return rates_from_received(cs, chan.n, noise_power(config),
                             [&](Player j) -> const std::vector<double>& { return delivered[static_cast<std::size_t>(j)]; });
}

MisoOracle::MisoOracle(const ChannelRealization& chan, const NetworkConfig& config)
    : chan_(chan), power_(config.power_watts()), noise_(noise_power(config)), cache_(static_cast<std::size_t>(chan.n)) {}

const std::vector<double>& MisoOracle::received_power(Player tx, Coalition c) const {
  auto& slot = cache_[static_cast<std::size_t>(tx)];
  auto it = slot.find(c);
  if (it == slot.end()) {
    it = slot.emplace(c, received_powers(tx, coalition_beamformer(tx, c, chan_, power_), chan_)).first;
  }
  return it->second;
}

UtilityVector MisoOracle::evaluate(const CoalitionStructure& cs) const {
  if (cs.player_count() != chan_.n) throw DomainError("structure and channel disagree on the number of links");
  check_block_sizes(cs, chan_.t);
  return rates_from_received(cs, chan_.n, noise_,
                             [&](Player j) -> const std::vector<double>& { return received_power(j, cs.coalition_of(j)); });
}

}  // namespace coalition::miso
