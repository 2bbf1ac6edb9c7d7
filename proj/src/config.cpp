#include <charconv>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <optional>

#include "coalition/campaign.hpp"
#include "coalition/errors.hpp"

namespace coalition {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const auto comma = std::min(s.find(',', pos), s.size());
    out.push_back(trim(s.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return out;
}

template <typename T>
T parse_number(std::string_view text) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw std::invalid_argument("expected a number, got '" + std::string(text) + "'");
  }
  return value;
}

bool parse_bool(std::string_view text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw std::invalid_argument("expected true/false, got '" + std::string(text) + "'");
}

struct ModelLine {
  DeviationKind kind;
  std::optional<int> q;
};

}  // namespace

int reported_q(const DeviationModel& model) { return model.kind == DeviationKind::individual ? 0 : model.q; }

void CampaignConfig::validate() const {
  network.validate();
  if (realizations < 1) throw ConfigError("realizations must be at least 1");
  if (models.empty()) throw ConfigError("at least one model is required");
  if (threads < 0) throw ConfigError("threads must be non-negative");
  for (const auto& m : models) {
    try {
      m.validate();
    } catch (const DomainError& e) {
      throw ConfigError("model " + m.label() + ": " + e.what());
    }
  }
}

CampaignConfig parse_campaign_config(std::istream& in, const std::string& source,
                                     const std::filesystem::path& base_dir) {
  CampaignConfig config;
  auto& net = config.network;
  std::vector<ModelLine> model_lines;
  std::vector<int> q_sweep{2};
  std::optional<int> max_size;
  std::filesystem::path coordinates;

  using Setter = std::function<void(std::string_view)>;
  const std::map<std::string, Setter, std::less<>> setters{
      {"n_links", [&](auto v) { net.n_links = parse_number<int>(v); }},
      {"antennas", [&](auto v) { net.antennas = parse_number<int>(v); }},
      {"power_dbm", [&](auto v) { net.power_dbm = parse_number<double>(v); }},
      {"pathloss_intercept_db", [&](auto v) { net.pathloss_intercept_db = parse_number<double>(v); }},
      {"pathloss_slope_db_per_decade", [&](auto v) { net.pathloss_slope_db_per_decade = parse_number<double>(v); }},
      {"shadow_sigma_db", [&](auto v) { net.shadow_sigma_db = parse_number<double>(v); }},
      {"noise_psd_dbm_hz", [&](auto v) { net.noise_psd_dbm_hz = parse_number<double>(v); }},
      {"noise_figure_db", [&](auto v) { net.noise_figure_db = parse_number<double>(v); }},
      {"bandwidth_hz", [&](auto v) { net.bandwidth_hz = parse_number<double>(v); }},
      {"max_rx_distance_m", [&](auto v) { net.max_rx_distance_m = parse_number<double>(v); }},
      {"min_rx_distance_m", [&](auto v) { net.min_rx_distance_m = parse_number<double>(v); }},
      {"area_side_m", [&](auto v) { net.area_side_m = parse_number<double>(v); }},
      {"tx_coordinates", [&](auto v) { coordinates = std::filesystem::path(std::string(v)); }},
      {"zero_cross_channels", [&](auto v) { net.zero_cross_channels = parse_bool(v); }},
      {"seed", [&](auto v) { net.seed = parse_number<std::uint64_t>(v); }},
      {"realizations", [&](auto v) { config.realizations = parse_number<int>(v); }},
      {"threads", [&](auto v) { config.threads = parse_number<int>(v); }},
      {"out", [&](auto v) { config.out_dir = std::filesystem::path(std::string(v)); }},
      {"max_coalition_size",
       [&](auto v) {
         max_size = v == "unlimited" ? kUnlimitedCoalitionSize : parse_number<int>(v);
       }},
      {"q",
       [&](auto v) {
         q_sweep.clear();
         for (auto item : split_list(v)) q_sweep.push_back(parse_number<int>(item));
       }},
      {"model",
       [&](auto v) {
         const auto items = split_list(v);
         ModelLine line{parse_deviation_kind(items.front()), std::nullopt};
         if (items.size() > 2) throw std::invalid_argument("expected 'kind' or 'kind,q'");
         if (items.size() == 2) line.q = parse_number<int>(items[1]);
         model_lines.push_back(line);
       }},
  };

  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    const std::string where = source + ":" + std::to_string(line_no);
    if (eq == std::string_view::npos) throw ConfigError(where + ": expected 'key = value'");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError(where + ": unknown key '" + std::string(key) + "'");
    try {
      it->second(value);
    } catch (const std::exception& e) {
      throw ConfigError(where + ": key '" + std::string(key) + "': " + e.what());
    }
  }

  if (!coordinates.empty()) {
    net.tx_positions = miso::load_coordinates(coordinates.is_absolute() ? coordinates : base_dir / coordinates);
  }
  const int size_cap = max_size.value_or(net.antennas);
  for (const auto& line : model_lines) {
    if (line.kind == DeviationKind::individual) {
      config.models.push_back({line.kind, 0, size_cap});
    } else if (line.q) {
      config.models.push_back({line.kind, *line.q, size_cap});
    } else {
      for (int q : q_sweep) config.models.push_back({line.kind, q, size_cap});
    }
  }
  try {
    config.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(source + ": " + e.what());
  }
  return config;
}

CampaignConfig load_campaign_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  return parse_campaign_config(in, path.string(), path.parent_path());
}

}  // namespace coalition
