#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "stin/channel.hpp"
#include "stin/errors.hpp"
#include "stin/geometry.hpp"
#include "stin/spectrum.hpp"

namespace stin {

enum class Framework { ntn_dl_tn_dl, ntn_dl_tn_ul, ntn_ul_tn_dl, ntn_ul_tn_ul };

inline bool ntn_downlink(Framework f) {
  return f == Framework::ntn_dl_tn_dl || f == Framework::ntn_dl_tn_ul;
}
inline bool tn_downlink(Framework f) {
  return f == Framework::ntn_dl_tn_dl || f == Framework::ntn_ul_tn_dl;
}

inline std::string_view framework_token(Framework f) {
  switch (f) {
    case Framework::ntn_dl_tn_dl: return "dl-dl";
    case Framework::ntn_dl_tn_ul: return "dl-ul";
    case Framework::ntn_ul_tn_dl: return "ul-dl";
    case Framework::ntn_ul_tn_ul: return "ul-ul";
  }
  return "?";
}

inline Framework parse_framework_token(std::string_view t) {
  if (t == "dl-dl") return Framework::ntn_dl_tn_dl;
  if (t == "dl-ul") return Framework::ntn_dl_tn_ul;
  if (t == "ul-dl") return Framework::ntn_ul_tn_dl;
  if (t == "ul-ul") return Framework::ntn_ul_tn_ul;
  throw InvalidParameter("unknown framework '" + std::string(t) +
                         "' (expected dl-dl, dl-ul, ul-dl or ul-ul)");
}

/// Whose users the protection zone is centered on.
enum class PrimarySide { ntn, tn };

/// How the NTN user decides to use the shared band in S1.
enum class AccessRule { protection_zone, sss, jsss };

/// Every physical and policy parameter of one simulation. Defaults reproduce
/// the protection-zone case study.
struct ScenarioConfig {
  // region
  double region_width_km = 200.0;
  double region_height_km = 200.0;
  double anchor_lat_deg = 0.0;
  double anchor_lon_deg = 0.0;
  double earth_radius_km = kEarthRadiusKm;

  // terrestrial network
  double bs_density_per_km2 = 3e-3;
  double service_radius_km = 10.0;
  double bs_tx_power_dbm = 46.0;
  double bs_serving_gain_dbi = 10.0;
  double bs_interfering_gain_dbi = 0.0;
  double tn_pathloss_exponent = 3.5;
  double bs_activity = 1.0;
  double tn_user_tx_power_dbm = 23.0;

  // constellation
  double satellite_density_per_km2 = 1e-5;
  double altitude_km = 500.0;
  double satellite_tx_power_dbm = 50.0;
  double main_lobe_gain_dbi = 30.0;
  double side_lobe_gain_dbi = 10.0;
  double ntn_pathloss_exponent = 2.0;
  double min_elevation_deg = 10.0;

  // typical NTN user, placed relative to the typical TN user at the center
  double ntn_user_offset_km = 50.0;
  double ntn_user_bearing_deg = 90.0;
  double ntn_user_tx_power_dbm = 23.0;

  // channel
  double carrier_frequency_ghz = 2.0;
  double noise_dbm = -110.0;
  bool noise_scales_with_bandwidth = false;
  bool rayleigh_fading = false;

  // spectrum
  double total_mhz = 300.0;
  double reserved_mhz = 120.0;        ///< B_R, used by S1 and S2
  double no_sharing_ntn_mhz = 120.0;  ///< NTN share of the fixed S3 split

  // scenario
  ScenarioId scenario = ScenarioId::s1_protection_zone;
  Framework framework = Framework::ntn_dl_tn_dl;
  PrimarySide primary_side = PrimarySide::ntn;
  double protection_radius_km = 10.0;

  // access policy
  AccessRule access = AccessRule::protection_zone;
  double p_high = 1.0;
  double p_low = 0.0;
  double p_none = 0.0;
  double threshold_dbm = -100.0;
  double satellite_threshold_dbm = -100.0;
  int sensing_samples = 16;

  // metrics
  double packet_bytes = 1500.0;
  double slot_ms = 1.0;
  double circuit_power_w = 0.0;

  // run
  std::uint64_t replications = 10'000;
  std::uint64_t seed = 1;

  Region region() const {
    return {region_width_km, region_height_km,
            {deg_to_rad(anchor_lat_deg), deg_to_rad(anchor_lon_deg)}};
  }

  double orbit_radius_km() const { return earth_radius_km + altitude_km; }
  double orbital_sphere_area_km2() const {
    return 4.0 * std::numbers::pi * orbit_radius_km() * orbit_radius_km();
  }

  /// Spectrum plan actually used by the configured scenario.
  SpectrumPlan plan() const {
    const double reserved =
        scenario == ScenarioId::s3_no_sharing ? no_sharing_ntn_mhz : reserved_mhz;
    return {total_mhz, reserved, total_mhz - reserved};
  }

  RadioParams satellite_radio() const {
    return {satellite_tx_power_dbm, main_lobe_gain_dbi, side_lobe_gain_dbi, ntn_pathloss_exponent,
            carrier_frequency_ghz};
  }
  RadioParams base_station_radio() const {
    return {bs_tx_power_dbm, bs_serving_gain_dbi, bs_interfering_gain_dbi, tn_pathloss_exponent,
            carrier_frequency_ghz};
  }
  RadioParams tn_user_radio() const {
    return {tn_user_tx_power_dbm, 0.0, 0.0, tn_pathloss_exponent, carrier_frequency_ghz};
  }
  RadioParams ntn_user_radio() const {
    return {ntn_user_tx_power_dbm, 0.0, 0.0, ntn_pathloss_exponent, carrier_frequency_ghz};
  }

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

// ---------------------------------------------------------------------------
// Key registry: one entry per configuration key, shared by the text/JSON
// readers, the emitter, `--set` overrides and sweeps.

enum class KeyKind { number, integer, boolean, token };

struct ConfigKey {
  std::string name;  ///< "section.key"
  KeyKind kind;
  std::function<std::string(const ScenarioConfig&)> get;
  std::function<void(ScenarioConfig&, std::string_view)> set;
  std::function<double(const ScenarioConfig&)> get_number;  ///< numeric keys only
  std::function<void(ScenarioConfig&, double)> set_number;  ///< numeric keys only
};

/// Shortest text that parses back to exactly `v`.
inline std::string format_number(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, end);
}

inline double parse_number(std::string_view text) {
  double v = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || text.empty())
    throw InvalidParameter("expected a number, got '" + std::string(text) + "'");
  return v;
}

inline std::uint64_t parse_unsigned(std::string_view text) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
    throw InvalidParameter("expected a non-negative integer, got '" + std::string(text) + "'");
  return v;
}

inline bool parse_bool(std::string_view text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw InvalidParameter("expected true/false, got '" + std::string(text) + "'");
}

namespace detail {

template <typename Member>
ConfigKey number_key(std::string name, Member member) {
  return {std::move(name), KeyKind::number,
          [member](const ScenarioConfig& c) { return format_number(c.*member); },
          [member](ScenarioConfig& c, std::string_view t) { c.*member = parse_number(t); },
          [member](const ScenarioConfig& c) { return c.*member; },
          [member](ScenarioConfig& c, double v) { c.*member = v; }};
}

inline ConfigKey bool_key(std::string name, bool ScenarioConfig::*member) {
  return {std::move(name), KeyKind::boolean,
          [member](const ScenarioConfig& c) { return std::string(c.*member ? "true" : "false"); },
          [member](ScenarioConfig& c, std::string_view t) { c.*member = parse_bool(t); },
          nullptr, nullptr};
}

template <typename Member>
ConfigKey integer_key(std::string name, Member member) {
  using T = std::remove_reference_t<decltype(std::declval<ScenarioConfig&>().*member)>;
  return {std::move(name), KeyKind::integer,
          [member](const ScenarioConfig& c) { return std::to_string(c.*member); },
          [member](ScenarioConfig& c, std::string_view t) {
            c.*member = static_cast<T>(parse_unsigned(t));
          },
          [member](const ScenarioConfig& c) { return static_cast<double>(c.*member); },
          [member](ScenarioConfig& c, double v) {
            if (!(v >= 0.0) || v != std::floor(v))
              throw InvalidParameter("expected a non-negative integer value");
            c.*member = static_cast<T>(v);
          }};
}

}  // namespace detail

inline const std::vector<ConfigKey>& config_keys() {
  using detail::bool_key;
  using detail::integer_key;
  using detail::number_key;
  using C = ScenarioConfig;
  static const std::vector<ConfigKey> keys = [] {
    std::vector<ConfigKey> k;
    k.push_back(number_key("region.width_km", &C::region_width_km));
    k.push_back(number_key("region.height_km", &C::region_height_km));
    k.push_back(number_key("region.anchor_lat_deg", &C::anchor_lat_deg));
    k.push_back(number_key("region.anchor_lon_deg", &C::anchor_lon_deg));
    k.push_back(number_key("region.earth_radius_km", &C::earth_radius_km));

    k.push_back(number_key("terrestrial.bs_density_per_km2", &C::bs_density_per_km2));
    k.push_back(number_key("terrestrial.service_radius_km", &C::service_radius_km));
    k.push_back(number_key("terrestrial.bs_tx_power_dbm", &C::bs_tx_power_dbm));
    k.push_back(number_key("terrestrial.bs_serving_gain_dbi", &C::bs_serving_gain_dbi));
    k.push_back(number_key("terrestrial.bs_interfering_gain_dbi", &C::bs_interfering_gain_dbi));
    k.push_back(number_key("terrestrial.pathloss_exponent", &C::tn_pathloss_exponent));
    k.push_back(number_key("terrestrial.bs_activity", &C::bs_activity));
    k.push_back(number_key("terrestrial.user_tx_power_dbm", &C::tn_user_tx_power_dbm));

    k.push_back(number_key("satellite.density_per_km2", &C::satellite_density_per_km2));
    k.push_back(number_key("satellite.altitude_km", &C::altitude_km));
    k.push_back(number_key("satellite.tx_power_dbm", &C::satellite_tx_power_dbm));
    k.push_back(number_key("satellite.main_lobe_gain_dbi", &C::main_lobe_gain_dbi));
    k.push_back(number_key("satellite.side_lobe_gain_dbi", &C::side_lobe_gain_dbi));
    k.push_back(number_key("satellite.pathloss_exponent", &C::ntn_pathloss_exponent));
    k.push_back(number_key("satellite.min_elevation_deg", &C::min_elevation_deg));

    k.push_back(number_key("ntn_user.offset_km", &C::ntn_user_offset_km));
    k.push_back(number_key("ntn_user.bearing_deg", &C::ntn_user_bearing_deg));
    k.push_back(number_key("ntn_user.tx_power_dbm", &C::ntn_user_tx_power_dbm));

    k.push_back(number_key("channel.carrier_frequency_ghz", &C::carrier_frequency_ghz));
    k.push_back(number_key("channel.noise_dbm", &C::noise_dbm));
    k.push_back(bool_key("channel.noise_scales_with_bandwidth", &C::noise_scales_with_bandwidth));
    k.push_back(bool_key("channel.rayleigh_fading", &C::rayleigh_fading));

    k.push_back(number_key("spectrum.total_mhz", &C::total_mhz));
    k.push_back(number_key("spectrum.reserved_mhz", &C::reserved_mhz));
    k.push_back(number_key("spectrum.no_sharing_ntn_mhz", &C::no_sharing_ntn_mhz));

    k.push_back({"scenario.id", KeyKind::token,
                 [](const C& c) { return std::string(scenario_token(c.scenario)); },
                 [](C& c, std::string_view t) { c.scenario = parse_scenario_token(t); }, nullptr,
                 nullptr});
    k.push_back({"scenario.framework", KeyKind::token,
                 [](const C& c) { return std::string(framework_token(c.framework)); },
                 [](C& c, std::string_view t) { c.framework = parse_framework_token(t); }, nullptr,
                 nullptr});
    k.push_back({"scenario.primary_side", KeyKind::token,
                 [](const C& c) {
                   return std::string(c.primary_side == PrimarySide::ntn ? "ntn" : "tn");
                 },
                 [](C& c, std::string_view t) {
                   if (t == "ntn") c.primary_side = PrimarySide::ntn;
                   else if (t == "tn") c.primary_side = PrimarySide::tn;
                   else throw InvalidParameter("expected ntn or tn, got '" + std::string(t) + "'");
                 },
                 nullptr, nullptr});
    k.push_back(number_key("scenario.protection_radius_km", &C::protection_radius_km));

    k.push_back({"policy.access", KeyKind::token,
                 [](const C& c) {
                   switch (c.access) {
                     case AccessRule::protection_zone: return std::string("zone");
                     case AccessRule::sss: return std::string("sss");
                     case AccessRule::jsss: return std::string("jsss");
                   }
                   return std::string("?");
                 },
                 [](C& c, std::string_view t) {
                   if (t == "zone") c.access = AccessRule::protection_zone;
                   else if (t == "sss") c.access = AccessRule::sss;
                   else if (t == "jsss") c.access = AccessRule::jsss;
                   else
                     throw InvalidParameter("expected zone, sss or jsss, got '" + std::string(t) +
                                            "'");
                 },
                 nullptr, nullptr});
    k.push_back(number_key("policy.p_high", &C::p_high));
    k.push_back(number_key("policy.p_low", &C::p_low));
    k.push_back(number_key("policy.p_none", &C::p_none));
    k.push_back(number_key("policy.threshold_dbm", &C::threshold_dbm));
    k.push_back(number_key("policy.satellite_threshold_dbm", &C::satellite_threshold_dbm));
    k.push_back(integer_key("policy.sensing_samples", &C::sensing_samples));

    k.push_back(number_key("metrics.packet_bytes", &C::packet_bytes));
    k.push_back(number_key("metrics.slot_ms", &C::slot_ms));
    k.push_back(number_key("metrics.circuit_power_w", &C::circuit_power_w));

    k.push_back(integer_key("run.replications", &C::replications));
    k.push_back(integer_key("run.seed", &C::seed));
    return k;
  }();
  return keys;
}

inline const ConfigKey* find_config_key(std::string_view name) {
  for (const auto& k : config_keys())
    if (k.name == name) return &k;
  return nullptr;
}

/// Applies `name = value`; unknown keys and malformed values throw.
inline void set_config_value(ScenarioConfig& config, std::string_view name, std::string_view value) {
  const auto* key = find_config_key(name);
  if (!key) throw InvalidParameter("unknown configuration key '" + std::string(name) + "'");
  try {
    key->set(config, value);
  } catch (const InvalidParameter& e) {
    throw InvalidParameter(std::string(name) + ": " + e.what());
  }
}

inline void set_config_number(ScenarioConfig& config, std::string_view name, double value) {
  const auto* key = find_config_key(name);
  if (!key) throw InvalidParameter("unknown configuration key '" + std::string(name) + "'");
  if (!key->set_number) throw InvalidParameter("key '" + std::string(name) + "' is not numeric");
  key->set_number(config, value);
}

/// Every violated constraint, by key. Empty means valid.
inline std::vector<ConfigIssue> validation_issues(const ScenarioConfig& c) {
  std::vector<ConfigIssue> out;
  auto require = [&out](bool ok, const char* key, const char* constraint) {
    if (!ok) out.push_back({key, constraint});
  };
  auto finite = [](double v) { return std::isfinite(v); };

  require(c.region_width_km > 0.0 && finite(c.region_width_km), "region.width_km", "must be > 0");
  require(c.region_height_km > 0.0 && finite(c.region_height_km), "region.height_km",
          "must be > 0");
  require(std::abs(c.anchor_lat_deg) <= 90.0, "region.anchor_lat_deg", "must lie in [-90, 90]");
  require(finite(c.anchor_lon_deg), "region.anchor_lon_deg", "must be finite");
  require(c.earth_radius_km > 0.0 && finite(c.earth_radius_km), "region.earth_radius_km",
          "must be > 0");

  require(c.bs_density_per_km2 >= 0.0 && finite(c.bs_density_per_km2),
          "terrestrial.bs_density_per_km2", "must be >= 0");
  require(c.service_radius_km > 0.0, "terrestrial.service_radius_km", "must be > 0");
  require(finite(c.bs_tx_power_dbm), "terrestrial.bs_tx_power_dbm", "must be finite");
  require(c.bs_serving_gain_dbi >= c.bs_interfering_gain_dbi, "terrestrial.bs_serving_gain_dbi",
          "must be >= terrestrial.bs_interfering_gain_dbi");
  require(c.tn_pathloss_exponent >= 2.0, "terrestrial.pathloss_exponent", "must be >= 2");
  require(c.bs_activity >= 0.0 && c.bs_activity <= 1.0, "terrestrial.bs_activity",
          "must lie in [0, 1]");
  require(finite(c.tn_user_tx_power_dbm), "terrestrial.user_tx_power_dbm", "must be finite");

  require(c.satellite_density_per_km2 >= 0.0 && finite(c.satellite_density_per_km2),
          "satellite.density_per_km2", "must be >= 0");
  require(c.altitude_km > 0.0 && finite(c.altitude_km), "satellite.altitude_km", "must be > 0");
  require(finite(c.satellite_tx_power_dbm), "satellite.tx_power_dbm", "must be finite");
  require(c.main_lobe_gain_dbi >= c.side_lobe_gain_dbi, "satellite.main_lobe_gain_dbi",
          "must be >= satellite.side_lobe_gain_dbi");
  require(c.ntn_pathloss_exponent >= 2.0, "satellite.pathloss_exponent", "must be >= 2");
  require(c.min_elevation_deg >= 0.0 && c.min_elevation_deg <= 90.0, "satellite.min_elevation_deg",
          "must lie in [0, 90]");

  require(c.ntn_user_offset_km >= 0.0 && finite(c.ntn_user_offset_km), "ntn_user.offset_km",
          "must be >= 0");
  {
    const double b = deg_to_rad(c.ntn_user_bearing_deg);
    const PlanarPoint p{c.ntn_user_offset_km * std::sin(b), c.ntn_user_offset_km * std::cos(b)};
    require(c.region().contains(p), "ntn_user.offset_km", "NTN user must lie inside the region");
  }
  require(finite(c.ntn_user_tx_power_dbm), "ntn_user.tx_power_dbm", "must be finite");

  require(c.carrier_frequency_ghz > 0.0 && finite(c.carrier_frequency_ghz),
          "channel.carrier_frequency_ghz", "must be > 0");
  require(finite(c.noise_dbm), "channel.noise_dbm", "must be finite");

  require(c.total_mhz > 0.0 && finite(c.total_mhz), "spectrum.total_mhz", "must be > 0");
  require(c.reserved_mhz >= 0.0 && c.reserved_mhz <= c.total_mhz, "spectrum.reserved_mhz",
          "spectrum plan: reserved + shared must equal total with both >= 0 (0 <= reserved <= total)");
  require(c.no_sharing_ntn_mhz >= 0.0 && c.no_sharing_ntn_mhz <= c.total_mhz,
          "spectrum.no_sharing_ntn_mhz", "must lie in [0, spectrum.total_mhz]");

  require(c.protection_radius_km >= 0.0, "scenario.protection_radius_km", "must be >= 0");

  require(c.p_low >= 0.0 && c.p_low <= c.p_high && c.p_high <= 1.0, "policy.p_high",
          "requires 0 <= p_low <= p_high <= 1");
  require(c.p_none >= 0.0 && c.p_none <= c.p_low, "policy.p_none", "requires 0 <= p_none <= p_low");
  require(finite(c.threshold_dbm), "policy.threshold_dbm", "must be finite");
  require(finite(c.satellite_threshold_dbm), "policy.satellite_threshold_dbm", "must be finite");
  require(c.sensing_samples >= 1, "policy.sensing_samples", "must be >= 1");

  require(c.packet_bytes > 0.0, "metrics.packet_bytes", "must be > 0");
  require(c.slot_ms >= 0.0, "metrics.slot_ms", "must be >= 0");
  require(c.circuit_power_w >= 0.0, "metrics.circuit_power_w", "must be >= 0");

  require(c.replications >= 1, "run.replications", "must be >= 1");
  return out;
}

inline void validate(const ScenarioConfig& c) {
  auto issues = validation_issues(c);
  if (!issues.empty()) throw ConfigError(std::move(issues));
}

}  // namespace stin
