#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stin/channel.hpp"
#include "stin/errors.hpp"
#include "stin/geometry.hpp"
#include "stin/random.hpp"
#include "stin/scenario.hpp"
#include "stin/spectrum.hpp"

namespace stin {

enum class NodeClass { base_station, satellite, tn_user, ntn_user };

struct NodeRef {
  NodeClass cls = NodeClass::ntn_user;
  std::size_t index = 0;

  friend constexpr bool operator==(NodeRef, NodeRef) = default;
};

enum class GainRole { main_lobe, side_lobe };

struct RadioSet {
  RadioParams satellite;
  RadioParams base_station;
  RadioParams tn_user;
  RadioParams ntn_user;

  const RadioParams& of(NodeClass cls) const {
    switch (cls) {
      case NodeClass::base_station: return base_station;
      case NodeClass::satellite: return satellite;
      case NodeClass::tn_user: return tn_user;
      case NodeClass::ntn_user: return ntn_user;
    }
    return tn_user;
  }

  static RadioSet from(const ScenarioConfig& c) {
    return {c.satellite_radio(), c.base_station_radio(), c.tn_user_radio(), c.ntn_user_radio()};
  }
};

inline double role_gain(const RadioParams& radio, GainRole role) {
  return role == GainRole::main_lobe ? radio.main_lobe_gain_dbi : radio.side_lobe_gain_dbi;
}

/// One sampled snapshot. tn_users[0] and ntn_users[0] are the typical users;
/// tn_users[1..] are per-BS uplink users that only transmit in TN-UL.
struct NetworkRealization {
  Region region;
  TangentPlane plane{GeodeticAnchor{}};
  double min_elevation_deg = 10.0;
  RadioSet radios;

  std::vector<PlanarPoint> bs_positions;
  std::vector<Vec3> bs_xyz;
  std::vector<bool> bs_active_flags;

  std::vector<SpherePoint> satellite_positions;
  std::vector<Vec3> satellite_xyz;

  std::vector<PlanarPoint> tn_users;
  std::vector<Vec3> tn_user_xyz;
  std::vector<std::optional<std::size_t>> tn_server;  ///< BS index

  std::vector<PlanarPoint> ntn_users;
  std::vector<Vec3> ntn_user_xyz;
  std::vector<std::optional<std::size_t>> ntn_server;  ///< satellite index
  std::vector<std::vector<std::size_t>> ntn_visible;   ///< per NTN user

  std::vector<std::size_t> typical_tn_visible;  ///< satellites seen by tn_users[0]

  bool ntn_outage() const { return !ntn_server.at(0).has_value(); }
  bool tn_outage() const { return !tn_server.at(0).has_value(); }

  std::vector<PlanarPoint> active_bs_positions() const {
    std::vector<PlanarPoint> out;
    for (std::size_t i = 0; i < bs_positions.size(); ++i)
      if (bs_active_flags[i]) out.push_back(bs_positions[i]);
    return out;
  }

  /// FNV-1a over every sampled coordinate and flag; equal geometry gives
  /// equal fingerprints.
  std::uint64_t fingerprint() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](std::uint64_t w) {
      for (int i = 0; i < 8; ++i) {
        h ^= (w >> (8 * i)) & 0xffU;
        h *= 0x100000001b3ULL;
      }
    };
    auto mixd = [&mix](double d) { mix(std::bit_cast<std::uint64_t>(d)); };
    for (const auto& p : bs_positions) mixd(p.x_km), mixd(p.y_km);
    for (bool a : bs_active_flags) mix(a ? 1 : 0);
    for (const auto& s : satellite_positions) mixd(s.latitude_rad), mixd(s.longitude_rad);
    for (const auto& p : tn_users) mixd(p.x_km), mixd(p.y_km);
    for (const auto& p : ntn_users) mixd(p.x_km), mixd(p.y_km);
    return h;
  }
};

/// Places every node of one snapshot. Base stations, satellites and users
/// draw from three child streams forked off `rng`, so e.g. changing the
/// satellite density leaves BS geometry untouched.
inline NetworkRealization build_realization(const ScenarioConfig& config, RandomStream& rng) {
  validate(config);
  RandomStream bs_rng(rng.fork_seed());
  RandomStream sat_rng(rng.fork_seed());
  RandomStream user_rng(rng.fork_seed());

  NetworkRealization r;
  r.region = config.region();
  r.plane = TangentPlane(r.region.anchor, config.earth_radius_km);
  r.min_elevation_deg = config.min_elevation_deg;
  r.radios = RadioSet::from(config);

  r.bs_positions = sample_planar_ppp(config.bs_density_per_km2, r.region, bs_rng);
  r.bs_active_flags.reserve(r.bs_positions.size());
  r.bs_xyz.reserve(r.bs_positions.size());
  for (const auto& p : r.bs_positions) {
    // Always consume the draw so activity changes do not shift other streams.
    const double u = bs_rng.uniform();
    r.bs_active_flags.push_back(u < config.bs_activity);
    r.bs_xyz.push_back(r.plane.to_cartesian(p));
  }

  r.satellite_positions =
      sample_sphere_ppp(config.satellite_density_per_km2, config.orbit_radius_km(), sat_rng);
  r.satellite_xyz.reserve(r.satellite_positions.size());
  for (const auto& s : r.satellite_positions) r.satellite_xyz.push_back(to_cartesian(s));

  // Typical TN user at the region center, served by the nearest active BS
  // within the service radius.
  r.tn_users.push_back({0.0, 0.0});
  {
    std::optional<std::size_t> server;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < r.bs_positions.size(); ++i) {
      if (!r.bs_active_flags[i]) continue;
      const double d = distance_km(r.bs_positions[i], r.tn_users[0]);
      if (d < best) best = d, server = i;
    }
    if (server && best > config.service_radius_km) server.reset();
    r.tn_server.push_back(server);
  }
  // One uplink user per other BS, uniform over its service disc.
  for (std::size_t i = 0; i < r.bs_positions.size(); ++i) {
    const double radius = config.service_radius_km * std::sqrt(user_rng.uniform());
    const double angle = user_rng.uniform(-std::numbers::pi, std::numbers::pi);
    if (r.tn_server[0] == i) continue;
    r.tn_users.push_back({r.bs_positions[i].x_km + radius * std::cos(angle),
                          r.bs_positions[i].y_km + radius * std::sin(angle)});
    r.tn_server.push_back(i);
  }
  for (const auto& p : r.tn_users) r.tn_user_xyz.push_back(r.plane.to_cartesian(p));

  const double bearing = deg_to_rad(config.ntn_user_bearing_deg);
  r.ntn_users.push_back({config.ntn_user_offset_km * std::sin(bearing),
                         config.ntn_user_offset_km * std::cos(bearing)});
  for (const auto& p : r.ntn_users) {
    const Vec3 g = r.plane.to_cartesian(p);
    r.ntn_user_xyz.push_back(g);
    auto visible = visible_satellite_indices(g, r.satellite_xyz, config.min_elevation_deg);
    std::optional<std::size_t> server;
    double best = std::numeric_limits<double>::infinity();
    for (auto s : visible) {
      const double d = norm(r.satellite_xyz[s] - g);
      if (d < best) best = d, server = s;
    }
    r.ntn_server.push_back(server);
    r.ntn_visible.push_back(std::move(visible));
  }
  r.typical_tn_visible =
      visible_satellite_indices(r.tn_user_xyz[0], r.satellite_xyz, config.min_elevation_deg);
  return r;
}

struct ZoneDecision {
  NodeRef user{NodeClass::ntn_user, 0};
  double nearest_bs_distance_km = std::numeric_limits<double>::infinity();
  bool inside_protection_zone = false;
};

/// A BS strictly closer than `radius_km` puts the user inside its zone.
inline ZoneDecision protection_zone_check(const PlanarPoint& user,
                                          std::span<const PlanarPoint> base_stations,
                                          double radius_km) {
  if (!(radius_km >= 0.0)) throw InvalidParameter("protection radius must be >= 0");
  ZoneDecision z;
  for (const auto& b : base_stations)
    z.nearest_bs_distance_km = std::min(z.nearest_bs_distance_km, distance_km(user, b));
  z.inside_protection_zone = z.nearest_bs_distance_km < radius_km;
  return z;
}

/// S1 reading of a zone decision: inside the zone keeps the user on the
/// reserved band.
inline Assignments assign_bands(ScenarioId scenario, const SpectrumPlan& plan,
                                const ZoneDecision& zone) {
  return assign_bands(scenario, plan, !zone.inside_protection_zone);
}

/// A transmitter seen by a receiver, with everything needed to price it.
struct InterferenceSource {
  NodeRef transmitter;
  double distance_km = 0.0;
  GainRole role = GainRole::side_lobe;
  double link_gain_dbi = 0.0;  ///< tx + rx gain for this role
  double tx_power_dbm = 0.0;
  double pathloss_exponent = 2.0;
};

inline double incident_power(const InterferenceSource& s, double carrier_frequency_ghz,
                             ChannelDiagnostics* diag = nullptr) {
  const RadioParams tx{s.tx_power_dbm, 0.0, 0.0, s.pathloss_exponent, carrier_frequency_ghz};
  return received_power(tx, s.link_gain_dbi, s.distance_km * 1e3, diag);
}

namespace detail {

inline bool is_ground(NodeClass c) { return c != NodeClass::satellite; }

inline std::size_t node_count(const NetworkRealization& r, NodeClass c) {
  switch (c) {
    case NodeClass::base_station: return r.bs_positions.size();
    case NodeClass::satellite: return r.satellite_positions.size();
    case NodeClass::tn_user: return r.tn_users.size();
    case NodeClass::ntn_user: return r.ntn_users.size();
  }
  return 0;
}

inline const Vec3& xyz(const NetworkRealization& r, NodeRef n) {
  switch (n.cls) {
    case NodeClass::base_station: return r.bs_xyz[n.index];
    case NodeClass::satellite: return r.satellite_xyz[n.index];
    case NodeClass::tn_user: return r.tn_user_xyz[n.index];
    case NodeClass::ntn_user: return r.ntn_user_xyz[n.index];
  }
  return r.tn_user_xyz[0];
}

inline const PlanarPoint& planar(const NetworkRealization& r, NodeRef n) {
  switch (n.cls) {
    case NodeClass::base_station: return r.bs_positions[n.index];
    case NodeClass::tn_user: return r.tn_users[n.index];
    default: return r.ntn_users[n.index];
  }
}

/// Ground-ground links use the planar distance; any satellite link is 3-D.
inline double link_distance_km(const NetworkRealization& r, NodeRef a, NodeRef b) {
  if (is_ground(a.cls) && is_ground(b.cls)) return distance_km(planar(r, a), planar(r, b));
  return norm(xyz(r, a) - xyz(r, b));
}

inline InterferenceSource make_source(const NetworkRealization& r, NodeRef tx, NodeRef rx,
                                      GainRole role) {
  InterferenceSource s;
  s.transmitter = tx;
  s.distance_km = link_distance_km(r, tx, rx);
  s.role = role;
  s.link_gain_dbi = role_gain(r.radios.of(tx.cls), role) + role_gain(r.radios.of(rx.cls), role);
  s.tx_power_dbm = r.radios.of(tx.cls).tx_power_dbm;
  const bool space = tx.cls == NodeClass::satellite || rx.cls == NodeClass::satellite;
  s.pathloss_exponent =
      space ? r.radios.satellite.pathloss_exponent : r.radios.base_station.pathloss_exponent;
  return s;
}

inline void check_receiver(Framework f, const NetworkRealization& r, NodeRef rx) {
  bool ok = false;
  switch (rx.cls) {
    case NodeClass::ntn_user: ok = ntn_downlink(f); break;
    case NodeClass::satellite: ok = !ntn_downlink(f); break;
    case NodeClass::tn_user: ok = tn_downlink(f); break;
    case NodeClass::base_station: ok = !tn_downlink(f); break;
  }
  if (!ok) throw InvalidReference("node class does not receive in this framework");
  if (rx.index >= node_count(r, rx.cls)) throw InvalidReference("receiver index out of range");
}

/// True when `tx` is the peer serving (DL) or served by (UL) receiver `rx`.
inline bool is_serving_peer(const NetworkRealization& r, NodeRef tx, NodeRef rx) {
  if (rx.cls == NodeClass::ntn_user && tx.cls == NodeClass::satellite)
    return r.ntn_server[rx.index] == tx.index;
  if (rx.cls == NodeClass::tn_user && tx.cls == NodeClass::base_station)
    return r.tn_server[rx.index] == tx.index;
  if (rx.cls == NodeClass::satellite && tx.cls == NodeClass::ntn_user)
    return r.ntn_server[tx.index] == rx.index;
  if (rx.cls == NodeClass::base_station && tx.cls == NodeClass::tn_user)
    return r.tn_server[tx.index] == rx.index;
  return false;
}

}  // namespace detail

/// The receiver that carries NTN traffic in `framework`, if it exists.
inline std::optional<NodeRef> ntn_receiver(Framework f, const NetworkRealization& r) {
  if (ntn_downlink(f)) return NodeRef{NodeClass::ntn_user, 0};
  if (r.ntn_outage()) return std::nullopt;
  return NodeRef{NodeClass::satellite, *r.ntn_server[0]};
}

inline std::optional<NodeRef> tn_receiver(Framework f, const NetworkRealization& r) {
  if (tn_downlink(f)) return NodeRef{NodeClass::tn_user, 0};
  if (r.tn_outage()) return std::nullopt;
  return NodeRef{NodeClass::base_station, *r.tn_server[0]};
}

/// Desired link into `receiver`: main lobe at both ends. Empty in outage.
inline std::optional<InterferenceSource> serving_link(Framework f, const NetworkRealization& r,
                                                      NodeRef receiver) {
  detail::check_receiver(f, r, receiver);
  switch (receiver.cls) {
    case NodeClass::ntn_user:
      if (auto s = r.ntn_server[receiver.index])
        return detail::make_source(r, {NodeClass::satellite, *s}, receiver, GainRole::main_lobe);
      return std::nullopt;
    case NodeClass::tn_user:
      if (auto b = r.tn_server[receiver.index])
        return detail::make_source(r, {NodeClass::base_station, *b}, receiver, GainRole::main_lobe);
      return std::nullopt;
    case NodeClass::satellite:
      for (std::size_t u = 0; u < r.ntn_users.size(); ++u)
        if (r.ntn_server[u] == receiver.index)
          return detail::make_source(r, {NodeClass::ntn_user, u}, receiver, GainRole::main_lobe);
      return std::nullopt;
    case NodeClass::base_station:
      for (std::size_t u = 0; u < r.tn_users.size(); ++u)
        if (r.tn_server[u] == receiver.index)
          return detail::make_source(r, {NodeClass::tn_user, u}, receiver, GainRole::main_lobe);
      return std::nullopt;
  }
  return std::nullopt;
}

/// Co-channel transmitters that `framework` directs at `receiver`, limited to
/// the systems in `co_channel`. Satellites count only when above the minimum
/// elevation of the ground end; the serving peer and inactive BSs (and their
/// users) are excluded. All interferers use side-lobe gains.
inline std::vector<InterferenceSource> interference_sources(Framework f,
                                                            const NetworkRealization& r,
                                                            NodeRef receiver,
                                                            SystemSet co_channel = kBothSystems) {
  detail::check_receiver(f, r, receiver);
  std::vector<InterferenceSource> out;
  auto consider = [&](NodeRef tx) {
    if (tx == receiver || detail::is_serving_peer(r, tx, receiver)) return;
    out.push_back(detail::make_source(r, tx, receiver, GainRole::side_lobe));
  };
  const Vec3& rx_xyz = detail::xyz(r, receiver);

  if (co_channel.ntn) {
    if (ntn_downlink(f)) {
      // Receiver on the ground here: DL frameworks never put a satellite in receive.
      auto visit = [&](std::span<const std::size_t> visible) {
        for (auto s : visible) consider({NodeClass::satellite, s});
      };
      if (receiver.cls == NodeClass::ntn_user) {
        visit(r.ntn_visible[receiver.index]);
      } else if (receiver.cls == NodeClass::tn_user && receiver.index == 0) {
        visit(r.typical_tn_visible);
      } else {
        visit(visible_satellite_indices(rx_xyz, r.satellite_xyz, r.min_elevation_deg));
      }
    } else {
      for (std::size_t u = 0; u < r.ntn_users.size(); ++u) {
        if (receiver.cls == NodeClass::satellite &&
            !VisibilityTest(r.ntn_user_xyz[u], r.min_elevation_deg)(rx_xyz))
          continue;
        consider({NodeClass::ntn_user, u});
      }
    }
  }
  if (co_channel.tn) {
    const bool to_space = receiver.cls == NodeClass::satellite;
    if (tn_downlink(f)) {
      for (std::size_t b = 0; b < r.bs_positions.size(); ++b) {
        if (!r.bs_active_flags[b]) continue;
        if (to_space && !VisibilityTest(r.bs_xyz[b], r.min_elevation_deg)(rx_xyz)) continue;
        consider({NodeClass::base_station, b});
      }
    } else {
      for (std::size_t u = 0; u < r.tn_users.size(); ++u) {
        const auto server = r.tn_server[u];
        if (!server || !r.bs_active_flags[*server]) continue;
        if (to_space && !VisibilityTest(r.tn_user_xyz[u], r.min_elevation_deg)(rx_xyz)) continue;
        consider({NodeClass::tn_user, u});
      }
    }
  }
  return out;
}

}  // namespace stin
