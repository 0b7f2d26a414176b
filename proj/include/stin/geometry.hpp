#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "stin/errors.hpp"
#include "stin/random.hpp"

namespace stin {

inline constexpr double kEarthRadiusKm = 6371.0;

inline constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
inline constexpr double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend constexpr Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend constexpr Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend constexpr Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
  friend constexpr bool operator==(Vec3, Vec3) = default;
};

constexpr double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }

/// Region-local Cartesian position, km. x points east, y north.
struct PlanarPoint {
  double x_km = 0.0;
  double y_km = 0.0;

  friend constexpr bool operator==(PlanarPoint, PlanarPoint) = default;
};

/// Geocentric spherical position.
struct SpherePoint {
  double latitude_rad = 0.0;
  double longitude_rad = 0.0;
  double radius_km = kEarthRadiusKm;

  friend constexpr bool operator==(SpherePoint, SpherePoint) = default;
};

inline Vec3 to_cartesian(const SpherePoint& p) {
  const double c = std::cos(p.latitude_rad);
  return {p.radius_km * c * std::cos(p.longitude_rad), p.radius_km * c * std::sin(p.longitude_rad),
          p.radius_km * std::sin(p.latitude_rad)};
}

/// Inverse of to_cartesian; longitude folded into [-pi, pi).
inline SpherePoint from_cartesian(const Vec3& v) {
  const double r = norm(v);
  double lon = std::atan2(v.y, v.x);
  if (lon >= std::numbers::pi) lon -= 2.0 * std::numbers::pi;
  return {std::asin(std::clamp(v.z / r, -1.0, 1.0)), lon, r};
}

struct GeodeticAnchor {
  double latitude_rad = 0.0;
  double longitude_rad = 0.0;

  friend constexpr bool operator==(GeodeticAnchor, GeodeticAnchor) = default;
};

/// Axis-aligned rectangle centered on its anchor.
struct Region {
  double width_km = 200.0;
  double height_km = 200.0;
  GeodeticAnchor anchor{};

  double area_km2() const { return width_km * height_km; }

  bool contains(const PlanarPoint& p) const {
    return std::abs(p.x_km) <= 0.5 * width_km && std::abs(p.y_km) <= 0.5 * height_km;
  }

  friend constexpr bool operator==(const Region&, const Region&) = default;
};

inline double distance_km(const PlanarPoint& a, const PlanarPoint& b) {
  return std::hypot(a.x_km - b.x_km, a.y_km - b.y_km);
}

/// Chord distance between two geocentric points.
inline double distance_km(const SpherePoint& a, const SpherePoint& b) {
  return norm(to_cartesian(a) - to_cartesian(b));
}

/// Local tangent plane at a region anchor. Planar points are lifted onto the
/// sphere by radial projection of the tangent-plane point.
class TangentPlane {
 public:
  explicit TangentPlane(GeodeticAnchor anchor, double earth_radius_km = kEarthRadiusKm)
      : earth_radius_km_(earth_radius_km) {
    const double slat = std::sin(anchor.latitude_rad), clat = std::cos(anchor.latitude_rad);
    const double slon = std::sin(anchor.longitude_rad), clon = std::cos(anchor.longitude_rad);
    up_ = {clat * clon, clat * slon, slat};
    east_ = {-slon, clon, 0.0};
    north_ = {-slat * clon, -slat * slon, clat};
  }

  double earth_radius_km() const { return earth_radius_km_; }

  /// Position at `altitude_km` above the ground point under `p`.
  Vec3 to_cartesian(const PlanarPoint& p, double altitude_km = 0.0) const {
    const Vec3 t = earth_radius_km_ * up_ + p.x_km * east_ + p.y_km * north_;
    return ((earth_radius_km_ + altitude_km) / norm(t)) * t;
  }

  SpherePoint to_sphere(const PlanarPoint& p, double altitude_km = 0.0) const {
    return from_cartesian(to_cartesian(p, altitude_km));
  }

 private:
  double earth_radius_km_;
  Vec3 up_, east_, north_;
};

/// Homogeneous Poisson process on a rectangular region.
inline std::vector<PlanarPoint> sample_planar_ppp(double density_per_km2, const Region& region,
                                                  RandomStream& rng) {
  if (!(density_per_km2 >= 0.0)) throw InvalidParameter("planar PPP density must be >= 0");
  const auto count = rng.poisson(density_per_km2 * region.area_km2());
  std::vector<PlanarPoint> points;
  points.reserve(count);
  const double hw = 0.5 * region.width_km, hh = 0.5 * region.height_km;
  for (std::uint64_t i = 0; i < count; ++i) {
    const double x = rng.uniform(-hw, hw);
    const double y = rng.uniform(-hh, hh);
    points.push_back({x, y});
  }
  return points;
}

/// Homogeneous Poisson process on a sphere: area-uniform directions
/// (sin(latitude) uniform), longitude uniform in [-pi, pi).
inline std::vector<SpherePoint> sample_sphere_ppp(double density_per_km2, double radius_km,
                                                  RandomStream& rng) {
  if (!(radius_km > 0.0)) throw InvalidParameter("sphere radius must be > 0");
  if (!(density_per_km2 >= 0.0)) throw InvalidParameter("sphere PPP density must be >= 0");
  const double area = 4.0 * std::numbers::pi * radius_km * radius_km;
  const auto count = rng.poisson(density_per_km2 * area);
  std::vector<SpherePoint> points;
  points.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    const double z = rng.uniform(-1.0, 1.0);
    const double lon = rng.uniform(-std::numbers::pi, std::numbers::pi);
    points.push_back({std::asin(z), lon, radius_km});
  }
  return points;
}

/// 3-D distance from a ground terminal to a satellite.
inline double slant_range(const SpherePoint& ground, const SpherePoint& sat) {
  return distance_km(ground, sat);
}

/// Elevation of `target` seen from `observer`, in degrees within [-90, 90].
inline double elevation_angle(const Vec3& observer, const Vec3& target) {
  const Vec3 d = target - observer;
  const double r = norm(observer);
  const Vec3 up = (1.0 / r) * observer;
  const double vertical = dot(d, up);
  const double horizontal = norm(d - vertical * up);
  return rad_to_deg(std::atan2(vertical, horizontal));
}

inline double elevation_angle(const SpherePoint& ground, const SpherePoint& sat) {
  return elevation_angle(to_cartesian(ground), to_cartesian(sat));
}

/// Visibility predicate evaluated without trigonometry:
/// elevation >= e  <=>  <d, up> >= sin(e) * |d|.
class VisibilityTest {
 public:
  VisibilityTest(const Vec3& ground, double min_elevation_deg)
      : ground_(ground),
        up_((1.0 / norm(ground)) * ground),
        sin_min_(std::sin(deg_to_rad(min_elevation_deg))) {}

  bool operator()(const Vec3& sat) const {
    const Vec3 d = sat - ground_;
    const double vertical = dot(d, up_);
    if (sin_min_ >= 0.0 && vertical < 0.0) return false;
    const double range = norm(d);
    return vertical >= sin_min_ * range - kTolerance * range;
  }

 private:
  // Absorbs rounding in the unit vector so a zenith satellite passes at 90 deg.
  static constexpr double kTolerance = 1e-13;

  Vec3 ground_;
  Vec3 up_;
  double sin_min_;
};

/// Indices of satellites at or above `min_elevation_deg`, in input order.
inline std::vector<std::size_t> visible_satellite_indices(const Vec3& ground,
                                                          std::span<const Vec3> sats,
                                                          double min_elevation_deg) {
  if (!(min_elevation_deg >= 0.0 && min_elevation_deg <= 90.0))
    throw InvalidParameter("min_elevation must lie in [0, 90] degrees");
  const VisibilityTest visible(ground, min_elevation_deg);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < sats.size(); ++i)
    if (visible(sats[i])) out.push_back(i);
  return out;
}

inline std::vector<SpherePoint> visible_satellites(const SpherePoint& ground,
                                                   std::span<const SpherePoint> sats,
                                                   double min_elevation_deg) {
  std::vector<Vec3> xyz;
  xyz.reserve(sats.size());
  for (const auto& s : sats) xyz.push_back(to_cartesian(s));
  std::vector<SpherePoint> out;
  for (auto i : visible_satellite_indices(to_cartesian(ground), xyz, min_elevation_deg))
    out.push_back(sats[i]);
  return out;
}

/// Fraction of a constellation shell visible above `min_elevation_deg`:
/// the spherical-cap area over the full shell.
inline double visible_cap_fraction(double earth_radius_km, double altitude_km,
                                   double min_elevation_deg) {
  const double e = deg_to_rad(min_elevation_deg);
  const double central =
      std::acos(earth_radius_km * std::cos(e) / (earth_radius_km + altitude_km)) - e;
  return 0.5 * (1.0 - std::cos(central));
}

template <typename Point>
struct NearestResult {
  std::size_t index;
  Point point;
  double distance_km;
};

/// Global minimum-distance candidate; ties go to the lowest index.
template <typename Point>
NearestResult<Point> nearest(std::span<const Point> candidates, const Point& target) {
  if (candidates.empty()) throw NoCandidate("nearest: empty candidate set");
  std::size_t best = 0;
  double best_d = distance_km(candidates[0], target);
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const double d = distance_km(candidates[i], target);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return {best, candidates[best], best_d};
}

template <typename Point>
NearestResult<Point> nearest(const std::vector<Point>& candidates, const Point& target) {
  return nearest(std::span<const Point>(candidates), target);
}

}  // namespace stin
