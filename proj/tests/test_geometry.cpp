#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "oracles.hpp"
#include "stin/geometry.hpp"
#include "stin/random.hpp"

using namespace stin;

namespace {

constexpr double kR = 6371.0;
constexpr double kH = 500.0;

}  // namespace

TEST(PlanarPpp, ZeroDensityIsEmpty) {
  RandomStream rng(1);
  EXPECT_TRUE(sample_planar_ppp(0.0, Region{}, rng).empty());
}

TEST(PlanarPpp, NegativeDensityRejected) {
  RandomStream rng(1);
  EXPECT_THROW(sample_planar_ppp(-1.0, Region{}, rng), InvalidParameter);
}

TEST(PlanarPpp, PointsInsideRegion) {
  RandomStream rng(7);
  const Region region{};
  for (int i = 0; i < 50; ++i)
    for (const auto& p : sample_planar_ppp(3e-3, region, rng)) {
      EXPECT_TRUE(std::isfinite(p.x_km) && std::isfinite(p.y_km));
      EXPECT_TRUE(region.contains(p));
    }
}

TEST(PlanarPpp, MeanCountMatchesIntensity) {
  RandomStream rng(11);
  const int draws = 20000;
  double total = 0.0;
  for (int i = 0; i < draws; ++i) total += static_cast<double>(sample_planar_ppp(3e-3, Region{}, rng).size());
  EXPECT_NEAR(total / draws, 120.0, 1.2);
}

TEST(SpherePpp, ZeroDensityIsEmpty) {
  RandomStream rng(1);
  EXPECT_TRUE(sample_sphere_ppp(0.0, kR + kH, rng).empty());
}

TEST(SpherePpp, MeanCountMatchesIntensity) {
  const double expected = 1e-5 * 4.0 * std::numbers::pi * (kR + kH) * (kR + kH);
  EXPECT_NEAR(expected, 5933.0, 1.0);
  RandomStream rng(3);
  const int draws = 300;
  double total = 0.0;
  for (int i = 0; i < draws; ++i) total += static_cast<double>(sample_sphere_ppp(1e-5, kR + kH, rng).size());
  EXPECT_NEAR(total / draws, expected, 0.01 * expected);
}

TEST(SpherePpp, LatitudeDensityProportionalToCosine) {
  RandomStream rng(5);
  std::vector<double> lat;
  while (lat.size() < 20000)
    for (const auto& p : sample_sphere_ppp(1e-5, kR + kH, rng)) lat.push_back(p.latitude_rad);
  lat.resize(20000);
  // CDF of a cos-weighted latitude: (1 + sin(phi)) / 2.
  const double d = oracle::ks_statistic(lat, [](double phi) { return 0.5 * (1.0 + std::sin(phi)); });
  EXPECT_GT(oracle::ks_pvalue(d, lat.size()), 0.01);
}

TEST(SpherePpp, SameSeedSameSample) {
  RandomStream a(99), b(99);
  EXPECT_EQ(sample_sphere_ppp(1e-5, kR + kH, a), sample_sphere_ppp(1e-5, kR + kH, b));
}

TEST(SlantRange, ZenithEqualsAltitude) {
  const SpherePoint ground{0.3, -1.1, kR};
  const SpherePoint sat{0.3, -1.1, kR + kH};
  EXPECT_NEAR(slant_range(ground, sat), kH, 1e-9);
}

TEST(SlantRange, HorizonDistance) {
  // Horizon point: central angle acos(R / (R + h)).
  const double gamma = std::acos(kR / (kR + kH));
  const SpherePoint ground{0.0, 0.0, kR};
  const SpherePoint sat{0.0, gamma, kR + kH};
  EXPECT_NEAR(slant_range(ground, sat), std::sqrt((kR + kH) * (kR + kH) - kR * kR), 1e-6);
  EXPECT_NEAR(slant_range(ground, sat), 2573.13, 0.01);
}

TEST(SlantRange, SymmetricAndBounded) {
  RandomStream rng(2);
  for (int i = 0; i < 100; ++i) {
    const SpherePoint g{rng.uniform(-1.5, 1.5), rng.uniform(-3, 3), kR};
    const SpherePoint s{rng.uniform(-1.5, 1.5), rng.uniform(-3, 3), kR + kH};
    EXPECT_DOUBLE_EQ(distance_km(g, s), distance_km(s, g));
    EXPECT_GE(slant_range(g, s), kH - 1e-9);
  }
}

TEST(Elevation, ZenithAndHorizon) {
  const SpherePoint ground{0.2, 0.4, kR};
  EXPECT_NEAR(elevation_angle(ground, SpherePoint{0.2, 0.4, kR + kH}), 90.0, 1e-9);
  const double gamma = std::acos(kR / (kR + kH));
  EXPECT_NEAR(elevation_angle(SpherePoint{0, 0, kR}, SpherePoint{0, gamma, kR + kH}), 0.0, 1e-9);
}

TEST(Elevation, CentralAngleTenDegreesMatchesVectorOracle) {
  const Vec3 ground{kR, 0, 0};
  const double g = 10.0 * std::numbers::pi / 180.0;
  const Vec3 sat{(kR + kH) * std::cos(g), (kR + kH) * std::sin(g), 0.0};
  const double expected = oracle::elevation_deg(ground, sat);
  EXPECT_NEAR(elevation_angle(ground, sat), expected, 1e-9);
  // Closed form: tan(e) = (cos g - R/(R+h)) / sin g.
  EXPECT_NEAR(expected, std::atan((std::cos(g) - kR / (kR + kH)) / std::sin(g)) * 180.0 / std::numbers::pi,
              1e-9);
}

TEST(Elevation, RandomPairsMatchOracle) {
  RandomStream rng(8);
  for (int i = 0; i < 200; ++i) {
    const Vec3 g = to_cartesian({rng.uniform(-1.5, 1.5), rng.uniform(-3, 3), kR});
    const Vec3 s = to_cartesian({rng.uniform(-1.5, 1.5), rng.uniform(-3, 3), kR + kH});
    EXPECT_NEAR(elevation_angle(g, s), oracle::elevation_deg(g, s), 1e-7);
  }
}

TEST(Visibility, EmptyInput) {
  EXPECT_TRUE(visible_satellite_indices(Vec3{kR, 0, 0}, {}, 10.0).empty());
}

TEST(Visibility, RejectsOutOfRangeElevation) {
  EXPECT_THROW(visible_satellite_indices(Vec3{kR, 0, 0}, {}, -1.0), InvalidParameter);
  EXPECT_THROW(visible_satellite_indices(Vec3{kR, 0, 0}, {}, 91.0), InvalidParameter);
}

TEST(Visibility, NinetyDegreesKeepsOnlyZenith) {
  const SpherePoint ground{0.1, 0.2, kR};
  const std::vector<SpherePoint> sats{{0.1, 0.2, kR + kH}, {0.1, 0.2001, kR + kH}, {0.5, 0.2, kR + kH}};
  const auto vis = visible_satellites(ground, sats, 90.0);
  ASSERT_EQ(vis.size(), 1u);
  EXPECT_EQ(vis[0], sats[0]);
}

TEST(Visibility, AgreesWithOracleElevation) {
  RandomStream rng(4);
  const Vec3 ground = to_cartesian({0.0, 0.0, kR});
  std::vector<Vec3> sats;
  for (const auto& s : sample_sphere_ppp(1e-5, kR + kH, rng)) sats.push_back(to_cartesian(s));
  const auto vis = visible_satellite_indices(ground, sats, 10.0);
  std::vector<std::size_t> expected;
  for (std::size_t i = 0; i < sats.size(); ++i)
    if (oracle::elevation_deg(ground, sats[i]) >= 10.0) expected.push_back(i);
  EXPECT_EQ(vis, expected);
}

TEST(Visibility, MeanCountMatchesCapFraction) {
  const double frac = visible_cap_fraction(kR, kH, 10.0);
  // Independent: central angle from the law of sines.
  const double e = 10.0 * std::numbers::pi / 180.0;
  const double nadir = std::asin(kR * std::cos(e) / (kR + kH));
  const double central = std::numbers::pi / 2 - e - nadir;
  EXPECT_NEAR(frac, 0.5 * (1.0 - std::cos(central)), 1e-12);

  RandomStream rng(6);
  const Vec3 ground = to_cartesian({0.4, 1.0, kR});
  const int draws = 1000;
  double total = 0.0, sats_total = 0.0;
  for (int i = 0; i < draws; ++i) {
    std::vector<Vec3> xyz;
    for (const auto& s : sample_sphere_ppp(1e-5, kR + kH, rng)) xyz.push_back(to_cartesian(s));
    sats_total += static_cast<double>(xyz.size());
    total += static_cast<double>(visible_satellite_indices(ground, xyz, 10.0).size());
  }
  const double expected = frac * 1e-5 * 4.0 * std::numbers::pi * (kR + kH) * (kR + kH);
  EXPECT_NEAR(total / draws, expected, 0.02 * expected);
}

TEST(Nearest, EmptyThrows) {
  EXPECT_THROW(nearest(std::vector<PlanarPoint>{}, PlanarPoint{}), NoCandidate);
}

TEST(Nearest, SingleCandidate) {
  const std::vector<PlanarPoint> c{{4, 3}};
  const auto n = nearest(c, PlanarPoint{});
  EXPECT_EQ(n.index, 0u);
  EXPECT_DOUBLE_EQ(n.distance_km, 5.0);
}

TEST(Nearest, PicksTwoKilometres) {
  const std::vector<PlanarPoint> c{{3, 0}, {0, 2}, {-7, 0}};
  const auto n = nearest(c, PlanarPoint{});
  EXPECT_EQ(n.index, 1u);
  EXPECT_DOUBLE_EQ(n.distance_km, 2.0);
}

TEST(Nearest, TiesGoToLowestIndex) {
  const std::vector<PlanarPoint> c{{5, 0}, {0, 1}, {1, 0}, {0, -1}};
  EXPECT_EQ(nearest(c, PlanarPoint{}).index, 1u);
}

TEST(Nearest, VisibleSatelliteMatchesExhaustiveScan) {
  RandomStream rng(12);
  const SpherePoint ground{0.0, 0.0, kR};
  const Vec3 g = to_cartesian(ground);
  for (int trial = 0; trial < 20; ++trial) {
    const auto sats = sample_sphere_ppp(1e-5, kR + kH, rng);
    const auto vis = visible_satellites(ground, sats, 10.0);
    ASSERT_FALSE(vis.empty());
    const auto got = nearest(vis, ground);
    double best = 1e300;
    SpherePoint best_point;
    for (const auto& s : sats) {
      const Vec3 v = to_cartesian(s);
      if (oracle::elevation_deg(g, v) < 10.0) continue;
      const double d = norm(v - g);
      if (d < best) best = d, best_point = s;
    }
    EXPECT_EQ(got.point, best_point);
    EXPECT_DOUBLE_EQ(got.distance_km, best);
  }
}

TEST(TangentPlane, OriginMapsToAnchor) {
  const TangentPlane plane(GeodeticAnchor{0.5, -0.3}, kR);
  const auto s = plane.to_sphere(PlanarPoint{}, 0.0);
  EXPECT_NEAR(s.latitude_rad, 0.5, 1e-12);
  EXPECT_NEAR(s.longitude_rad, -0.3, 1e-12);
  EXPECT_NEAR(s.radius_km, kR, 1e-9);
  EXPECT_NEAR(norm(plane.to_cartesian({10, 20}, kH)), kR + kH, 1e-9);
}
