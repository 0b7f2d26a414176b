#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <cstring>
#include <vector>

#include "oracles.hpp"
#include "stin/engine.hpp"

using namespace stin;

namespace {

ScenarioConfig small(ScenarioId s, std::uint64_t reps = 200) {
  ScenarioConfig c;
  c.scenario = s;
  c.replications = reps;
  return c;
}

// Bitwise equality, treating NaN payloads as values.
bool same(double a, double b) { return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b); }

bool same_record(const ReplicationRecord& a, const ReplicationRecord& b) {
  return a.index == b.index && a.bs_count == b.bs_count && a.satellite_count == b.satellite_count &&
         a.visible_satellites == b.visible_satellites && a.ntn_outage == b.ntn_outage &&
         a.tn_outage == b.tn_outage && a.inside_zone == b.inside_zone &&
         a.shared_attempt == b.shared_attempt && a.shared_access == b.shared_access &&
         same(a.ntn_rate, b.ntn_rate) && same(a.tn_rate, b.tn_rate) &&
         same(a.ntn_reserved_rate, b.ntn_reserved_rate) && same(a.ntn_shared_rate, b.ntn_shared_rate) &&
         same(a.ntn_own_band_sinr, b.ntn_own_band_sinr) && same(a.ntn_shared_sinr, b.ntn_shared_sinr) &&
         same(a.tn_sinr, b.tn_sinr) && same(a.tn_interference_w, b.tn_interference_w) &&
         same(a.latency_ms, b.latency_ms) && same(a.ntn_capacity, b.ntn_capacity) &&
         same(a.tn_capacity, b.tn_capacity) && same(a.sum_capacity, b.sum_capacity) &&
         same(a.ase, b.ase) && same(a.energy_efficiency, b.energy_efficiency);
}

bool same_estimate(const Estimate& a, const Estimate& b) {
  return same(a.mean, b.mean) && same(a.half_width, b.half_width) && a.count == b.count;
}

bool same_report(const MetricsReport& a, const MetricsReport& b) {
  return same_estimate(a.ntn_user_rate, b.ntn_user_rate) && same_estimate(a.tn_user_rate, b.tn_user_rate) &&
         same_estimate(a.ntn_capacity, b.ntn_capacity) && same_estimate(a.tn_capacity, b.tn_capacity) &&
         same_estimate(a.sum_capacity, b.sum_capacity) && same_estimate(a.ase, b.ase) &&
         same(a.sap.p, b.sap.p) && same(a.sap.lower, b.sap.lower) &&
         same_estimate(a.interference_intensity, b.interference_intensity) &&
         same_estimate(a.e2e_latency, b.e2e_latency) &&
         same_estimate(a.energy_efficiency, b.energy_efficiency) &&
         same(a.mean_satellite_count, b.mean_satellite_count) &&
         a.replication_count == b.replication_count;
}

}  // namespace

TEST(Run, SingleReplicationEqualsRecord) {
  const auto c = small(ScenarioId::s1_protection_zone, 1);
  const auto rec = run_records(c).at(0);
  const auto rep = run(c);
  EXPECT_EQ(rep.ntn_user_rate.mean, rec.ntn_rate);
  EXPECT_EQ(rep.tn_user_rate.mean, rec.tn_rate);
  EXPECT_EQ(rep.ntn_capacity.mean, rec.ntn_capacity);
  EXPECT_EQ(rep.sum_capacity.mean, rec.sum_capacity);
  EXPECT_EQ(rep.sap.p, rec.shared_access ? 1.0 : 0.0);
  EXPECT_EQ(rep.replication_count, 1u);
}

TEST(Run, Reproducible) {
  const auto c = small(ScenarioId::s2_sharing_no_zone);
  EXPECT_TRUE(same_report(run(c), run(c)));
}

TEST(Run, WorkerCountInvariance) {
  auto c = small(ScenarioId::s1_protection_zone, 300);
  c.rayleigh_fading = true;
  c.access = AccessRule::jsss;
  const auto one = run_records(c, {1, false});
  const auto four = run_records(c, {4, false});
  ASSERT_EQ(one.size(), four.size());
  for (std::size_t i = 0; i < one.size(); ++i) EXPECT_TRUE(same_record(one[i], four[i])) << i;
  EXPECT_TRUE(same_report(aggregate(one), aggregate(four)));
}

TEST(Run, ExtendingReplicationsKeepsPrefix) {
  auto c = small(ScenarioId::s3_no_sharing, 40);
  const auto short_run = run_records(c);
  c.replications = 90;
  const auto long_run = run_records(c);
  for (std::size_t i = 0; i < short_run.size(); ++i) EXPECT_TRUE(same_record(short_run[i], long_run[i]));
}

TEST(Run, InvalidConfigNamesEveryField) {
  auto c = small(ScenarioId::s1_protection_zone);
  c.reserved_mhz = 400;
  c.replications = 0;
  try {
    run(c);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("spectrum.reserved_mhz"), std::string::npos);
    EXPECT_NE(msg.find("run.replications"), std::string::npos);
    EXPECT_GE(e.issues().size(), 2u);
  }
}

TEST(Run, SapMatchesVoidProbability) {
  const auto r = run(small(ScenarioId::s1_protection_zone, 20000));
  EXPECT_NEAR(r.sap.p, oracle::void_probability(3e-3, 10.0), 0.011);
  EXPECT_EQ(r.sap.trials, 20000u);
}

TEST(Run, S3HasNoAccessAttempts) {
  const auto r = run(small(ScenarioId::s3_no_sharing, 50));
  EXPECT_EQ(r.sap.trials, 0u);
  EXPECT_EQ(r.sap.p, 0.0);
}

TEST(Run, SumCapacityIsExactSum) {
  for (auto s : {ScenarioId::s1_protection_zone, ScenarioId::s2_sharing_no_zone, ScenarioId::s3_no_sharing}) {
    const auto r = run(small(s, 100));
    EXPECT_EQ(r.sum_capacity.mean, r.ntn_capacity.mean + r.tn_capacity.mean);
  }
}

TEST(Run, NodeCountsReported) {
  const auto r = run(small(ScenarioId::s2_sharing_no_zone, 200));
  EXPECT_NEAR(r.mean_bs_count, 120.0, 5.0);
  EXPECT_NEAR(r.mean_satellite_count, 5933.0, 30.0);
  EXPECT_NEAR(r.mean_visible_satellites,
              5933.0 * visible_cap_fraction(6371.0, 500.0, 10.0), 3.0);
}

TEST(Run, AllFrameworksRun) {
  for (Framework f : {Framework::ntn_dl_tn_dl, Framework::ntn_dl_tn_ul, Framework::ntn_ul_tn_dl,
                      Framework::ntn_ul_tn_ul})
    for (auto s : {ScenarioId::s1_protection_zone, ScenarioId::s2_sharing_no_zone, ScenarioId::s3_no_sharing}) {
      auto c = small(s, 30);
      c.framework = f;
      const auto r = run(c);
      EXPECT_TRUE(std::isfinite(r.sum_capacity.mean));
      EXPECT_GE(r.ntn_user_rate.mean, 0.0);
    }
}

TEST(Run, SensingPoliciesOrdered) {
  auto c = small(ScenarioId::s1_protection_zone, 400);
  c.p_low = 0.3;
  c.p_none = 0.1;
  c.access = AccessRule::sss;
  const auto sss = run_records(c);
  c.access = AccessRule::jsss;
  const auto jsss = run_records(c);
  for (std::size_t i = 0; i < sss.size(); ++i)
    if (jsss[i].shared_access) EXPECT_TRUE(sss[i].shared_access) << i;
}

TEST(Run, FadingIsReproducibleAndChangesRates) {
  auto c = small(ScenarioId::s2_sharing_no_zone, 60);
  const auto plain = run(c);
  c.rayleigh_fading = true;
  const auto faded = run(c);
  EXPECT_TRUE(same_report(faded, run(c)));
  EXPECT_NE(plain.ntn_user_rate.mean, faded.ntn_user_rate.mean);
  EXPECT_EQ(plain.mean_satellite_count, faded.mean_satellite_count);
}

TEST(Degeneration, ZeroRadiusS1MatchesS2SharedBand) {
  auto s1 = small(ScenarioId::s1_protection_zone, 150);
  s1.protection_radius_km = 0.0;
  auto s2 = small(ScenarioId::s2_sharing_no_zone, 150);
  const auto a = run_records(s1), b = run_records(s2);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_TRUE(a[i].shared_access);
    EXPECT_TRUE(same(a[i].ntn_shared_sinr, b[i].ntn_shared_sinr));
    EXPECT_TRUE(same(a[i].ntn_shared_rate, b[i].ntn_shared_rate));
    EXPECT_TRUE(same(a[i].tn_sinr, b[i].tn_sinr));
    EXPECT_TRUE(same(a[i].tn_rate, b[i].tn_rate));
    EXPECT_TRUE(same(a[i].tn_capacity, b[i].tn_capacity));
    EXPECT_TRUE(same(a[i].interference_intensity, b[i].interference_intensity));
  }
}

TEST(Degeneration, HugeZoneMatchesNoNtnBaseline) {
  auto zone = small(ScenarioId::s1_protection_zone, 150);
  zone.protection_radius_km = 300.0;
  auto baseline = zone;
  baseline.satellite_density_per_km2 = 0.0;
  const auto a = run_records(zone), b = run_records(baseline);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].bs_count > 0) EXPECT_FALSE(a[i].shared_access);
    EXPECT_TRUE(same(a[i].tn_sinr, b[i].tn_sinr));
    EXPECT_TRUE(same(a[i].tn_rate, b[i].tn_rate));
    EXPECT_TRUE(same(a[i].tn_capacity, b[i].tn_capacity));
  }
}

TEST(Metrics, ZoneLowersTnInterference) {
  const auto a = run_records(small(ScenarioId::s1_protection_zone, 200));
  const auto b = run_records(small(ScenarioId::s2_sharing_no_zone, 200));
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::isfinite(a[i].interference_intensity))
      EXPECT_LE(a[i].interference_intensity, b[i].interference_intensity);
}

TEST(Link, MatchesOracleOnHandBuiltScene) {
  const ScenarioConfig c;
  oracle::Scene scene(c);
  scene.add_bs({3, 4});
  scene.add_bs({45, -2});
  scene.add_satellite({55, 5});
  scene.add_satellite({120, -80});
  const ReplicationModel model(c);
  const BandAssignment shared{System::ntn, Band::shared, 180.0, kBothSystems};
  const auto got = model.link(scene.r, {NodeClass::ntn_user, 0}, shared);

  const auto& r = scene.r;
  auto sat_d = [&](std::size_t s) { return norm(r.satellite_xyz[s] - r.ntn_user_xyz[0]) * 1e3; };
  auto bs_d = [&](std::size_t b) {
    return std::hypot(r.bs_positions[b].x_km - 50.0, r.bs_positions[b].y_km) * 1e3;
  };
  const auto want = oracle::sinr({50, 30, sat_d(0), 2.0},
                                 {{50, 10, sat_d(1), 2.0}, {46, 0, bs_d(0), 3.5}, {46, 0, bs_d(1), 3.5}},
                                 1e-14, 2.0);
  EXPECT_NEAR(got.sinr, want.sinr, 1e-12 * want.sinr);
  EXPECT_NEAR(got.spectral_efficiency, want.se, 1e-12 * want.se);
}

TEST(Sweep, SingleValueEqualsRun) {
  SweepSpec spec{"spectrum.reserved_mhz", {60.0}, small(ScenarioId::s1_protection_zone, 80)};
  const auto pts = sweep(spec);
  ASSERT_EQ(pts.size(), 1u);
  auto c = spec.base;
  c.reserved_mhz = 60.0;
  EXPECT_TRUE(same_report(pts[0].report, run(c)));
}

TEST(Sweep, CommonRandomNumbers) {
  auto base = small(ScenarioId::s1_protection_zone, 20);
  for (double br : {0.0, 140.0, 280.0}) {
    auto c = base;
    c.reserved_mhz = br;
    const auto recs = run_records(c, {1, true});
    const auto ref = run_records(base, {1, true});
    for (std::size_t i = 0; i < recs.size(); ++i) EXPECT_EQ(recs[i].fingerprint, ref[i].fingerprint);
  }
}

TEST(Sweep, ReservedAndSharedRatesMonotone) {
  SweepSpec spec{"spectrum.reserved_mhz", {0, 40, 80, 120, 160, 200, 240, 280},
                 small(ScenarioId::s1_protection_zone, 300)};
  const auto pts = sweep(spec);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    EXPECT_GE(pts[i].report.ntn_reserved_rate.mean, pts[i - 1].report.ntn_reserved_rate.mean);
    EXPECT_LE(pts[i].report.ntn_shared_rate.mean, pts[i - 1].report.ntn_shared_rate.mean);
    EXPECT_LE(pts[i].report.tn_user_rate.mean, pts[i - 1].report.tn_user_rate.mean);
  }
}

TEST(Sweep, SpecValidation) {
  const auto base = small(ScenarioId::s1_protection_zone, 5);
  EXPECT_THROW(sweep(SweepSpec{"spectrum.reserved_mhz", {}, base}), ConfigError);
  EXPECT_THROW(sweep(SweepSpec{"spectrum.reserved_mhz", {10, 30, 20}, base}), ConfigError);
  EXPECT_THROW(sweep(SweepSpec{"spectrum.reserved_mhz", {10, 10}, base}), ConfigError);
  EXPECT_THROW(sweep(SweepSpec{"scenario.id", {1}, base}), ConfigError);
  EXPECT_THROW(sweep(SweepSpec{"no.such_key", {1}, base}), ConfigError);
  EXPECT_THROW(sweep(SweepSpec{"spectrum.reserved_mhz", {100, 400}, base}), ConfigError);
  EXPECT_NO_THROW(sweep(SweepSpec{"scenario.protection_radius_km", {20, 10, 0}, base}));
}

TEST(Compare, SelfHasZeroDifferences) {
  const auto c = small(ScenarioId::s2_sharing_no_zone, 50);
  const std::vector<ScenarioConfig> cs{c, c};
  const auto t = compare(cs);
  for (const auto& d : t.rows[1].vs_reference) {
    if (d.difference.count == 0) continue;
    EXPECT_EQ(d.difference.mean, 0.0) << d.metric;
    EXPECT_EQ(d.difference.half_width, 0.0) << d.metric;
  }
}

TEST(Compare, S2VersusS3) {
  const std::vector<ScenarioConfig> cs{small(ScenarioId::s3_no_sharing, 300),
                                       small(ScenarioId::s2_sharing_no_zone, 300)};
  const auto t = compare(cs);
  auto diff = [&](const std::string& m) {
    for (const auto& d : t.rows[1].vs_reference)
      if (d.metric == m) return d.difference;
    return Estimate{};
  };
  EXPECT_GT(diff("ntn_user_rate").mean - diff("ntn_user_rate").half_width, 0.0);
  EXPECT_LT(diff("tn_user_rate").mean + diff("tn_user_rate").half_width, 0.0);
  EXPECT_GT(diff("sum_capacity").mean, 0.0);
  EXPECT_GT(diff("ntn_capacity").mean, 0.0);
}

TEST(Compare, MismatchedBasesRejected) {
  auto a = small(ScenarioId::s1_protection_zone, 10);
  auto b = a;
  b.seed = 2;
  EXPECT_THROW(compare(std::vector<ScenarioConfig>{a, b}), InvalidComparison);
  b = a;
  b.bs_density_per_km2 = 1e-3;
  EXPECT_THROW(compare(std::vector<ScenarioConfig>{a, b}), InvalidComparison);
  EXPECT_THROW(compare(std::vector<ScenarioConfig>{}), InvalidComparison);
}
