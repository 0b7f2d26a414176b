#include <gtest/gtest.h>

#include "stin/spectrum.hpp"

using namespace stin;

TEST(SpectrumPlan, Validation) {
  EXPECT_NO_THROW(SpectrumPlan::with_reserved(300, 0));
  EXPECT_NO_THROW(SpectrumPlan::with_reserved(300, 300));
  EXPECT_THROW(SpectrumPlan::with_reserved(300, 400), InvalidConfiguration);
  EXPECT_THROW(SpectrumPlan::with_reserved(300, -1), InvalidConfiguration);
  EXPECT_THROW((SpectrumPlan{300, 100, 100}.validate()), InvalidConfiguration);
}

TEST(ScenarioToken, RoundTrip) {
  for (auto s : {ScenarioId::s1_protection_zone, ScenarioId::s2_sharing_no_zone, ScenarioId::s3_no_sharing})
    EXPECT_EQ(parse_scenario_token(scenario_token(s)), s);
  EXPECT_THROW(parse_scenario_token("S4"), InvalidParameter);
}

TEST(AssignBands, S1InsideZoneUsesReserved) {
  const auto a = assign_bands(ScenarioId::s1_protection_zone, SpectrumPlan::with_reserved(300, 120), false);
  ASSERT_EQ(a.ntn.size(), 1u);
  EXPECT_EQ(a.ntn[0].band, Band::reserved);
  EXPECT_DOUBLE_EQ(a.ntn[0].bandwidth_mhz, 120.0);
  EXPECT_EQ(a.ntn[0].co_channel, kNtnOnly);
  ASSERT_EQ(a.tn.size(), 1u);
  EXPECT_EQ(a.tn[0].band, Band::shared);
  EXPECT_EQ(a.tn[0].co_channel, kTnOnly);
  EXPECT_FALSE(cross_interference_enabled(a.ntn[0], a.tn[0]));
}

TEST(AssignBands, S1OutsideZoneSharesWithTn) {
  const auto a = assign_bands(ScenarioId::s1_protection_zone, SpectrumPlan::with_reserved(300, 120), true);
  ASSERT_EQ(a.ntn.size(), 1u);
  EXPECT_EQ(a.ntn[0].band, Band::shared);
  EXPECT_DOUBLE_EQ(a.ntn[0].bandwidth_mhz, 180.0);
  EXPECT_EQ(a.ntn[0].co_channel, kBothSystems);
  EXPECT_EQ(a.tn[0].co_channel, kBothSystems);
  EXPECT_TRUE(cross_interference_enabled(a.ntn[0], a.tn[0]));
  EXPECT_TRUE(cross_interference_enabled(a.ntn[0], a.ntn[0]));
}

TEST(AssignBands, S1WithoutZoneEqualsS2SharedComponent) {
  const auto plan = SpectrumPlan::with_reserved(300, 80);
  const auto s1 = assign_bands(ScenarioId::s1_protection_zone, plan, true);
  const auto s2 = assign_bands(ScenarioId::s2_sharing_no_zone, plan, true);
  ASSERT_EQ(s2.ntn.size(), 2u);
  EXPECT_EQ(s1.ntn[0], s2.ntn[1]);
  EXPECT_EQ(s1.tn, s2.tn);
}

TEST(AssignBands, S2HoldsBothSegments) {
  const auto a = assign_bands(ScenarioId::s2_sharing_no_zone, SpectrumPlan::with_reserved(300, 120), true);
  ASSERT_EQ(a.ntn.size(), 2u);
  EXPECT_EQ(a.ntn[0].band, Band::reserved);
  EXPECT_EQ(a.ntn[1].band, Band::shared);
  EXPECT_DOUBLE_EQ(a.ntn[0].bandwidth_mhz + a.ntn[1].bandwidth_mhz, 300.0);
  EXPECT_FALSE(cross_interference_enabled(a.ntn[0], a.ntn[1]));
}

TEST(AssignBands, S3FixedSplit) {
  const auto a = assign_bands(ScenarioId::s3_no_sharing, SpectrumPlan::with_reserved(300, 120), false);
  ASSERT_EQ(a.ntn.size(), 1u);
  ASSERT_EQ(a.tn.size(), 1u);
  EXPECT_DOUBLE_EQ(a.ntn[0].bandwidth_mhz, 120.0);
  EXPECT_DOUBLE_EQ(a.tn[0].bandwidth_mhz, 180.0);
  EXPECT_FALSE(cross_interference_enabled(a.ntn[0], a.tn[0]));
}

TEST(AssignBands, WidthsNeverExceedTotal) {
  for (double br = 0; br <= 300; br += 20)
    for (auto s : {ScenarioId::s1_protection_zone, ScenarioId::s2_sharing_no_zone, ScenarioId::s3_no_sharing})
      for (bool share : {false, true}) {
        const auto a = assign_bands(s, SpectrumPlan::with_reserved(300, br), share);
        double ntn = 0;
        for (const auto& b : a.ntn) {
          EXPECT_GE(b.bandwidth_mhz, 0.0);
          ntn += b.bandwidth_mhz;
        }
        EXPECT_LE(ntn, 300.0);
      }
}

TEST(AssignBands, NoneNeverInterferes) {
  const BandAssignment none{System::ntn, Band::none, 0.0, {}};
  EXPECT_FALSE(cross_interference_enabled(none, none));
}
