#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "stin/errors.hpp"

namespace stin {

enum class System { ntn, tn };

/// Which systems transmit on a band segment.
struct SystemSet {
  bool ntn = false;
  bool tn = false;

  bool contains(System s) const { return s == System::ntn ? ntn : tn; }
  friend constexpr bool operator==(SystemSet, SystemSet) = default;
};

inline constexpr SystemSet kNtnOnly{true, false};
inline constexpr SystemSet kTnOnly{false, true};
inline constexpr SystemSet kBothSystems{true, true};

/// Partition of the total bandwidth into an NTN-reserved and a shared segment.
struct SpectrumPlan {
  double total_mhz = 300.0;
  double reserved_ntn_mhz = 120.0;
  double shared_mhz = 180.0;

  static SpectrumPlan with_reserved(double total_mhz, double reserved_mhz) {
    SpectrumPlan p{total_mhz, reserved_mhz, total_mhz - reserved_mhz};
    p.validate();
    return p;
  }

  void validate() const {
    if (!(total_mhz >= 0.0 && reserved_ntn_mhz >= 0.0 && shared_mhz >= 0.0))
      throw InvalidConfiguration("spectrum plan: all widths must be >= 0");
    if (reserved_ntn_mhz + shared_mhz != total_mhz)
      throw InvalidConfiguration("spectrum plan: reserved + shared must equal total");
  }

  friend bool operator==(const SpectrumPlan&, const SpectrumPlan&) = default;
};

enum class ScenarioId {
  s1_protection_zone,  ///< sharing gated by a protection zone
  s2_sharing_no_zone,  ///< sharing without a zone
  s3_no_sharing,       ///< fixed exclusive split
};

inline std::string_view scenario_token(ScenarioId id) {
  switch (id) {
    case ScenarioId::s1_protection_zone: return "S1";
    case ScenarioId::s2_sharing_no_zone: return "S2";
    case ScenarioId::s3_no_sharing: return "S3";
  }
  return "?";
}

inline ScenarioId parse_scenario_token(std::string_view token) {
  if (token == "S1" || token == "s1") return ScenarioId::s1_protection_zone;
  if (token == "S2" || token == "s2") return ScenarioId::s2_sharing_no_zone;
  if (token == "S3" || token == "s3") return ScenarioId::s3_no_sharing;
  throw InvalidParameter("unknown scenario '" + std::string(token) + "' (expected S1, S2 or S3)");
}

enum class Band { reserved, shared, exclusive_ntn, exclusive_tn, none };

struct BandAssignment {
  System user = System::ntn;
  Band band = Band::none;
  double bandwidth_mhz = 0.0;
  SystemSet co_channel{};

  friend bool operator==(const BandAssignment&, const BandAssignment&) = default;
};

/// Bands held by the typical user of each system. The NTN user may hold two
/// disjoint segments; its rate adds over them.
struct Assignments {
  std::vector<BandAssignment> ntn;
  std::vector<BandAssignment> tn;
};

namespace detail {
inline BandAssignment make_band(System user, Band band, double width, SystemSet co) {
  return {user, band, width, co};
}
}  // namespace detail

/// Band rules per scenario. `shared_access` is the outcome of the access rule
/// (for S1: no BS inside the protection zone); S2 always shares, S3 never.
/// For S3 the plan carries the fixed exclusive split (reserved = NTN share).
inline Assignments assign_bands(ScenarioId scenario, const SpectrumPlan& plan, bool shared_access) {
  plan.validate();
  Assignments a;
  switch (scenario) {
    case ScenarioId::s1_protection_zone:
      a.tn.push_back(detail::make_band(System::tn, Band::shared, plan.shared_mhz,
                                       shared_access ? kBothSystems : kTnOnly));
      if (shared_access)
        a.ntn.push_back(detail::make_band(System::ntn, Band::shared, plan.shared_mhz, kBothSystems));
      else
        a.ntn.push_back(
            detail::make_band(System::ntn, Band::reserved, plan.reserved_ntn_mhz, kNtnOnly));
      break;
    case ScenarioId::s2_sharing_no_zone:
      a.tn.push_back(detail::make_band(System::tn, Band::shared, plan.shared_mhz, kBothSystems));
      a.ntn.push_back(
          detail::make_band(System::ntn, Band::reserved, plan.reserved_ntn_mhz, kNtnOnly));
      a.ntn.push_back(detail::make_band(System::ntn, Band::shared, plan.shared_mhz, kBothSystems));
      break;
    case ScenarioId::s3_no_sharing:
      a.ntn.push_back(
          detail::make_band(System::ntn, Band::exclusive_ntn, plan.reserved_ntn_mhz, kNtnOnly));
      a.tn.push_back(detail::make_band(System::tn, Band::exclusive_tn, plan.shared_mhz, kTnOnly));
      break;
  }
  return a;
}

/// True iff both assignments occupy the same band segment.
inline bool cross_interference_enabled(const BandAssignment& a, const BandAssignment& b) {
  return a.band != Band::none && a.band == b.band;
}

}  // namespace stin
