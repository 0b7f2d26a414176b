#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>

#include "stin/errors.hpp"

namespace stin {

inline constexpr double kSpeedOfLight = 299'792'458.0;  // m/s

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double linear) { return 10.0 * std::log10(linear); }
inline double dbm_to_watt(double dbm) { return std::pow(10.0, dbm / 10.0 - 3.0); }
inline double watt_to_dbm(double watt) { return 10.0 * std::log10(watt) + 30.0; }

struct RadioParams {
  double tx_power_dbm = 0.0;
  double main_lobe_gain_dbi = 0.0;
  double side_lobe_gain_dbi = 0.0;
  double pathloss_exponent = 2.0;
  double carrier_frequency_ghz = 2.0;

  void validate() const {
    if (!(main_lobe_gain_dbi >= side_lobe_gain_dbi))
      throw InvalidParameter("main-lobe gain must be >= side-lobe gain");
    if (!(pathloss_exponent >= 2.0)) throw InvalidParameter("pathloss exponent must be >= 2");
    if (!(carrier_frequency_ghz > 0.0)) throw InvalidParameter("carrier frequency must be > 0");
  }
};

struct LinkResult {
  double desired_power_w = 0.0;
  double interference_power_w = 0.0;
  double noise_power_w = 0.0;
  double sinr = 0.0;
  double spectral_efficiency = 0.0;  // bit/s/Hz
};

/// Counters for conditions handled silently inside the link budget.
struct ChannelDiagnostics {
  std::uint64_t near_field_clamps = 0;
};

inline constexpr double kMinLinkDistanceM = 1.0;

/// (c / 4 pi f)^2, the free-space gain at one metre.
inline double friis_constant(double carrier_frequency_ghz) {
  const double wavelength_over_4pi = kSpeedOfLight / (4.0 * std::numbers::pi * carrier_frequency_ghz * 1e9);
  return wavelength_over_4pi * wavelength_over_4pi;
}

/// Friis-anchored power law K * d^-alpha. Distances below 1 m are clamped.
inline double pathloss_gain(double distance_m, double exponent, double carrier_frequency_ghz,
                            ChannelDiagnostics* diag = nullptr) {
  if (distance_m < kMinLinkDistanceM) {
    distance_m = kMinLinkDistanceM;
    if (diag) ++diag->near_field_clamps;
  }
  return friis_constant(carrier_frequency_ghz) * std::pow(distance_m, -exponent);
}

/// Received power in watts for total link gain `gain_dbi` (tx + rx).
inline double received_power(const RadioParams& tx, double gain_dbi, double distance_m,
                             ChannelDiagnostics* diag = nullptr) {
  return dbm_to_watt(tx.tx_power_dbm + gain_dbi) *
         pathloss_gain(distance_m, tx.pathloss_exponent, tx.carrier_frequency_ghz, diag);
}

inline double shannon_efficiency(double sinr) { return std::log2(1.0 + sinr); }

inline LinkResult aggregate_sinr(double desired_w, std::span<const double> interferers_w,
                                 double noise_w) {
  if (!(noise_w > 0.0)) throw InvalidParameter("noise power must be > 0");
  double interference = 0.0;
  for (double p : interferers_w) interference += p;
  LinkResult r;
  r.desired_power_w = desired_w;
  r.interference_power_w = interference;
  r.noise_power_w = noise_w;
  r.sinr = desired_w / (interference + noise_w);
  r.spectral_efficiency = shannon_efficiency(r.sinr);
  return r;
}

}  // namespace stin
