#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "stin/channel.hpp"
#include "stin/errors.hpp"

namespace stin {

inline constexpr double kZ95 = 1.959963984540054;

/// se [bit/s/Hz] x bandwidth [MHz] -> bit/s.
inline double avg_data_rate(double spectral_efficiency, double bandwidth_mhz) {
  return spectral_efficiency * bandwidth_mhz * 1e6;
}

/// se x density x area x bandwidth -> bit/s.
inline double system_capacity(double spectral_efficiency, double density_per_km2, double area_km2,
                              double bandwidth_mhz) {
  return spectral_efficiency * density_per_km2 * area_km2 * bandwidth_mhz * 1e6;
}

/// bit/s/Hz/km^2.
inline double area_spectrum_efficiency(double sum_rate, double area_km2, double bandwidth_mhz) {
  if (!(area_km2 > 0.0) || !(bandwidth_mhz > 0.0))
    throw InvalidParameter("ASE needs positive area and bandwidth");
  return sum_rate / (bandwidth_mhz * 1e6 * area_km2);
}

/// W/Hz.
inline double interference_intensity(double total_interference_w, double bandwidth_mhz) {
  if (!(bandwidth_mhz > 0.0)) throw InvalidParameter("interference intensity needs bandwidth > 0");
  return total_interference_w / (bandwidth_mhz * 1e6);
}

/// Propagation + serialization + access wait, in ms. A zero rate is an
/// outage and returns +infinity.
inline double e2e_latency(double distance_km, double rate_bps, double packet_bits,
                          double access_wait_slots, double slot_ms) {
  if (!(rate_bps > 0.0)) return std::numeric_limits<double>::infinity();
  const double propagation_ms = distance_km * 1e3 / kSpeedOfLight * 1e3;
  const double transmission_ms = packet_bits / rate_bps * 1e3;
  return propagation_ms + transmission_ms + access_wait_slots * slot_ms;
}

/// bit/J.
inline double energy_efficiency(double throughput_bps, double tx_power_w, double circuit_power_w) {
  const double total = tx_power_w + circuit_power_w;
  if (!(total > 0.0)) throw InvalidParameter("energy efficiency needs positive power draw");
  return throughput_bps / total;
}

/// Fraction with a Wilson score interval.
struct ProportionEstimate {
  double p = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  std::uint64_t trials = 0;

  double half_width() const { return 0.5 * (upper - lower); }
};

inline ProportionEstimate wilson_interval(std::uint64_t successes, std::uint64_t trials,
                                          double z = kZ95) {
  if (trials == 0) return {};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  return {p, std::max(0.0, center - half), std::min(1.0, center + half), trials};
}

inline ProportionEstimate spectrum_access_probability(const std::vector<bool>& trace) {
  if (trace.empty()) throw InvalidParameter("SAP needs at least one access attempt");
  std::uint64_t granted = 0;
  for (bool b : trace) granted += b ? 1 : 0;
  return wilson_interval(granted, trace.size());
}

/// Mean with a 95% normal half-width.
struct Estimate {
  double mean = std::numeric_limits<double>::quiet_NaN();
  double half_width = 0.0;
  std::uint64_t count = 0;
};

/// Mergeable running moments. The sum is Neumaier-compensated and the
/// second moment uses Chan's pairwise update, so merging partials in a
/// different order changes results only at rounding level.
class Accumulator {
 public:
  void add(double x) {
    if (std::isnan(x)) return;
    ++n_;
    add_compensated(x);
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (x - mean_);
  }

  void merge(const Accumulator& o) {
    if (o.n_ == 0) return;
    if (n_ == 0) {
      *this = o;
      return;
    }
    const double na = static_cast<double>(n_), nb = static_cast<double>(o.n_);
    const double delta = o.mean_ - mean_;
    m2_ += o.m2_ + delta * delta * na * nb / (na + nb);
    n_ += o.n_;
    add_compensated(o.sum_);
    comp_ += o.comp_;
    mean_ = sum() / static_cast<double>(n_);
  }

  std::uint64_t count() const { return n_; }
  double sum() const { return sum_ + comp_; }
  double mean() const {
    return n_ ? sum() / static_cast<double>(n_) : std::numeric_limits<double>::quiet_NaN();
  }
  double variance() const { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }

  Estimate estimate() const {
    Estimate e;
    e.count = n_;
    e.mean = mean();
    e.half_width = n_ > 1 ? kZ95 * std::sqrt(variance() / static_cast<double>(n_)) : 0.0;
    return e;
  }

 private:
  void add_compensated(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }

  std::uint64_t n_ = 0;
  double sum_ = 0.0;
  double comp_ = 0.0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

/// Served vs outage split of a count of attempts.
struct OutageTally {
  std::uint64_t served = 0;
  std::uint64_t outage = 0;

  std::uint64_t total() const { return served + outage; }
  double outage_fraction() const {
    return total() ? static_cast<double>(outage) / static_cast<double>(total()) : 0.0;
  }
  double served_fraction() const { return total() ? 1.0 - outage_fraction() : 0.0; }

  void merge(const OutageTally& o) {
    served += o.served;
    outage += o.outage;
  }
};

/// Per-scenario estimates of every metric.
struct MetricsReport {
  Estimate ntn_user_rate;         // bit/s
  Estimate tn_user_rate;          // bit/s
  Estimate ntn_capacity;          // bit/s
  Estimate tn_capacity;           // bit/s
  Estimate sum_capacity;          // bit/s
  Estimate ase;                   // bit/s/Hz/km^2
  ProportionEstimate sap;         // shared-band access
  Estimate interference_intensity;  // W/Hz at the TN receiver
  Estimate e2e_latency;           // ms, outages excluded
  Estimate energy_efficiency;     // bit/J

  Estimate ntn_reserved_rate;  ///< NTN user rate on the reserved band, when held
  Estimate ntn_shared_rate;    ///< NTN user rate on the shared band, when held

  OutageTally ntn_outage;
  OutageTally tn_outage;
  OutageTally latency_outage;

  double mean_bs_count = 0.0;
  double mean_satellite_count = 0.0;
  double mean_visible_satellites = 0.0;
  std::uint64_t near_field_clamps = 0;
  std::uint64_t replication_count = 0;
};

}  // namespace stin
