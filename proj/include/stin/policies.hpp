#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "stin/errors.hpp"
#include "stin/random.hpp"

namespace stin {

enum class Verdict { idle, busy };

struct SensingResult {
  double test_statistic_w = 0.0;
  double threshold_w = 0.0;
  Verdict verdict = Verdict::idle;

  bool busy() const { return verdict == Verdict::busy; }
};

struct AccessPolicyParams {
  double p_high = 1.0;
  double p_low = 0.0;
  double p_none = 0.0;  ///< joint sensing, both nodes busy
  double threshold_w = 1e-13;
  double satellite_threshold_w = 1e-13;
  double slot_duration_ms = 1.0;
  double primary_activity = 0.5;

  void validate() const {
    if (!(0.0 <= p_none && p_none <= p_low && p_low <= p_high && p_high <= 1.0))
      throw InvalidParameter("access probabilities require 0 <= p_none <= p_low <= p_high <= 1");
    if (!(threshold_w > 0.0) || !(satellite_threshold_w > 0.0))
      throw InvalidParameter("detection thresholds must be > 0");
    if (!(primary_activity >= 0.0 && primary_activity <= 1.0))
      throw InvalidParameter("primary activity must lie in [0, 1]");
  }
};

/// Energy detector: busy iff interference + noise >= threshold.
inline SensingResult energy_detect(double interference_w, double noise_w, double threshold_w) {
  if (!(interference_w >= 0.0) || !(noise_w >= 0.0))
    throw InvalidParameter("sensed powers must be >= 0");
  if (!(threshold_w > 0.0)) throw InvalidParameter("detection threshold must be > 0");
  const double stat = interference_w + noise_w;
  return {stat, threshold_w, stat >= threshold_w ? Verdict::busy : Verdict::idle};
}

/// Nearest-rank (1 - target) quantile of primary-inactive statistics, taking
/// rank floor((1 - target) n) + 1 so that, with busy meaning >= threshold, at
/// most ceil(target n) of the samples would raise an alarm.
inline double calibrate_threshold(std::span<const double> samples, double target_false_alarm) {
  if (samples.empty()) throw InvalidParameter("threshold calibration needs samples");
  if (!(target_false_alarm > 0.0 && target_false_alarm < 1.0))
    throw InvalidParameter("target false-alarm rate must lie in (0, 1)");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double q = 1.0 - target_false_alarm;
  auto rank = static_cast<std::size_t>(std::floor(q * static_cast<double>(sorted.size()))) + 1;
  rank = std::clamp<std::size_t>(rank, 1, sorted.size());
  return sorted[rank - 1];
}

/// Single-node spatial sensing: access with p_high when idle, p_low when busy.
/// One uniform is consumed per call regardless of the verdict.
inline bool sss_access(const SensingResult& result, const AccessPolicyParams& params,
                       RandomStream& rng) {
  const double u = rng.uniform();
  return u < (result.busy() ? params.p_low : params.p_high);
}

/// Two-node fusion: both idle -> p_high, disagreement -> p_low, both busy -> p_none.
inline bool jsss_fuse(const SensingResult& satellite, const SensingResult& user,
                      const AccessPolicyParams& params, RandomStream& rng) {
  const double u = rng.uniform();
  const int busy = static_cast<int>(satellite.busy()) + static_cast<int>(user.busy());
  const double p = busy == 0 ? params.p_high : busy == 1 ? params.p_low : params.p_none;
  return u < p;
}

struct SlotRecord {
  bool primary_on = false;
  bool secondary_access = false;
  bool collision = false;
};

/// Produces the sensing outcome of one slot given the primary state.
using Detector = std::function<SensingResult(bool primary_on, RandomStream& rng)>;

/// Slotted dynamic access: i.i.d. primary activity per slot, secondary
/// transmits on an idle verdict.
inline std::vector<SlotRecord> dsa_simulate(std::uint64_t slots, double primary_activity,
                                            const Detector& detector, RandomStream& rng) {
  if (slots < 1) throw InvalidParameter("DSA needs at least one slot");
  if (!(primary_activity >= 0.0 && primary_activity <= 1.0))
    throw InvalidParameter("primary activity must lie in [0, 1]");
  std::vector<SlotRecord> trace;
  trace.reserve(slots);
  for (std::uint64_t t = 0; t < slots; ++t) {
    SlotRecord rec;
    rec.primary_on = rng.bernoulli(primary_activity);
    rec.secondary_access = !detector(rec.primary_on, rng).busy();
    rec.collision = rec.primary_on && rec.secondary_access;
    trace.push_back(rec);
  }
  return trace;
}

/// Detector that always reports the true primary state.
inline Detector perfect_detector() {
  return [](bool primary_on, RandomStream&) {
    return energy_detect(primary_on ? 2.0 : 0.0, 0.0, 1.0);
  };
}

/// Perfect on idle slots; misses an active primary with probability `miss`.
inline Detector missing_detector(double miss) {
  return [miss](bool primary_on, RandomStream& rng) {
    const bool detected = primary_on && !rng.bernoulli(miss);
    return energy_detect(detected ? 2.0 : 0.0, 0.0, 1.0);
  };
}

}  // namespace stin
