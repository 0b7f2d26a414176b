#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "stin/channel.hpp"
#include "stin/deployment.hpp"
#include "stin/errors.hpp"
#include "stin/metrics.hpp"
#include "stin/policies.hpp"
#include "stin/random.hpp"
#include "stin/scenario.hpp"
#include "stin/spectrum.hpp"

namespace stin {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Everything measured in one replication. Fields that do not apply to the
/// scenario (e.g. the reserved-band rate in S3) are NaN.
struct ReplicationRecord {
  std::uint64_t index = 0;
  std::uint64_t fingerprint = 0;  ///< realization hash, when requested
  std::uint32_t bs_count = 0;
  std::uint32_t satellite_count = 0;
  std::uint32_t visible_satellites = 0;  ///< from the typical NTN user

  bool ntn_outage = false;
  bool tn_outage = false;
  bool inside_zone = false;
  bool shared_attempt = false;
  bool shared_access = false;

  double ntn_rate = 0.0;
  double tn_rate = 0.0;
  double ntn_reserved_rate = kNaN;
  double ntn_shared_rate = kNaN;

  double ntn_own_band_sinr = kNaN;  ///< reserved (S1/S2) or exclusive (S3) band
  double ntn_shared_sinr = kNaN;
  double tn_sinr = kNaN;
  double tn_interference_w = kNaN;
  double interference_intensity = kNaN;

  double latency_ms = std::numeric_limits<double>::infinity();
  double ntn_capacity = 0.0;
  double tn_capacity = 0.0;
  double sum_capacity = 0.0;
  double ase = 0.0;
  double energy_efficiency = kNaN;

  std::uint64_t near_field_clamps = 0;
};

struct RunOptions {
  unsigned workers = 1;  ///< 0 = hardware concurrency
  bool fingerprints = false;
};

/// Per-configuration constants, computed once per run.
class ReplicationModel {
 public:
  explicit ReplicationModel(const ScenarioConfig& config) : config_(config) {
    validate(config_);
    plan_ = config_.plan();
    noise_w_ = dbm_to_watt(config_.noise_dbm);
    policy_.p_high = config_.p_high;
    policy_.p_low = config_.p_low;
    policy_.p_none = config_.p_none;
    policy_.threshold_w = dbm_to_watt(config_.threshold_dbm);
    policy_.satellite_threshold_w = dbm_to_watt(config_.satellite_threshold_dbm);
    policy_.slot_duration_ms = config_.slot_ms;

    const double sats = config_.satellite_density_per_km2 * config_.orbital_sphere_area_km2();
    const double bss =
        config_.bs_density_per_km2 * config_.region().area_km2() * config_.bs_activity;
    const double ntn_tx = ntn_downlink(config_.framework) ? config_.satellite_tx_power_dbm
                                                          : config_.ntn_user_tx_power_dbm;
    const double tn_tx =
        tn_downlink(config_.framework) ? config_.bs_tx_power_dbm : config_.tn_user_tx_power_dbm;
    tx_power_w_ = sats * dbm_to_watt(ntn_tx) + bss * dbm_to_watt(tn_tx);
    circuit_power_w_ = config_.circuit_power_w * (sats + bss);
  }

  const ScenarioConfig& config() const { return config_; }

  /// SINR of `rx` on band segment `seg` in a given snapshot, without fading.
  LinkResult link(const NetworkRealization& real, NodeRef rx, const BandAssignment& seg,
                  ChannelDiagnostics* diag = nullptr) const {
    ChannelDiagnostics local;
    return evaluate_link(real, rx, seg, Fading{}, diag ? *diag : local);
  }

  ReplicationRecord simulate(std::uint64_t replication, bool fingerprint = false) const {
    ReplicationRecord rec;
    rec.index = replication;
    ChannelDiagnostics diag;

    auto geometry_rng = derive_stream(config_.seed, replication, StreamPurpose::geometry);
    const NetworkRealization real = build_realization(config_, geometry_rng);
    if (fingerprint) rec.fingerprint = real.fingerprint();
    rec.bs_count = static_cast<std::uint32_t>(real.bs_positions.size());
    rec.satellite_count = static_cast<std::uint32_t>(real.satellite_positions.size());
    rec.visible_satellites = static_cast<std::uint32_t>(real.ntn_visible[0].size());
    rec.ntn_outage = real.ntn_outage();
    rec.tn_outage = real.tn_outage();

    const Fading fading{config_.rayleigh_fading, config_.seed, replication};

    // Access to the shared band.
    bool shared_access = false;
    switch (config_.scenario) {
      case ScenarioId::s1_protection_zone: {
        rec.shared_attempt = true;
        const ZoneDecision zone = zone_decision(real);
        rec.inside_zone = zone.inside_protection_zone;
        if (config_.access == AccessRule::protection_zone) {
          shared_access = !zone.inside_protection_zone;
        } else {
          auto policy_rng = derive_stream(config_.seed, replication, StreamPurpose::policy);
          const SensingResult user = sense_at_user(real, fading, diag);
          if (config_.access == AccessRule::sss) {
            shared_access = sss_access(user, policy_, policy_rng);
          } else {
            const SensingResult sat = sense_at_satellite(real, fading, diag);
            shared_access = jsss_fuse(sat, user, policy_, policy_rng);
          }
        }
        break;
      }
      case ScenarioId::s2_sharing_no_zone:
        rec.shared_attempt = true;
        shared_access = true;
        break;
      case ScenarioId::s3_no_sharing:
        break;
    }
    rec.shared_access = shared_access;
    const Assignments bands = assign_bands(config_.scenario, plan_, shared_access);

    // NTN side.
    const auto ntn_rx = ntn_receiver(config_.framework, real);
    double ntn_capacity = 0.0;
    for (const auto& seg : bands.ntn) {
      double se = 0.0;
      if (ntn_rx) {
        const LinkResult link = evaluate_link(real, *ntn_rx, seg, fading, diag);
        se = link.spectral_efficiency;
        if (seg.band == Band::shared)
          rec.ntn_shared_sinr = link.sinr;
        else
          rec.ntn_own_band_sinr = link.sinr;
      }
      const double rate = avg_data_rate(se, seg.bandwidth_mhz);
      rec.ntn_rate += rate;
      if (seg.band == Band::reserved) rec.ntn_reserved_rate = rate;
      if (seg.band == Band::shared) rec.ntn_shared_rate = rate;
      ntn_capacity += system_capacity(se, config_.satellite_density_per_km2,
                                      config_.orbital_sphere_area_km2(), seg.bandwidth_mhz);
    }

    // TN side.
    const auto tn_rx = tn_receiver(config_.framework, real);
    double tn_capacity = 0.0;
    for (const auto& seg : bands.tn) {
      double se = 0.0;
      if (tn_rx) {
        const LinkResult link = evaluate_link(real, *tn_rx, seg, fading, diag);
        se = link.spectral_efficiency;
        rec.tn_sinr = link.sinr;
        rec.tn_interference_w = link.interference_power_w;
        if (seg.bandwidth_mhz > 0.0)
          rec.interference_intensity =
              interference_intensity(link.interference_power_w, seg.bandwidth_mhz);
      }
      rec.tn_rate += avg_data_rate(se, seg.bandwidth_mhz);
      tn_capacity += system_capacity(se, config_.bs_density_per_km2, config_.region().area_km2(),
                                     seg.bandwidth_mhz);
    }

    rec.ntn_capacity = ntn_capacity;
    rec.tn_capacity = tn_capacity;
    rec.sum_capacity = ntn_capacity + tn_capacity;
    rec.ase = area_spectrum_efficiency(tn_capacity, config_.region().area_km2(), config_.total_mhz) +
              area_spectrum_efficiency(ntn_capacity, config_.orbital_sphere_area_km2(),
                                       config_.total_mhz);
    if (tx_power_w_ + circuit_power_w_ > 0.0)
      rec.energy_efficiency = stin::energy_efficiency(rec.sum_capacity, tx_power_w_, circuit_power_w_);

    if (!real.ntn_outage()) {
      const double d = norm(real.satellite_xyz[*real.ntn_server[0]] - real.ntn_user_xyz[0]);
      rec.latency_ms = e2e_latency(d, rec.ntn_rate, 8.0 * config_.packet_bytes, 0.0, config_.slot_ms);
    }
    rec.near_field_clamps = diag.near_field_clamps;
    return rec;
  }

 private:
  /// Rayleigh block fading: one unit-mean exponential power gain per
  /// (transmitter, receiver, sample), derived from a counter so every link
  /// draws the same value regardless of evaluation order.
  struct Fading {
    bool enabled = false;
    std::uint64_t seed = 0;
    std::uint64_t replication = 0;

    double gain(NodeRef tx, NodeRef rx, std::uint64_t sample = 0) const {
      if (!enabled) return 1.0;
      std::uint64_t k = mix_key(mix_key(seed, replication), static_cast<std::uint64_t>(StreamPurpose::fading));
      k = mix_key(k, (static_cast<std::uint64_t>(tx.cls) << 60) ^ tx.index);
      k = mix_key(k, (static_cast<std::uint64_t>(rx.cls) << 60) ^ rx.index);
      k = mix_key(k, sample);
      return -std::log1p(-to_unit_interval(k));
    }
  };

  double noise_for(double bandwidth_mhz) const {
    if (!config_.noise_scales_with_bandwidth) return noise_w_;
    return noise_w_ * std::max(bandwidth_mhz, 1e-9) / config_.total_mhz;
  }

  ZoneDecision zone_decision(const NetworkRealization& real) const {
    if (config_.primary_side == PrimarySide::ntn)
      return protection_zone_check(real.ntn_users[0], real.active_bs_positions(),
                                   config_.protection_radius_km);
    const std::vector<PlanarPoint> tn{real.tn_users[0]};
    return protection_zone_check(real.ntn_users[0], tn, config_.protection_radius_km);
  }

  LinkResult evaluate_link(const NetworkRealization& real, NodeRef rx, const BandAssignment& seg,
                           const Fading& fading, ChannelDiagnostics& diag) const {
    const double f = config_.carrier_frequency_ghz;
    double desired = 0.0;
    if (auto s = serving_link(config_.framework, real, rx))
      desired = incident_power(*s, f, &diag) * fading.gain(s->transmitter, rx);
    std::vector<double> interferers;
    for (const auto& src : interference_sources(config_.framework, real, rx, seg.co_channel))
      interferers.push_back(incident_power(src, f, &diag) * fading.gain(src.transmitter, rx));
    return aggregate_sinr(desired, interferers, noise_for(seg.bandwidth_mhz));
  }

  /// TN-system power on the shared band at `rx`, averaged over the sensing
  /// samples when fading is on (a single deterministic sample otherwise).
  double sensed_tn_power(const NetworkRealization& real, Framework probe, NodeRef rx,
                         const Fading& fading, ChannelDiagnostics& diag) const {
    const auto sources = interference_sources(probe, real, rx, kTnOnly);
    const int samples = fading.enabled ? config_.sensing_samples : 1;
    double total = 0.0;
    for (int k = 0; k < samples; ++k)
      for (const auto& src : sources)
        total += incident_power(src, config_.carrier_frequency_ghz, &diag) *
                 fading.gain(src.transmitter, rx, 1 + static_cast<std::uint64_t>(k));
    return total / samples;
  }

  SensingResult sense_at_user(const NetworkRealization& real, const Fading& fading,
                              ChannelDiagnostics& diag) const {
    const Framework probe =
        tn_downlink(config_.framework) ? Framework::ntn_dl_tn_dl : Framework::ntn_dl_tn_ul;
    const double p = sensed_tn_power(real, probe, {NodeClass::ntn_user, 0}, fading, diag);
    return energy_detect(p, noise_w_, policy_.threshold_w);
  }

  SensingResult sense_at_satellite(const NetworkRealization& real, const Fading& fading,
                                   ChannelDiagnostics& diag) const {
    if (real.ntn_outage())
      return {std::numeric_limits<double>::infinity(), policy_.satellite_threshold_w, Verdict::busy};
    const Framework probe =
        tn_downlink(config_.framework) ? Framework::ntn_ul_tn_dl : Framework::ntn_ul_tn_ul;
    const NodeRef sat{NodeClass::satellite, *real.ntn_server[0]};
    const double p = sensed_tn_power(real, probe, sat, fading, diag);
    return energy_detect(p, noise_w_, policy_.satellite_threshold_w);
  }

  ScenarioConfig config_;
  SpectrumPlan plan_;
  double noise_w_ = 0.0;
  AccessPolicyParams policy_;
  double tx_power_w_ = 0.0;
  double circuit_power_w_ = 0.0;
};

/// Runs every replication of `config`. Replication r always draws from the
/// streams derived from (seed, r), so the result does not depend on the
/// worker count.
inline std::vector<ReplicationRecord> run_records(const ScenarioConfig& config,
                                                  RunOptions options = {}) {
  const ReplicationModel model(config);
  const std::uint64_t n = config.replications;
  std::vector<ReplicationRecord> records(n);
  unsigned workers = options.workers ? options.workers : std::thread::hardware_concurrency();
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::min<std::uint64_t>(n, 1024))));

  if (workers == 1) {
    for (std::uint64_t r = 0; r < n; ++r) records[r] = model.simulate(r, options.fingerprints);
    return records;
  }
  constexpr std::uint64_t kChunk = 64;
  std::atomic<std::uint64_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::uint64_t start = next.fetch_add(kChunk);
        if (start >= n) return;
        const std::uint64_t stop = std::min(n, start + kChunk);
        for (std::uint64_t r = start; r < stop; ++r)
          records[r] = model.simulate(r, options.fingerprints);
      }
    });
  }
  pool.clear();
  return records;
}

namespace detail {

/// Partial aggregate over a contiguous block of replications.
struct BlockStats {
  Accumulator ntn_rate, tn_rate, ntn_capacity, tn_capacity, sum_capacity, ase, intensity, latency,
      energy, ntn_reserved, ntn_shared, bs, sats, visible;
  std::uint64_t attempts = 0, granted = 0, clamps = 0;
  OutageTally ntn_outage, tn_outage, latency_outage;

  void add(const ReplicationRecord& r) {
    ntn_rate.add(r.ntn_rate);
    tn_rate.add(r.tn_rate);
    ntn_capacity.add(r.ntn_capacity);
    tn_capacity.add(r.tn_capacity);
    sum_capacity.add(r.sum_capacity);
    ase.add(r.ase);
    intensity.add(r.interference_intensity);
    energy.add(r.energy_efficiency);
    ntn_reserved.add(r.ntn_reserved_rate);
    ntn_shared.add(r.ntn_shared_rate);
    bs.add(r.bs_count);
    sats.add(r.satellite_count);
    visible.add(r.visible_satellites);
    if (std::isfinite(r.latency_ms)) {
      latency.add(r.latency_ms);
      ++latency_outage.served;
    } else {
      ++latency_outage.outage;
    }
    if (r.shared_attempt) {
      ++attempts;
      granted += r.shared_access ? 1 : 0;
    }
    (r.ntn_outage ? ntn_outage.outage : ntn_outage.served) += 1;
    (r.tn_outage ? tn_outage.outage : tn_outage.served) += 1;
    clamps += r.near_field_clamps;
  }

  void merge(const BlockStats& o) {
    for (auto [a, b] : {std::pair{&ntn_rate, &o.ntn_rate}, {&tn_rate, &o.tn_rate},
                        {&ntn_capacity, &o.ntn_capacity}, {&tn_capacity, &o.tn_capacity},
                        {&sum_capacity, &o.sum_capacity}, {&ase, &o.ase},
                        {&intensity, &o.intensity}, {&latency, &o.latency}, {&energy, &o.energy},
                        {&ntn_reserved, &o.ntn_reserved}, {&ntn_shared, &o.ntn_shared},
                        {&bs, &o.bs}, {&sats, &o.sats}, {&visible, &o.visible}})
      a->merge(*b);
    attempts += o.attempts;
    granted += o.granted;
    clamps += o.clamps;
    ntn_outage.merge(o.ntn_outage);
    tn_outage.merge(o.tn_outage);
    latency_outage.merge(o.latency_outage);
  }
};

}  // namespace detail

/// Folds records in fixed blocks of 1024, merged in index order, so the
/// report is a pure function of the record sequence.
inline MetricsReport aggregate(std::span<const ReplicationRecord> records) {
  constexpr std::size_t kBlock = 1024;
  detail::BlockStats total;
  for (std::size_t start = 0; start < records.size(); start += kBlock) {
    detail::BlockStats block;
    const std::size_t stop = std::min(records.size(), start + kBlock);
    for (std::size_t i = start; i < stop; ++i) block.add(records[i]);
    total.merge(block);
  }
  MetricsReport m;
  m.ntn_user_rate = total.ntn_rate.estimate();
  m.tn_user_rate = total.tn_rate.estimate();
  m.ntn_capacity = total.ntn_capacity.estimate();
  m.tn_capacity = total.tn_capacity.estimate();
  m.sum_capacity = total.sum_capacity.estimate();
  m.sum_capacity.mean = m.ntn_capacity.mean + m.tn_capacity.mean;
  m.ase = total.ase.estimate();
  m.sap = wilson_interval(total.granted, total.attempts);
  m.interference_intensity = total.intensity.estimate();
  m.e2e_latency = total.latency.estimate();
  m.energy_efficiency = total.energy.estimate();
  m.ntn_reserved_rate = total.ntn_reserved.estimate();
  m.ntn_shared_rate = total.ntn_shared.estimate();
  m.ntn_outage = total.ntn_outage;
  m.tn_outage = total.tn_outage;
  m.latency_outage = total.latency_outage;
  m.mean_bs_count = total.bs.mean();
  m.mean_satellite_count = total.sats.mean();
  m.mean_visible_satellites = total.visible.mean();
  m.near_field_clamps = total.clamps;
  m.replication_count = records.size();
  return m;
}

inline MetricsReport run(const ScenarioConfig& config, RunOptions options = {}) {
  const auto records = run_records(config, options);
  return aggregate(records);
}

// ---------------------------------------------------------------------------
// Sweeps and comparisons

struct SweepSpec {
  std::string parameter = "spectrum.reserved_mhz";
  std::vector<double> values;
  ScenarioConfig base;
};

/// Default B_R grid: 0..280 MHz in 20 MHz steps.
inline std::vector<double> default_reserved_grid() {
  std::vector<double> v;
  for (int b = 0; b <= 280; b += 20) v.push_back(b);
  return v;
}

struct SweepPoint {
  double value = 0.0;
  ScenarioConfig config;
  MetricsReport report;
};

inline void validate(const SweepSpec& spec) {
  std::vector<ConfigIssue> issues;
  const auto* key = find_config_key(spec.parameter);
  if (!key || !key->set_number)
    issues.push_back({"sweep.parameter", "must name a numeric configuration key"});
  if (spec.values.empty()) issues.push_back({"sweep.values", "must be nonempty"});
  const bool up = std::adjacent_find(spec.values.begin(), spec.values.end(),
                                     [](double a, double b) { return !(a < b); }) ==
                  spec.values.end();
  const bool down = std::adjacent_find(spec.values.begin(), spec.values.end(),
                                       [](double a, double b) { return !(a > b); }) ==
                    spec.values.end();
  if (!up && !down) issues.push_back({"sweep.values", "must be strictly monotone"});
  if (!issues.empty()) throw ConfigError(std::move(issues));
}

/// Configuration of one sweep point, validated.
inline ScenarioConfig sweep_config(const SweepSpec& spec, double value) {
  ScenarioConfig c = spec.base;
  set_config_number(c, spec.parameter, value);
  validate(c);
  return c;
}

/// One run per value. All points share the base seed, so replication r sees
/// the same geometry at every value (common random numbers).
inline std::vector<SweepPoint> sweep(const SweepSpec& spec, RunOptions options = {}) {
  validate(spec);
  std::vector<ScenarioConfig> configs;
  for (double v : spec.values) configs.push_back(sweep_config(spec, v));
  std::vector<SweepPoint> out;
  for (std::size_t i = 0; i < configs.size(); ++i)
    out.push_back({spec.values[i], configs[i], run(configs[i], options)});
  return out;
}

/// Named per-replication metric, used for paired differences.
struct MetricAccessor {
  const char* name;
  double (*value)(const ReplicationRecord&);
};

inline std::span<const MetricAccessor> paired_metrics() {
  static constexpr MetricAccessor kMetrics[] = {
      {"ntn_user_rate", [](const ReplicationRecord& r) { return r.ntn_rate; }},
      {"tn_user_rate", [](const ReplicationRecord& r) { return r.tn_rate; }},
      {"ntn_capacity", [](const ReplicationRecord& r) { return r.ntn_capacity; }},
      {"tn_capacity", [](const ReplicationRecord& r) { return r.tn_capacity; }},
      {"sum_capacity", [](const ReplicationRecord& r) { return r.sum_capacity; }},
      {"ase", [](const ReplicationRecord& r) { return r.ase; }},
      {"sap",
       [](const ReplicationRecord& r) {
         return r.shared_attempt ? (r.shared_access ? 1.0 : 0.0) : 0.0;
       }},
      {"interference_intensity", [](const ReplicationRecord& r) { return r.interference_intensity; }},
      {"e2e_latency",
       [](const ReplicationRecord& r) { return std::isfinite(r.latency_ms) ? r.latency_ms : kNaN; }},
      {"energy_efficiency", [](const ReplicationRecord& r) { return r.energy_efficiency; }},
      {"ntn_reserved_rate", [](const ReplicationRecord& r) { return r.ntn_reserved_rate; }},
      {"ntn_shared_rate", [](const ReplicationRecord& r) { return r.ntn_shared_rate; }},
  };
  return kMetrics;
}

/// Mean and 95% half-width of metric(a) - metric(b) over replications where
/// both are defined.
inline Estimate paired_difference(std::span<const ReplicationRecord> a,
                                  std::span<const ReplicationRecord> b,
                                  double (*metric)(const ReplicationRecord&)) {
  Accumulator acc;
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    const double x = metric(a[i]), y = metric(b[i]);
    if (std::isfinite(x) && std::isfinite(y)) acc.add(x - y);
  }
  return acc.estimate();
}

struct MetricDifference {
  std::string metric;
  Estimate difference;  ///< this row minus the reference row
};

struct ComparisonRow {
  ScenarioConfig config;
  MetricsReport report;
  std::vector<MetricDifference> vs_reference;
};

struct ComparisonTable {
  std::vector<ComparisonRow> rows;  ///< rows[0] is the reference
};

/// Rejects configuration sets that do not share geometry and seeding.
inline void check_comparable(std::span<const ScenarioConfig> configs) {
  if (configs.empty()) throw InvalidComparison("compare needs at least one configuration");
  const auto& ref = configs[0];
  for (std::size_t i = 1; i < configs.size(); ++i) {
    const auto& c = configs[i];
    auto need = [&](bool same, const char* field) {
      if (!same)
        throw InvalidComparison("configuration " + std::to_string(i) + " differs from the reference in " +
                                field);
    };
    need(c.region() == ref.region() && c.earth_radius_km == ref.earth_radius_km, "region");
    need(c.bs_density_per_km2 == ref.bs_density_per_km2, "terrestrial.bs_density_per_km2");
    need(c.satellite_density_per_km2 == ref.satellite_density_per_km2,
         "satellite.density_per_km2");
    need(c.altitude_km == ref.altitude_km, "satellite.altitude_km");
    need(c.service_radius_km == ref.service_radius_km, "terrestrial.service_radius_km");
    need(c.ntn_user_offset_km == ref.ntn_user_offset_km &&
             c.ntn_user_bearing_deg == ref.ntn_user_bearing_deg,
         "ntn_user placement");
    need(c.seed == ref.seed, "run.seed");
    need(c.replications == ref.replications, "run.replications");
  }
}

/// Paired-seed comparison against configs[0].
inline ComparisonTable compare(std::span<const ScenarioConfig> configs, RunOptions options = {}) {
  check_comparable(configs);
  std::vector<std::vector<ReplicationRecord>> records;
  for (const auto& c : configs) records.push_back(run_records(c, options));
  ComparisonTable table;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    ComparisonRow row{configs[i], aggregate(records[i]), {}};
    for (const auto& m : paired_metrics())
      row.vs_reference.push_back({m.name, paired_difference(records[i], records[0], m.value)});
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace stin
