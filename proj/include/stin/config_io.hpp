#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "stin/engine.hpp"
#include "stin/errors.hpp"
#include "stin/scenario.hpp"

namespace stin {

struct SweepSettings {
  std::string parameter = "spectrum.reserved_mhz";
  std::vector<double> values = default_reserved_grid();
  std::vector<ScenarioId> scenarios{ScenarioId::s1_protection_zone, ScenarioId::s2_sharing_no_zone,
                                    ScenarioId::s3_no_sharing};
};

struct CompareSettings {
  std::vector<ScenarioId> scenarios{ScenarioId::s1_protection_zone, ScenarioId::s2_sharing_no_zone,
                                    ScenarioId::s3_no_sharing};
};

/// A parsed configuration file: the scenario plus optional [sweep] and
/// [compare] sections.
struct ConfigDocument {
  ScenarioConfig config;
  std::optional<SweepSettings> sweep;
  std::optional<CompareSettings> compare;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto ws = " \t\r";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

inline bool known_section(std::string_view s) {
  for (std::string_view k : {"region", "terrestrial", "satellite", "ntn_user", "channel", "spectrum",
                             "scenario", "policy", "metrics", "run", "sweep", "compare"})
    if (s == k) return true;
  return false;
}

inline std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = s.find(',');
    const auto item = trim(s.substr(0, comma));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

/// "a, b, c" or "start:stop:step" (inclusive of stop when it lies on the grid).
inline std::vector<double> parse_values(std::string_view s) {
  if (s.find(':') != std::string_view::npos) {
    std::vector<double> parts;
    std::string_view rest = s;
    for (int i = 0; i < 3; ++i) {
      const auto colon = rest.find(':');
      parts.push_back(parse_number(trim(rest.substr(0, colon))));
      if (colon == std::string_view::npos) break;
      rest.remove_prefix(colon + 1);
    }
    if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0])
      throw InvalidParameter("range must be start:stop:step with step > 0 and stop >= start");
    std::vector<double> out;
    const auto n = static_cast<long>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9));
    for (long i = 0; i <= n; ++i) out.push_back(parts[0] + static_cast<double>(i) * parts[2]);
    return out;
  }
  std::vector<double> out;
  for (auto item : split_list(s)) out.push_back(parse_number(item));
  return out;
}

inline std::vector<ScenarioId> parse_scenarios(std::string_view s) {
  std::vector<ScenarioId> out;
  for (auto item : split_list(s)) out.push_back(parse_scenario_token(item));
  if (out.empty()) throw InvalidParameter("expected at least one scenario");
  return out;
}

struct Located {
  std::size_t line = 0;
  std::size_t column = 0;
};

/// Applies one `section.key = value`. Errors are rethrown as ParseError at
/// `at` (key) or `value_at` (value).
inline void apply_entry(ConfigDocument& doc, std::string_view section, std::string_view key,
                        std::string_view value, Located at, Located value_at) {
  const std::string full = std::string(section) + "." + std::string(key);
  try {
    if (section == "sweep") {
      auto& sw = doc.sweep ? *doc.sweep : doc.sweep.emplace();
      if (key == "parameter") {
        const auto* k = find_config_key(value);
        if (!k || !k->set_number)
          throw InvalidParameter("'" + std::string(value) + "' is not a numeric configuration key");
        sw.parameter = std::string(value);
      } else if (key == "values") {
        sw.values = parse_values(value);
      } else if (key == "scenarios") {
        sw.scenarios = parse_scenarios(value);
      } else {
        throw ParseError(at.line, at.column, "unknown key '" + full + "'");
      }
      return;
    }
    if (section == "compare") {
      auto& cmp = doc.compare ? *doc.compare : doc.compare.emplace();
      if (key == "scenarios")
        cmp.scenarios = parse_scenarios(value);
      else
        throw ParseError(at.line, at.column, "unknown key '" + full + "'");
      return;
    }
    if (!find_config_key(full)) throw ParseError(at.line, at.column, "unknown key '" + full + "'");
    set_config_value(doc.config, full, value);
  } catch (const InvalidParameter& e) {
    std::string msg = e.what();
    if (msg.rfind(full, 0) != 0) msg = full + ": " + msg;
    throw ParseError(value_at.line, value_at.column, msg);
  }
}

inline ConfigDocument parse_ini(std::string_view text) {
  ConfigDocument doc;
  std::string section;
  std::vector<std::string> seen;
  std::size_t line_no = 0;
  while (!text.empty() || line_no == 0) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

    const auto comment = line.find_first_of("#;");
    if (comment != std::string_view::npos) line = line.substr(0, comment);
    const auto lead = line.find_first_not_of(" \t\r");
    if (lead == std::string_view::npos) {
      if (text.empty()) break;
      continue;
    }
    const std::size_t col = lead + 1;
    const std::string_view body = trim(line);

    if (body.front() == '[') {
      if (body.back() != ']') throw ParseError(line_no, col, "section header must end with ']'");
      const auto name = trim(body.substr(1, body.size() - 2));
      if (!known_section(name))
        throw ParseError(line_no, col + 1, "unknown section '" + std::string(name) + "'");
      section = std::string(name);
    } else {
      const auto eq = line.find('=');
      if (eq == std::string_view::npos)
        throw ParseError(line_no, col, "expected 'key = value'");
      const auto key = trim(line.substr(0, eq));
      const auto value = trim(line.substr(eq + 1));
      if (key.empty()) throw ParseError(line_no, col, "missing key before '='");
      if (section.empty())
        throw ParseError(line_no, col, "key '" + std::string(key) + "' appears before any [section]");
      const auto value_pos = line.find_first_not_of(" \t", eq + 1);
      const Located value_at{line_no, (value_pos == std::string_view::npos ? eq + 1 : value_pos) + 1};
      if (value.empty()) throw ParseError(value_at.line, value_at.column, "missing value");
      const std::string full = section + "." + std::string(key);
      for (const auto& s : seen)
        if (s == full) throw ParseError(line_no, col, "duplicate key '" + full + "'");
      seen.push_back(full);
      apply_entry(doc, section, key, value, {line_no, col}, value_at);
    }
    if (text.empty()) break;
  }
  return doc;
}

inline Located locate_offset(std::string_view text, std::size_t offset) {
  Located at{1, 1};
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++at.line;
      at.column = 1;
    } else {
      ++at.column;
    }
  }
  return at;
}

/// Position of the first occurrence of `"name"` in the document; nlohmann
/// does not track key locations.
inline Located locate_key(std::string_view text, std::string_view name) {
  const std::string quoted = "\"" + std::string(name) + "\"";
  const auto pos = text.find(quoted);
  return locate_offset(text, pos == std::string_view::npos ? 0 : pos);
}

inline std::string json_scalar(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  if (v.is_number_float()) return format_number(v.get<double>());
  if (v.is_array()) {
    std::string out;
    for (const auto& item : v) out += (out.empty() ? "" : ",") + json_scalar(item);
    return out;
  }
  throw InvalidParameter("expected a scalar or array value");
}

inline ConfigDocument parse_json(std::string_view text) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto at = locate_offset(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError(at.line, at.column, std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) throw ParseError(1, 1, "JSON configuration must be an object");
  ConfigDocument doc;
  for (const auto& [section, body] : root.items()) {
    const auto at = locate_key(text, section);
    if (!known_section(section)) throw ParseError(at.line, at.column, "unknown section '" + section + "'");
    if (!body.is_object())
      throw ParseError(at.line, at.column, "section '" + section + "' must be an object");
    for (const auto& [key, value] : body.items()) {
      const auto key_at = locate_key(text, key);
      std::string scalar;
      try {
        scalar = json_scalar(value);
      } catch (const InvalidParameter& e) {
        throw ParseError(key_at.line, key_at.column, section + "." + key + ": " + e.what());
      }
      apply_entry(doc, section, key, scalar, key_at, key_at);
    }
  }
  return doc;
}

}  // namespace detail

/// Parses INI-style text (or JSON when the first non-blank character is
/// '{'), applies defaults for omitted keys and validates the result.
inline ConfigDocument parse_document(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  ConfigDocument doc = (first != std::string_view::npos && text[first] == '{')
                           ? detail::parse_json(text)
                           : detail::parse_ini(text);
  validate(doc.config);
  return doc;
}

inline ScenarioConfig parse_config(std::string_view text) { return parse_document(text).config; }

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// INI rendering of every key; parse_config(emit_config(c)) == c.
inline std::string emit_config(const ScenarioConfig& config) {
  std::string out;
  std::string section;
  for (const auto& key : config_keys()) {
    const auto dot = key.name.find('.');
    const auto sec = key.name.substr(0, dot);
    if (sec != section) {
      out += (section.empty() ? "[" : "\n[") + sec + "]\n";
      section = sec;
    }
    out += key.name.substr(dot + 1) + " = " + key.get(config) + "\n";
  }
  return out;
}

/// Applies a command-line `key=value` override.
inline void apply_override(ScenarioConfig& config, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos)
    throw InvalidParameter("override '" + std::string(assignment) + "' must be key=value");
  set_config_value(config, detail::trim(assignment.substr(0, eq)),
                   detail::trim(assignment.substr(eq + 1)));
}

// ---------------------------------------------------------------------------
// CSV

struct CsvRow {
  double swept_value = 0.0;
  ScenarioId scenario = ScenarioId::s1_protection_zone;
  MetricsReport report;
};

inline const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols = [] {
    std::vector<std::string> c{"swept_param", "scenario"};
    for (const char* m : {"ntn_user_rate", "tn_user_rate", "ntn_capacity", "tn_capacity",
                          "sum_capacity", "sap", "interference_intensity", "e2e_latency",
                          "energy_efficiency"}) {
      c.push_back(m);
      c.push_back(std::string(m) + "_ci");
    }
    return c;
  }();
  return cols;
}

inline std::string format_csv_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

inline std::string csv_line(const CsvRow& row) {
  const auto& r = row.report;
  std::string out = format_csv_number(row.swept_value);
  out += ',';
  out += scenario_token(row.scenario);
  auto put = [&out](double mean, double ci) {
    out += ',' + format_csv_number(mean) + ',' + format_csv_number(ci);
  };
  put(r.ntn_user_rate.mean, r.ntn_user_rate.half_width);
  put(r.tn_user_rate.mean, r.tn_user_rate.half_width);
  put(r.ntn_capacity.mean, r.ntn_capacity.half_width);
  put(r.tn_capacity.mean, r.tn_capacity.half_width);
  put(r.sum_capacity.mean, r.sum_capacity.half_width);
  put(r.sap.p, r.sap.half_width());
  put(r.interference_intensity.mean, r.interference_intensity.half_width);
  put(r.e2e_latency.mean, r.e2e_latency.half_width);
  put(r.energy_efficiency.mean, r.energy_efficiency.half_width);
  return out;
}

inline std::string csv_header() {
  std::string out;
  for (const auto& c : csv_columns()) out += (out.empty() ? "" : ",") + c;
  return out;
}

inline void emit_csv(std::span<const CsvRow> rows, std::ostream& sink) {
  if (rows.empty()) throw InvalidParameter("no results to write");
  sink << csv_header() << '\n';
  for (const auto& row : rows) sink << csv_line(row) << '\n';
  sink.flush();
  if (!sink) throw IoError("CSV sink failed; output may be partially written");
}

/// Writes the CSV to `path`. Nothing is created when `rows` is empty.
inline void write_csv_file(std::span<const CsvRow> rows, const std::filesystem::path& path) {
  if (rows.empty()) throw InvalidParameter("no results to write");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  try {
    emit_csv(rows, out);
  } catch (const IoError&) {
    throw IoError("write to '" + path.string() + "' failed; the file may be partially written");
  }
}

/// Human-readable multi-line summary of one report.
inline std::string format_summary(const MetricsReport& r, std::string_view label) {
  std::ostringstream s;
  auto line = [&s](const char* name, const Estimate& e, const char* unit) {
    s << "  " << name << ": " << format_csv_number(e.mean) << " +/- "
      << format_csv_number(e.half_width) << ' ' << unit << '\n';
  };
  s << label << " (" << r.replication_count << " replications)\n";
  line("NTN user rate", r.ntn_user_rate, "bit/s");
  line("TN user rate", r.tn_user_rate, "bit/s");
  line("NTN capacity", r.ntn_capacity, "bit/s");
  line("TN capacity", r.tn_capacity, "bit/s");
  line("sum capacity", r.sum_capacity, "bit/s");
  line("ASE", r.ase, "bit/s/Hz/km^2");
  s << "  SAP: " << format_csv_number(r.sap.p) << " [" << format_csv_number(r.sap.lower) << ", "
    << format_csv_number(r.sap.upper) << "] over " << r.sap.trials << " attempts\n";
  line("interference intensity", r.interference_intensity, "W/Hz");
  line("e2e latency", r.e2e_latency, "ms");
  line("energy efficiency", r.energy_efficiency, "bit/J");
  s << "  outage: NTN " << format_csv_number(r.ntn_outage.outage_fraction()) << ", TN "
    << format_csv_number(r.tn_outage.outage_fraction()) << '\n';
  s << "  mean nodes: " << format_csv_number(r.mean_bs_count) << " BSs, "
    << format_csv_number(r.mean_satellite_count) << " satellites, "
    << format_csv_number(r.mean_visible_satellites) << " visible\n";
  return s.str();
}

}  // namespace stin
