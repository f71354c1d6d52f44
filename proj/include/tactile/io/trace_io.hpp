#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "tactile/core.hpp"
#include "tactile/error.hpp"
#include "tactile/io/text.hpp"

namespace tactile::io {

/// One TraceRecord: a single-line JSON object.
inline std::string trace_to_json_line(const StrainTrace& trace) {
  nlohmann::ordered_json j;
  j["id"] = trace.trial_id;
  j["kind"] = std::string(to_string(trace.trial_kind));
  j["mode"] = std::string(to_string(trace.contact_mode));
  j["label"] = trace.label.name;
  j["fs_hz"] = trace.sample_rate_hz;
  j["samples"] = trace.samples;
  if (trace.seed) j["seed"] = *trace.seed;
  return j.dump();
}

inline StrainTrace trace_from_json_line(std::string_view line, std::size_t line_no = 0) {
  const std::string where = "line " + std::to_string(line_no);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::Format, where + ", offset " + std::to_string(e.byte) + ": " + e.what());
  }
  try {
    StrainTrace t;
    t.trial_id = j.at("id").get<std::string>();
    t.trial_kind = parse_task(j.at("kind").get<std::string>());
    t.contact_mode = parse_mode(j.at("mode").get<std::string>());
    t.label = label_from_name(t.trial_kind, j.at("label").get<std::string>());
    t.sample_rate_hz = j.at("fs_hz").get<double>();
    t.samples = j.at("samples").get<std::vector<double>>();
    if (j.contains("seed")) t.seed = j.at("seed").get<std::uint64_t>();
    validate(t);
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Format, where + ": " + e.what());
  } catch (const Error& e) {
    throw Error(ErrorKind::Format, where + ": " + e.what());
  }
}

inline std::string corpus_to_jsonl(std::span<const StrainTrace> traces) {
  std::string out;
  for (const auto& t : traces) {
    out += trace_to_json_line(t);
    out += '\n';
  }
  return out;
}

inline void write_corpus(const std::filesystem::path& path, std::span<const StrainTrace> traces) {
  write_file_atomic(path, corpus_to_jsonl(traces));
}

inline std::vector<StrainTrace> read_corpus(const std::filesystem::path& path) {
  std::vector<StrainTrace> out;
  const auto lines = read_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].find_first_not_of(" \t") == std::string::npos) continue;
    out.push_back(trace_from_json_line(lines[i], i + 1));
  }
  return out;
}

/// Converts a two-column (time_s, strain_n) log into a trace. Non-numeric
/// leading lines are treated as a header. The sample rate comes from the time
/// span and must be uniform to within 1%.
inline StrainTrace trace_from_time_series_csv(const std::filesystem::path& path, Task kind,
                                              ContactMode mode, const ClassLabel& label,
                                              std::string trial_id) {
  std::vector<double> times;
  std::vector<double> values;
  const auto lines = read_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto cells = split(lines[i], ',');
    if (cells.size() != 2) {
      throw Error(ErrorKind::Format, "line " + std::to_string(i + 1) + ": expected 2 columns");
    }
    double t = 0.0;
    double v = 0.0;
    try {
      t = parse_double(cells[0]);
      v = parse_double(cells[1]);
    } catch (const Error&) {
      if (!times.empty()) throw;
      continue;  // header row
    }
    times.push_back(t);
    values.push_back(v);
  }
  if (values.size() < 2) throw Error(ErrorKind::Format, "time series needs at least 2 rows");
  const double span = times.back() - times.front();
  if (!(span > 0.0)) throw Error(ErrorKind::Format, "time column must increase");
  const double dt = span / static_cast<double>(times.size() - 1);
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (std::abs((times[i] - times[i - 1]) - dt) > 0.01 * dt) {
      throw Error(ErrorKind::Format, "non-uniform sampling at row " + std::to_string(i + 1));
    }
  }
  StrainTrace t;
  t.samples = std::move(values);
  t.sample_rate_hz = 1.0 / dt;
  t.trial_kind = kind;
  t.contact_mode = mode;
  t.label = label;
  t.trial_id = std::move(trial_id);
  return t;
}

}  // namespace tactile::io
