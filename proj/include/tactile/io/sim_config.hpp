#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "tactile/error.hpp"
#include "tactile/io/text.hpp"
#include "tactile/simulator.hpp"

namespace tactile::io {

/// Reads SimConfig overrides from a JSON object; absent keys keep defaults,
/// unknown keys are rejected.
inline SimConfig sim_config_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::Format, "config JSON: " + std::string(e.what()));
  }
  if (!j.is_object()) throw Error(ErrorKind::Format, "config must be a JSON object");
  SimConfig cfg;
  for (const auto& [key, value] : j.items()) {
    if (!value.is_number()) throw Error(ErrorKind::Format, "config key '" + key + "' must be a number");
    const double v = value.get<double>();
    if (key == "glide_speed_mm_s") cfg.glide_speed_mm_s = v;
    else if (key == "sample_rate_hz") cfg.sample_rate_hz = v;
    else if (key == "baseline_strain_n") cfg.baseline_strain_n = v;
    else if (key == "texture_gain_n_per_mm") cfg.texture_gain_n_per_mm = v;
    else if (key == "kernel_width_mm") cfg.kernel_width_mm = v;
    else if (key == "noise_sigma_n") cfg.noise_sigma_n = v;
    else if (key == "hold_s") cfg.hold_s = v;
    else throw Error(ErrorKind::Format, "unknown config key '" + key + "'");
  }
  validate(cfg);
  return cfg;
}

inline SimConfig read_sim_config(const std::filesystem::path& path) {
  return sim_config_from_json(read_file(path));
}

}  // namespace tactile::io
