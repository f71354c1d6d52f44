#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "tactile/core.hpp"
#include "tactile/error.hpp"
#include "tactile/random.hpp"

namespace tactile {

enum class GrooveProfile { Flat, Rectangular, Triangular, Circular };

/// Geometry of a texture plate. Grooves repeat with `period_mm`; triangular and
/// circular grooves occupy the first half of each period, rectangular ones the
/// first `duty` fraction.
struct TexturePlateSpec {
  GrooveProfile profile = GrooveProfile::Flat;
  double period_mm = 0.0;
  double depth_mm = 0.0;
  double duty = 0.5;
  double length_mm = 60.0;
};

struct StiffnessClassSpec {
  double peak_strain_n = 0.0;
  double hold_slope_n_per_s = 0.0;
  double rise_s = 0.5;
  double release_s = 0.3;
};

struct SimConfig {
  double glide_speed_mm_s = 15.0;
  double sample_rate_hz = 60.0;
  double baseline_strain_n = 12.0;
  double texture_gain_n_per_mm = 2.0;
  double kernel_width_mm = 1.0;
  double noise_sigma_n = 0.05;
  double hold_s = 4.0;
};

/// Zero-strain padding before and after a stiffness tap.
inline constexpr double kStiffnessPadS = 0.5;
/// Abduction contact forces are roughly a quarter of flexion forces.
inline constexpr double kAbductionScale = 0.25;

inline void validate(const TexturePlateSpec& plate) {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::ConfigInvalid, what); };
  if (!(plate.length_mm > 0.0)) fail("plate length_mm must be > 0");
  if (!(plate.depth_mm >= 0.0)) fail("plate depth_mm must be >= 0");
  if (plate.profile == GrooveProfile::Flat) {
    if (plate.depth_mm != 0.0) fail("flat plate must have depth 0");
    return;
  }
  if (!(plate.period_mm > 0.0)) fail("plate period_mm must be > 0");
  if (plate.profile == GrooveProfile::Rectangular && !(plate.duty > 0.0 && plate.duty < 1.0)) {
    fail("rectangular duty must lie in (0, 1)");
  }
}

inline void validate(const StiffnessClassSpec& cls) {
  if (!(cls.peak_strain_n >= 0.0) || !(cls.rise_s > 0.0) || !(cls.release_s > 0.0) ||
      !std::isfinite(cls.hold_slope_n_per_s)) {
    throw Error(ErrorKind::ConfigInvalid, "stiffness spec needs peak >= 0, rise > 0, release > 0");
  }
}

inline void validate(const SimConfig& cfg) {
  const bool ok = cfg.glide_speed_mm_s > 0.0 && cfg.sample_rate_hz > 0.0 &&
                  cfg.baseline_strain_n > 0.0 && cfg.texture_gain_n_per_mm > 0.0 &&
                  cfg.kernel_width_mm > 0.0 && cfg.noise_sigma_n >= 0.0 && cfg.hold_s > 0.0 &&
                  std::isfinite(cfg.glide_speed_mm_s + cfg.sample_rate_hz + cfg.baseline_strain_n +
                                cfg.texture_gain_n_per_mm + cfg.kernel_width_mm +
                                cfg.noise_sigma_n + cfg.hold_s);
  if (!ok) throw Error(ErrorKind::ConfigInvalid, "simulation config has a non-positive field");
}

/// Depth (mm) by which the fingertip drops into the plate at position x.
inline double height_profile(const TexturePlateSpec& plate, double x_mm) {
  if (!(x_mm >= 0.0 && x_mm <= plate.length_mm)) {
    throw Error(ErrorKind::OutOfPlate, "x = " + std::to_string(x_mm) + " mm outside [0, " +
                                           std::to_string(plate.length_mm) + "]");
  }
  if (plate.profile == GrooveProfile::Flat || plate.depth_mm == 0.0) return 0.0;

  const double phase = std::fmod(x_mm, plate.period_mm) / plate.period_mm;
  const double d = plate.depth_mm;
  switch (plate.profile) {
    case GrooveProfile::Rectangular:
      return phase < plate.duty ? d : 0.0;
    case GrooveProfile::Triangular: {
      if (phase >= 0.5) return 0.0;
      const double u = phase / 0.5;
      return d * (1.0 - std::abs(2.0 * u - 1.0));
    }
    case GrooveProfile::Circular: {
      if (phase >= 0.5) return 0.0;
      // Circular arc whose chord at the surface spans the groove width and
      // whose sagitta equals the depth.
      const double width = 0.5 * plate.period_mm;
      const double radius = (width * width / 4.0 + d * d) / (2.0 * d);
      const double offset = phase * plate.period_mm - width / 2.0;
      const double below = radius * radius - offset * offset;
      if (below <= 0.0) return 0.0;
      return std::clamp(std::sqrt(below) - (radius - d), 0.0, d);
    }
    case GrooveProfile::Flat:
      break;
  }
  return 0.0;
}

/// Glide over a plate: baseline contact strain plus the Gaussian-smoothed
/// groove profile scaled by the strain gain, plus white noise.
inline StrainTrace simulate_texture_trial(const TexturePlateSpec& plate, const SimConfig& cfg,
                                          std::uint64_t seed) {
  validate(plate);
  validate(cfg);
  const double step_mm = cfg.glide_speed_mm_s / cfg.sample_rate_hz;
  const auto n = static_cast<std::size_t>(
      std::llround(plate.length_mm / cfg.glide_speed_mm_s * cfg.sample_rate_hz));
  if (n == 0) throw Error(ErrorKind::ConfigInvalid, "plate too short for one sample");

  const auto half = static_cast<long>(std::ceil(4.0 * cfg.kernel_width_mm / step_mm));
  std::vector<double> kernel;
  kernel.reserve(static_cast<std::size_t>(2 * half + 1));
  double kernel_sum = 0.0;
  for (long j = -half; j <= half; ++j) {
    const double x = static_cast<double>(j) * step_mm / cfg.kernel_width_mm;
    kernel.push_back(std::exp(-0.5 * x * x));
    kernel_sum += kernel.back();
  }
  for (double& w : kernel) w /= kernel_sum;

  Rng rng(seed);

  std::vector<double> samples(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = step_mm * static_cast<double>(i);
    double smoothed = 0.0;
    for (long j = -half; j <= half; ++j) {
      const double xs = std::clamp(x + static_cast<double>(j) * step_mm, 0.0, plate.length_mm);
      smoothed += kernel[static_cast<std::size_t>(j + half)] * height_profile(plate, xs);
    }
    samples[i] = cfg.baseline_strain_n + cfg.texture_gain_n_per_mm * smoothed;
    if (cfg.noise_sigma_n > 0.0) samples[i] += cfg.noise_sigma_n * standard_normal(rng);
  }

  StrainTrace trace;
  trace.samples = std::move(samples);
  trace.sample_rate_hz = cfg.sample_rate_hz;
  trace.trial_kind = Task::Texture;
  trace.seed = seed;
  return trace;
}

/// Single tap: linear rise to the peak, affine drift during the hold, linear
/// release, with zero-strain padding on both sides.
inline StrainTrace simulate_stiffness_trial(const StiffnessClassSpec& cls, const SimConfig& cfg,
                                            std::uint64_t seed) {
  validate(cls);
  validate(cfg);
  const double t_onset = kStiffnessPadS;
  const double t_peak = t_onset + cls.rise_s;
  const double t_hold_end = t_peak + cfg.hold_s;
  const double t_release_end = t_hold_end + cls.release_s;
  const double total = t_release_end + kStiffnessPadS;
  const auto n = static_cast<std::size_t>(std::llround(total * cfg.sample_rate_hz));
  const double hold_end_value = cls.peak_strain_n + cls.hold_slope_n_per_s * cfg.hold_s;

  Rng rng(seed);

  std::vector<double> samples(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / cfg.sample_rate_hz;
    double s = 0.0;
    if (t < t_onset) {
      s = 0.0;
    } else if (t < t_peak) {
      s = cls.peak_strain_n * (t - t_onset) / cls.rise_s;
    } else if (t < t_hold_end) {
      s = cls.peak_strain_n + cls.hold_slope_n_per_s * (t - t_peak);
    } else if (t < t_release_end) {
      s = hold_end_value * (1.0 - (t - t_hold_end) / cls.release_s);
    }
    if (cfg.noise_sigma_n > 0.0) s += cfg.noise_sigma_n * standard_normal(rng);
    samples[i] = s;
  }

  StrainTrace trace;
  trace.samples = std::move(samples);
  trace.sample_rate_hz = cfg.sample_rate_hz;
  trace.trial_kind = Task::Stiffness;
  trace.seed = seed;
  return trace;
}

struct TexturePreset {
  ClassLabel label;
  TexturePlateSpec plate;
};

struct StiffnessPreset {
  ClassLabel label;
  StiffnessClassSpec spec;
};

inline std::vector<TexturePreset> texture_presets() {
  auto grooved = [](GrooveProfile p, double period) {
    return TexturePlateSpec{p, period, 1.0, 0.5, 60.0};
  };
  const auto labels = task_labels(Task::Texture);
  return {
      {labels[0], TexturePlateSpec{GrooveProfile::Flat, 0.0, 0.0, 0.5, 60.0}},
      {labels[1], grooved(GrooveProfile::Rectangular, 4.0)},
      {labels[2], grooved(GrooveProfile::Rectangular, 6.0)},
      {labels[3], grooved(GrooveProfile::Rectangular, 8.0)},
      {labels[4], grooved(GrooveProfile::Triangular, 4.0)},
      {labels[5], grooved(GrooveProfile::Triangular, 8.0)},
      {labels[6], grooved(GrooveProfile::Circular, 4.0)},
      {labels[7], grooved(GrooveProfile::Circular, 8.0)},
  };
}

inline std::vector<StiffnessPreset> stiffness_presets() {
  const auto labels = task_labels(Task::Stiffness);
  return {
      {labels[0], {13.0, -0.2, 0.5, 0.3}},
      {labels[1], {12.0, -0.6, 0.5, 0.3}},
      {labels[2], {10.0, -0.9, 0.5, 0.3}},
      {labels[3], {7.0, -1.5, 0.5, 0.3}},
      {labels[4], {0.0, 0.0, 0.5, 0.3}},
  };
}

inline TexturePlateSpec texture_preset(std::string_view name) {
  for (const auto& p : texture_presets()) {
    if (p.label.name == name) return p.plate;
  }
  throw Error(ErrorKind::UnknownLabel, "no texture preset '" + std::string(name) + "'");
}

inline StiffnessClassSpec stiffness_preset(std::string_view name) {
  for (const auto& p : stiffness_presets()) {
    if (p.label.name == name) return p.spec;
  }
  throw Error(ErrorKind::UnknownLabel, "no stiffness preset '" + std::string(name) + "'");
}

/// Configuration actually used for a contact mode.
inline SimConfig config_for_mode(SimConfig cfg, ContactMode mode) {
  if (mode == ContactMode::Abduction) {
    cfg.noise_sigma_n *= kAbductionScale;
    cfg.baseline_strain_n *= kAbductionScale;
  }
  return cfg;
}

inline std::string trial_id(Task task, ContactMode mode, const ClassLabel& label, std::size_t index) {
  return std::string(to_string(task)) + "-" + std::string(to_string(mode)) + "-" + label.name + "-" +
         std::to_string(index);
}

/// Class-major corpus: all trials of the first class, then the next, and so on.
inline std::vector<StrainTrace> generate_corpus(Task task, ContactMode mode,
                                                std::size_t trials_per_class, const SimConfig& cfg,
                                                std::uint64_t seed) {
  if (trials_per_class < 1) throw Error(ErrorKind::ConfigInvalid, "trials_per_class must be >= 1");
  const SimConfig mode_cfg = config_for_mode(cfg, mode);
  validate(mode_cfg);

  std::vector<StrainTrace> corpus;
  auto finish = [&](StrainTrace trace, const ClassLabel& label, std::size_t i) {
    trace.contact_mode = mode;
    trace.label = label;
    trace.trial_id = trial_id(task, mode, label, i);
    corpus.push_back(std::move(trace));
  };
  if (task == Task::Texture) {
    const auto presets = texture_presets();
    corpus.reserve(presets.size() * trials_per_class);
    for (const auto& p : presets) {
      for (std::size_t i = 0; i < trials_per_class; ++i) {
        const auto s = derive_seed(seed, {static_cast<std::uint64_t>(p.label.ordinal), i});
        finish(simulate_texture_trial(p.plate, mode_cfg, s), p.label, i);
      }
    }
  } else {
    const auto presets = stiffness_presets();
    corpus.reserve(presets.size() * trials_per_class);
    for (const auto& p : presets) {
      for (std::size_t i = 0; i < trials_per_class; ++i) {
        const auto s = derive_seed(seed, {static_cast<std::uint64_t>(p.label.ordinal), i});
        finish(simulate_stiffness_trial(p.spec, mode_cfg, s), p.label, i);
      }
    }
  }
  return corpus;
}

}  // namespace tactile
