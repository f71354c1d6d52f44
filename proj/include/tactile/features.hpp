#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <span>
#include <string>
#include <vector>

#include "tactile/core.hpp"
#include "tactile/dft.hpp"
#include "tactile/error.hpp"

namespace tactile {

inline constexpr std::size_t kTextureWindow = 180;
inline constexpr double kTextureLeadCropS = 0.5;

struct Window {
  std::size_t start_index = 0;
  std::size_t length = 0;
  std::vector<double> samples;
};

/// Skips the leading flat section and keeps the next `length` samples; the
/// remainder of the trial is ignored.
inline Window window_trace(const StrainTrace& trace, double lead_crop_s = kTextureLeadCropS,
                           std::size_t length = kTextureWindow) {
  const auto start = static_cast<std::size_t>(std::ceil(lead_crop_s * trace.sample_rate_hz));
  const std::size_t required = start + length;
  if (trace.samples.size() < required) {
    throw Error(ErrorKind::TooShort, "trace '" + trace.trial_id + "' needs " +
                                         std::to_string(required) + " samples, has " +
                                         std::to_string(trace.samples.size()));
  }
  Window w;
  w.start_index = start;
  w.length = length;
  w.samples.assign(trace.samples.begin() + static_cast<std::ptrdiff_t>(start),
                   trace.samples.begin() + static_cast<std::ptrdiff_t>(required));
  return w;
}

inline std::vector<double> zero_mean(std::span<const double> samples) {
  if (samples.empty()) throw Error(ErrorKind::Empty, "zero_mean of an empty sequence");
  double mean = 0.0;
  for (double v : samples) mean += v;
  mean /= static_cast<double>(samples.size());
  // Second pass removes the rounding left by the first estimate.
  double residual = 0.0;
  for (double v : samples) residual += v - mean;
  mean += residual / static_cast<double>(samples.size());

  std::vector<double> out(samples.size());
  std::transform(samples.begin(), samples.end(), out.begin(), [mean](double v) { return v - mean; });
  return out;
}

inline std::string frequency_feature_name(double hz) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "freq_%.2f", hz);
  return buf;
}

inline std::vector<std::string> texture_feature_names(double fs = 60.0,
                                                      std::size_t length = kTextureWindow) {
  std::vector<std::string> names;
  for (std::size_t k = 0; k <= length / 2; ++k) {
    names.push_back(
        frequency_feature_name(static_cast<double>(k) * fs / static_cast<double>(length)));
  }
  return names;
}

/// Fourier magnitudes of the cropped, zero-mean glide window.
inline FeatureVector texture_features(const StrainTrace& trace,
                                      double lead_crop_s = kTextureLeadCropS,
                                      std::size_t length = kTextureWindow) {
  const Window w = window_trace(trace, lead_crop_s, length);
  const auto centered = zero_mean(w.samples);
  Spectrum spectrum = dft_magnitudes(centered, trace.sample_rate_hz);
  // The window has zero mean, so its DC bin is zero; drop the rounding residue.
  spectrum.mags[0] = 0.0;

  FeatureVector fv;
  fv.values = std::move(spectrum.mags);
  fv.names.reserve(spectrum.freqs.size());
  for (double f : spectrum.freqs) fv.names.push_back(frequency_feature_name(f));
  return fv;
}

struct PhaseSegmentation {
  std::size_t onset_index = 0;
  std::size_t peak_index = 0;
  std::size_t static_start = 0;
  std::size_t static_end = 0;  // inclusive
  std::size_t release_index = 0;
  bool contact_detected = false;
};

struct SegmentOptions {
  double onset_threshold_n = 0.5;
  double release_fraction = 0.5;
  std::size_t guard_samples = 6;
  /// Length of the fallback static window when no contact is detected.
  double hold_s = 4.0;
};

inline constexpr std::size_t kMinStaticSpan = 10;

/// Splits a tap into dynamic deformation, static deformation and release.
inline PhaseSegmentation segment_phases(const StrainTrace& trace, const SegmentOptions& opt = {}) {
  validate(trace);
  const auto& s = trace.samples;
  const std::size_t n = s.size();
  PhaseSegmentation seg;

  const auto onset = std::find_if(s.begin(), s.end(),
                                  [&](double v) { return v > opt.onset_threshold_n; });
  if (onset == s.end()) {
    const auto len = std::min<std::size_t>(
        n, static_cast<std::size_t>(std::llround(opt.hold_s * trace.sample_rate_hz)));
    seg.static_start = (n - len) / 2;
    seg.static_end = seg.static_start + (len > 0 ? len - 1 : 0);
    seg.onset_index = seg.peak_index = seg.static_start;
    seg.release_index = seg.static_end;
    return seg;
  }

  seg.contact_detected = true;
  seg.onset_index = static_cast<std::size_t>(onset - s.begin());
  seg.peak_index = static_cast<std::size_t>(std::max_element(onset, s.end()) - s.begin());
  const double release_level = opt.release_fraction * s[seg.peak_index];
  seg.release_index = n - 1;
  for (std::size_t i = seg.peak_index + 1; i < n; ++i) {
    if (s[i] < release_level) {
      seg.release_index = i;
      break;
    }
  }
  seg.static_start = seg.peak_index + opt.guard_samples;
  const std::size_t end =
      seg.release_index >= opt.guard_samples ? seg.release_index - opt.guard_samples : 0;
  if (end < seg.static_start || end - seg.static_start < kMinStaticSpan) {
    throw Error(ErrorKind::StaticPhaseTooShort,
                "trace '" + trace.trial_id + "': static phase [" +
                    std::to_string(seg.static_start) + ", " + std::to_string(end) + "] too short");
  }
  seg.static_end = end;
  return seg;
}

struct RegressionResult {
  double slope = 0.0;
  double intercept = 0.0;
  double r = 0.0;
};

/// Ordinary least squares of y on t with the Pearson correlation.
inline RegressionResult linear_fit(std::span<const double> t, std::span<const double> y) {
  if (t.size() != y.size()) {
    throw Error(ErrorKind::LengthMismatch, "linear_fit: |t| != |y|");
  }
  if (t.size() < 2) throw Error(ErrorKind::TooFewPoints, "linear_fit needs at least 2 points");
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (!(t[i] > t[i - 1])) {
      throw Error(ErrorKind::ConfigInvalid, "linear_fit: t must be strictly increasing");
    }
  }
  const auto n = static_cast<double>(t.size());
  double t_mean = 0.0;
  double y_mean = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    t_mean += t[i];
    y_mean += y[i];
  }
  t_mean /= n;
  y_mean /= n;

  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double dt = t[i] - t_mean;
    const double dy = y[i] - y_mean;
    sxx += dt * dt;
    sxy += dt * dy;
    syy += dy * dy;
  }
  if (syy / n < 1e-15) return {0.0, y[0], 0.0};

  RegressionResult out;
  out.slope = sxy / sxx;
  out.intercept = y_mean - out.slope * t_mean;
  out.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  return out;
}

inline const std::vector<std::string>& stiffness_feature_names() {
  static const std::vector<std::string> names{"slope", "intercept", "r"};
  return names;
}

/// Line fit over the static deformation phase, time measured from its start.
inline FeatureVector stiffness_features(const StrainTrace& trace, const SegmentOptions& opt = {}) {
  const PhaseSegmentation seg = segment_phases(trace, opt);
  std::vector<double> t;
  std::vector<double> y;
  for (std::size_t i = seg.static_start; i <= seg.static_end; ++i) {
    t.push_back(static_cast<double>(i - seg.static_start) / trace.sample_rate_hz);
    y.push_back(trace.samples[i]);
  }
  const RegressionResult fit = linear_fit(t, y);
  return FeatureVector{{fit.slope, fit.intercept, fit.r}, stiffness_feature_names()};
}

inline FeatureVector extract_features(const StrainTrace& trace) {
  return trace.trial_kind == Task::Texture ? texture_features(trace) : stiffness_features(trace);
}

/// Extracts every trace of one task/mode into a dataset, preserving order.
inline Dataset extract_dataset(std::span<const StrainTrace> traces) {
  if (traces.empty()) throw Error(ErrorKind::Empty, "no traces to extract");
  const Task task = traces.front().trial_kind;
  const ContactMode mode = traces.front().contact_mode;
  std::vector<LabeledVector> rows;
  rows.reserve(traces.size());
  for (const auto& trace : traces) {
    if (trace.trial_kind != task || trace.contact_mode != mode) {
      throw Error(ErrorKind::MixedTasks, "trace '" + trace.trial_id + "' is " +
                                             std::string(to_string(trace.trial_kind)) + "/" +
                                             std::string(to_string(trace.contact_mode)) +
                                             ", expected " + std::string(to_string(task)) + "/" +
                                             std::string(to_string(mode)));
    }
    rows.push_back({extract_features(trace), trace.label, trace.trial_id});
  }
  return build_dataset(rows, task, mode);
}

}  // namespace tactile
