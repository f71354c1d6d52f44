#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "tactile/simulator.hpp"

namespace tactile {
namespace {

double mean(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / v.size(); }

double stddev(const std::vector<double>& v) {
  const double m = mean(v);
  double s = 0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / v.size());
}

SimConfig quiet() {
  SimConfig cfg;
  cfg.noise_sigma_n = 0.0;
  return cfg;
}

TEST(HeightProfile, RectangularFollowsDuty) {
  const TexturePlateSpec p{GrooveProfile::Rectangular, 4.0, 1.0, 0.5, 60.0};
  EXPECT_EQ(height_profile(p, 0.0), 1.0);
  EXPECT_EQ(height_profile(p, 1.9), 1.0);
  EXPECT_EQ(height_profile(p, 2.0), 0.0);
  EXPECT_EQ(height_profile(p, 3.9), 0.0);
  EXPECT_EQ(height_profile(p, 4.0), 1.0);
}

TEST(HeightProfile, TriangularPeaksMidGroove) {
  const TexturePlateSpec p{GrooveProfile::Triangular, 8.0, 1.0, 0.5, 60.0};
  EXPECT_DOUBLE_EQ(height_profile(p, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(height_profile(p, 1.0), 0.5);
  EXPECT_DOUBLE_EQ(height_profile(p, 2.0), 1.0);
  EXPECT_DOUBLE_EQ(height_profile(p, 3.0), 0.5);
  EXPECT_DOUBLE_EQ(height_profile(p, 6.0), 0.0);
}

TEST(HeightProfile, CircularArcHasDepthAtCentreAndZeroAtEdges) {
  const TexturePlateSpec p{GrooveProfile::Circular, 8.0, 1.0, 0.5, 60.0};
  EXPECT_NEAR(height_profile(p, 2.0), 1.0, 1e-12);
  EXPECT_NEAR(height_profile(p, 0.0), 0.0, 1e-12);
  // Arc radius for a 4 mm chord and 1 mm sagitta is 2.5 mm.
  const double expected = std::sqrt(2.5 * 2.5 - 1.0) - 1.5;
  EXPECT_NEAR(height_profile(p, 1.0), expected, 1e-12);
  EXPECT_EQ(height_profile(p, 5.0), 0.0);
}

TEST(HeightProfile, FlatIsZeroAndOutsideThrows) {
  const TexturePlateSpec flat{};
  EXPECT_EQ(height_profile(flat, 30.0), 0.0);
  try {
    height_profile(flat, 60.5);
    FAIL() << "expected OutOfPlate";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OutOfPlate);
  }
  EXPECT_THROW(height_profile(flat, -0.1), Error);
}

TEST(TextureTrial, LengthMatchesGlide) {
  const auto t = simulate_texture_trial(texture_preset("R1"), SimConfig{}, 1);
  EXPECT_EQ(t.samples.size(), 240u);
  EXPECT_EQ(t.sample_rate_hz, 60.0);
  EXPECT_EQ(t.trial_kind, Task::Texture);
  ASSERT_TRUE(t.seed.has_value());
}

TEST(TextureTrial, FlatNoiselessIsBaseline) {
  const auto t = simulate_texture_trial(texture_preset("F"), quiet(), 3);
  for (double v : t.samples) EXPECT_EQ(v, 12.0);
}

TEST(TextureTrial, NoiselessStaysWithinGrooveRange) {
  const SimConfig cfg = quiet();
  for (const auto& p : texture_presets()) {
    const auto t = simulate_texture_trial(p.plate, cfg, 5);
    for (double v : t.samples) {
      EXPECT_GE(v, cfg.baseline_strain_n - 1e-12) << p.label.name;
      EXPECT_LE(v, cfg.baseline_strain_n + cfg.texture_gain_n_per_mm * p.plate.depth_mm + 1e-12);
    }
  }
}

TEST(TextureTrial, RectangularMeanMatchesDutyCycle) {
  // 60 mm spans whole periods of 4 mm, so the smoothed mean equals duty * depth
  // apart from the clamped edges.
  const auto t = simulate_texture_trial(texture_preset("R1"), quiet(), 1);
  EXPECT_NEAR(mean(t.samples), 12.0 + 2.0 * 0.5, 0.05);
}

TEST(TextureTrial, SameSeedIsBitIdenticalDifferentSeedDiffers) {
  const auto a = simulate_texture_trial(texture_preset("T1"), SimConfig{}, 42);
  const auto b = simulate_texture_trial(texture_preset("T1"), SimConfig{}, 42);
  const auto c = simulate_texture_trial(texture_preset("T1"), SimConfig{}, 43);
  EXPECT_EQ(a.samples, b.samples);
  EXPECT_NE(a.samples, c.samples);
}

TEST(TextureTrial, NoiseHasConfiguredSpread) {
  const auto t = simulate_texture_trial(texture_preset("F"), SimConfig{}, 11);
  EXPECT_NEAR(stddev(t.samples), 0.05, 0.01);
}

TEST(StiffnessTrial, ShapeOfNoiselessTap) {
  const auto cls = stiffness_preset("SPONGE");
  const auto t = simulate_stiffness_trial(cls, quiet(), 1);
  // 0.5 lead + 0.5 rise + 4 hold + 0.3 release + 0.5 tail = 5.8 s.
  ASSERT_EQ(t.samples.size(), 348u);
  EXPECT_EQ(t.samples[0], 0.0);
  EXPECT_EQ(t.samples[29], 0.0);
  EXPECT_DOUBLE_EQ(t.samples[60], 7.0);
  // Inside the hold the strain relaxes at the class slope.
  for (std::size_t i = 70; i < 290; ++i) {
    const double expected = 7.0 - 1.5 * (i / 60.0 - 1.0);
    EXPECT_NEAR(t.samples[i], expected, 1e-9);
  }
  EXPECT_EQ(t.samples.back(), 0.0);
}

TEST(StiffnessTrial, NoContactIsNoiseOnly) {
  const auto t = simulate_stiffness_trial(stiffness_preset("NONE"), SimConfig{}, 9);
  EXPECT_NEAR(mean(t.samples), 0.0, 0.02);
  EXPECT_NEAR(stddev(t.samples), 0.05, 0.01);
}

TEST(StiffnessTrial, InvalidClassIsRejected) {
  StiffnessClassSpec bad{5.0, 0.0, 0.0, 0.3};
  EXPECT_THROW(simulate_stiffness_trial(bad, SimConfig{}, 1), Error);
}

TEST(Config, AbductionScalesBaselineAndNoise) {
  const SimConfig ac = config_for_mode(SimConfig{}, ContactMode::Abduction);
  EXPECT_DOUBLE_EQ(ac.baseline_strain_n, 3.0);
  EXPECT_DOUBLE_EQ(ac.noise_sigma_n, 0.0125);
  const SimConfig fc = config_for_mode(SimConfig{}, ContactMode::Flexion);
  EXPECT_DOUBLE_EQ(fc.baseline_strain_n, 12.0);
}

TEST(Config, InvalidSettingsAreRejected) {
  SimConfig cfg;
  cfg.sample_rate_hz = 0.0;
  EXPECT_THROW(simulate_texture_trial(texture_preset("F"), cfg, 1), Error);
  SimConfig neg;
  neg.noise_sigma_n = -1.0;
  EXPECT_THROW(validate(neg), Error);
}

TEST(Corpus, CountsOrderAndIds) {
  const auto tex = generate_corpus(Task::Texture, ContactMode::Flexion, 60, SimConfig{}, 7);
  ASSERT_EQ(tex.size(), 480u);
  EXPECT_EQ(tex.front().label.name, "F");
  EXPECT_EQ(tex[60].label.name, "R1");
  EXPECT_EQ(tex.back().label.name, "C2");
  EXPECT_EQ(tex[61].trial_id, "texture-FC-R1-1");
  const auto stiff = generate_corpus(Task::Stiffness, ContactMode::Abduction, 60, SimConfig{}, 7);
  ASSERT_EQ(stiff.size(), 300u);
  EXPECT_EQ(stiff.back().label.name, "NONE");
  EXPECT_EQ(stiff.back().contact_mode, ContactMode::Abduction);
}

TEST(Corpus, DeterministicPerSeed) {
  const auto a = generate_corpus(Task::Stiffness, ContactMode::Flexion, 5, SimConfig{}, 3);
  const auto b = generate_corpus(Task::Stiffness, ContactMode::Flexion, 5, SimConfig{}, 3);
  const auto c = generate_corpus(Task::Stiffness, ContactMode::Flexion, 5, SimConfig{}, 4);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].samples, b[i].samples);
    EXPECT_NE(a[i].samples, c[i].samples);
  }
}

TEST(Corpus, TrialsAreIndependentOfCorpusSize) {
  const auto small = generate_corpus(Task::Texture, ContactMode::Flexion, 2, SimConfig{}, 7);
  const auto large = generate_corpus(Task::Texture, ContactMode::Flexion, 5, SimConfig{}, 7);
  EXPECT_EQ(small[2].samples, large[5].samples);  // R1 trial 0 in both
}

TEST(Corpus, ZeroTrialsIsRejected) {
  EXPECT_THROW(generate_corpus(Task::Texture, ContactMode::Flexion, 0, SimConfig{}, 7), Error);
}

}  // namespace
}  // namespace tactile
