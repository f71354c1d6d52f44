#include <gtest/gtest.h>

#include <fstream>

#include "tactile/features.hpp"
#include "tactile/io/feature_csv.hpp"
#include "tactile/io/report.hpp"
#include "tactile/io/sim_config.hpp"
#include "tactile/io/svg.hpp"
#include "tactile/io/trace_io.hpp"
#include "tactile/simulator.hpp"
#include "test_util.hpp"

namespace tactile {
namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::Empty;
}

TEST(Text, DoublesRoundTripExactly) {
  for (double v : {0.0, -0.0, 1.0 / 3.0, 1e-300, 6.02214076e23, -12.5, 0.1}) {
    EXPECT_EQ(io::parse_double(io::format_double(v)), v);
  }
  EXPECT_EQ(kind_of([] { io::parse_double("1.5x"); }), ErrorKind::Format);
  EXPECT_EQ(kind_of([] { io::parse_double(""); }), ErrorKind::Format);
}

TEST(Text, SplitKeepsEmptyCells) {
  EXPECT_EQ(io::split("a,,b", ','), (std::vector<std::string>{"a", "", "b"}));
}

TEST(Text, MissingFileIsIoError) {
  EXPECT_EQ(kind_of([] { io::read_file("/nonexistent/dir/file.txt"); }), ErrorKind::Io);
  EXPECT_EQ(kind_of([] { io::write_file_atomic("/nonexistent/dir/file.txt", "x"); }), ErrorKind::Io);
}

TEST(TraceIo, JsonLineRoundTrip) {
  auto t = simulate_texture_trial(texture_preset("T2"), SimConfig{}, 5);
  t.contact_mode = ContactMode::Abduction;
  t.label = label_from_name(Task::Texture, "T2");
  t.trial_id = "texture-AC-T2-0";
  const auto line = io::trace_to_json_line(t);
  EXPECT_EQ(line.find('\n'), std::string::npos);
  const auto back = io::trace_from_json_line(line, 1);
  EXPECT_EQ(back.samples, t.samples);
  EXPECT_EQ(back.label.name, "T2");
  EXPECT_EQ(back.contact_mode, ContactMode::Abduction);
  EXPECT_EQ(back.trial_id, t.trial_id);
  EXPECT_EQ(back.seed, t.seed);
  EXPECT_EQ(io::trace_to_json_line(back), line);
}

TEST(TraceIo, MalformedRecordsAreFormatErrors) {
  EXPECT_EQ(kind_of([] { io::trace_from_json_line("{not json", 3); }), ErrorKind::Format);
  EXPECT_EQ(kind_of([] { io::trace_from_json_line(R"({"id":"x"})", 3); }), ErrorKind::Format);
}

TEST(TraceIo, CorpusFileRoundTrip) {
  const auto dir = test::scratch_dir("corpus");
  const auto corpus = generate_corpus(Task::Stiffness, ContactMode::Flexion, 3, SimConfig{}, 7);
  io::write_corpus(dir / "c.jsonl", corpus);
  const auto back = io::read_corpus(dir / "c.jsonl");
  ASSERT_EQ(back.size(), corpus.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].samples, corpus[i].samples);
    EXPECT_EQ(back[i].label, corpus[i].label);
  }
}

TEST(TraceIo, TimeSeriesCsvImport) {
  const auto dir = test::scratch_dir("timeseries");
  {
    std::ofstream out(dir / "log.csv");
    out << "time_s,strain_n\n";
    for (int i = 0; i < 10; ++i) out << i * 0.01 << "," << i * 0.5 << "\n";
  }
  const auto t = io::trace_from_time_series_csv(dir / "log.csv", Task::Stiffness, ContactMode::Flexion,
                                                label_from_name(Task::Stiffness, "PLA"), "bench-1");
  ASSERT_EQ(t.samples.size(), 10u);
  EXPECT_NEAR(t.sample_rate_hz, 100.0, 1e-9);
  EXPECT_EQ(t.samples[4], 2.0);
  {
    std::ofstream out(dir / "bad.csv");
    out << "0,1\n0.01,2\n0.05,3\n";
  }
  EXPECT_EQ(kind_of([&] {
              io::trace_from_time_series_csv(dir / "bad.csv", Task::Stiffness, ContactMode::Flexion,
                                             label_from_name(Task::Stiffness, "PLA"), "b");
            }),
            ErrorKind::Format);
}

TEST(FeatureCsv, TextureTableShape) {
  const auto corpus = generate_corpus(Task::Texture, ContactMode::Flexion, 2, SimConfig{}, 7);
  const auto csv = io::dataset_to_csv(extract_dataset(corpus));
  const auto lines = io::split(csv, '\n');
  ASSERT_EQ(lines.size(), 18u);  // header + 16 rows + trailing empty
  EXPECT_EQ(io::split(lines[0], ',').size(), 92u);
  EXPECT_EQ(io::split(lines[0], ',').back(), "label");
}

TEST(FeatureCsv, RoundTripPreservesValuesAndTask) {
  const auto corpus = generate_corpus(Task::Stiffness, ContactMode::Flexion, 2, SimConfig{}, 7);
  const Dataset ds = extract_dataset(corpus);
  const Dataset back = io::dataset_from_csv(io::split(io::dataset_to_csv(ds), '\n'));
  EXPECT_EQ(back.task(), Task::Stiffness);
  ASSERT_EQ(back.size(), ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i) {
    EXPECT_EQ(back.row(i).values, ds.row(i).values);
    EXPECT_EQ(back.row(i).label, ds.row(i).label);
  }
}

TEST(FeatureCsv, MalformedTablesAreFormatErrors) {
  using L = std::vector<std::string>;
  EXPECT_EQ(kind_of([] { io::dataset_from_csv(L{}); }), ErrorKind::Format);
  EXPECT_EQ(kind_of([] { io::dataset_from_csv(L{"a,b"}); }), ErrorKind::Format);
  EXPECT_EQ(kind_of([] { io::dataset_from_csv(L{"a,label", "1,2,F"}); }), ErrorKind::Format);
  EXPECT_EQ(kind_of([] { io::dataset_from_csv(L{"a,label", "x,F"}); }), ErrorKind::Format);
  EXPECT_EQ(kind_of([] { io::dataset_from_csv(L{"a,label", "1,PLA"}); }), ErrorKind::Format);
}

io::ReportFile sample_report() {
  io::ReportFile r;
  r.task = "stiffness";
  r.mode = "FC";
  r.config = {6, 2, 7, 10, 3, false};
  CvReport m;
  m.model_name = "knn";
  m.labels = {label_from_name(Task::Stiffness, "PLA"), label_from_name(Task::Stiffness, "NONE")};
  m.run_accuracies = {0.9, 1.0};
  m.fold_accuracies = {{0.8, 1.0}, {1.0, 1.0}};
  m.mean_accuracy = 0.95;
  m.confusion = {{9, 1}, {0, 10}};
  m.seeds = {7, 8};
  r.models.push_back(m);
  return r;
}

TEST(Report, JsonRoundTrip) {
  const auto r = sample_report();
  const auto text = io::report_to_string(r);
  const auto back = io::report_from_string(text);
  EXPECT_EQ(back.task, "stiffness");
  ASSERT_EQ(back.models.size(), 1u);
  EXPECT_EQ(back.models[0].run_accuracies, r.models[0].run_accuracies);
  EXPECT_EQ(back.models[0].confusion, r.models[0].confusion);
  EXPECT_EQ(back.models[0].seeds, r.models[0].seeds);
  EXPECT_EQ(io::report_to_string(back), text);
}

TEST(Report, InconsistentMeanIsRejected) {
  auto r = sample_report();
  r.models[0].mean_accuracy = 0.9;
  EXPECT_EQ(kind_of([&] { io::report_from_string(io::report_to_string(r)); }), ErrorKind::Format);
}

TEST(Report, ParseErrorNamesPosition) {
  try {
    io::report_from_string("{\n  \"task\": ,\n}");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Format);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
}

TEST(Significance, CsvHasPairColumns) {
  const auto corpus = generate_corpus(Task::Stiffness, ContactMode::Flexion, 4, SimConfig{}, 7);
  const auto profile = significance_profile(extract_dataset(corpus));
  const auto dir = test::scratch_dir("sig");
  io::write_significance(dir / "s.csv", profile);
  const auto table = io::read_significance(dir / "s.csv");
  EXPECT_EQ(table.feature_names, stiffness_feature_names());
  EXPECT_EQ(table.pair_columns.size(), 10u);
  EXPECT_EQ(table.pair_columns.front(), "p_PLA|RUBBER_SOLID");
  for (std::size_t f = 0; f < 3; ++f) EXPECT_EQ(table.average_p[f], profile.average_p[f]);
}

TEST(SimConfigJson, OverridesAndRejectsUnknownKeys) {
  const auto cfg = io::sim_config_from_json(R"({"noise_sigma_n": 0.1, "hold_s": 3})");
  EXPECT_EQ(cfg.noise_sigma_n, 0.1);
  EXPECT_EQ(cfg.hold_s, 3.0);
  EXPECT_EQ(cfg.sample_rate_hz, 60.0);
  EXPECT_EQ(kind_of([] { io::sim_config_from_json(R"({"colour": 1})"); }), ErrorKind::Format);
  EXPECT_EQ(kind_of([] { io::sim_config_from_json(R"({"hold_s": -1})"); }), ErrorKind::ConfigInvalid);
}

TEST(Svg, OneBarPerValue) {
  const auto svg = io::grouped_bar_chart_svg("t", {"a", "b"}, {"x", "y"}, {{0.5, 1.0}, {0.25, 0.75}}, "acc");
  std::size_t bars = 0;
  for (std::size_t pos = 0; (pos = svg.find("</title></rect>", pos)) != std::string::npos; ++pos) ++bars;
  EXPECT_EQ(bars, 4u);
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

}  // namespace
}  // namespace tactile
