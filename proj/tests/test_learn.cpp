#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "tactile/learn/classifier.hpp"
#include "tactile/learn/standardizer.hpp"
#include "test_util.hpp"

namespace tactile {
namespace {

using test::make_dataset;

ClassLabel tex(const char* name) { return label_from_name(Task::Texture, name); }

/// Two Gaussian blobs per class on a ring, `per_class` rows each.
Dataset blobs(std::size_t classes, std::size_t per_class, double spread, std::uint64_t seed,
              std::size_t dims = 2) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> noise(0.0, spread);
  const auto names = texture_label_names();
  std::vector<LabeledVector> rows;
  for (std::size_t c = 0; c < classes; ++c) {
    for (std::size_t i = 0; i < per_class; ++i) {
      FeatureVector fv;
      for (std::size_t d = 0; d < dims; ++d) {
        const double centre = 4.0 * std::cos(2.0 * std::numbers::pi * c / classes + d);
        fv.values.push_back(centre + noise(gen));
        fv.names.push_back("x" + std::to_string(d));
      }
      rows.push_back({fv, tex(names[c].c_str()), std::to_string(c) + "-" + std::to_string(i)});
    }
  }
  return build_dataset(rows, Task::Texture, ContactMode::Flexion);
}

TEST(Standardizer, PopulationStatistics) {
  const Dataset ds = make_dataset(Task::Texture, {{{2, 7}, "F"}, {{4, 7}, "R1"}});
  const auto s = standardize_fit(ds);
  EXPECT_DOUBLE_EQ(s.means[0], 3.0);
  EXPECT_DOUBLE_EQ(s.stds[0], 1.0);
  const auto z = standardize_apply(s, ds);
  EXPECT_DOUBLE_EQ(z.row(0).values[0], -1.0);
  EXPECT_DOUBLE_EQ(z.row(1).values[0], 1.0);
  // A constant column carries no information and maps to zero.
  EXPECT_EQ(z.row(0).values[1], 0.0);
  EXPECT_EQ(z.row(1).values[1], 0.0);
}

TEST(Standardizer, EmptyIsRejected) { EXPECT_THROW(standardize_fit(Dataset{}), Error); }

TEST(Knn, MajorityOfNearest) {
  const Dataset ds = make_dataset(
      Task::Texture, {{{0, 0}, "F"}, {{0, 1}, "F"}, {{1, 0}, "F"}, {{5, 5}, "R1"}, {{5, 6}, "R1"}});
  const auto m = knn_fit(ds, 3);
  EXPECT_EQ(knn_predict(m, std::vector<double>{0.2, 0.2}).name, "F");
  EXPECT_EQ(knn_predict(m, std::vector<double>{5, 5.4}).name, "R1");
}

TEST(Knn, VoteTieGoesToNearestNeighbour) {
  const Dataset ds = make_dataset(Task::Texture, {{{0}, "R2"}, {{3}, "F"}});
  const auto m = knn_fit(ds, 2);
  EXPECT_EQ(knn_predict(m, std::vector<double>{1.0}).name, "R2");
  EXPECT_EQ(knn_predict(m, std::vector<double>{2.0}).name, "F");
}

TEST(Knn, KMustNotExceedTrainingRows) {
  const Dataset ds = make_dataset(Task::Texture, {{{0}, "F"}, {{1}, "F"}, {{9}, "R1"}});
  EXPECT_THROW(knn_fit(ds, 4), Error);
  EXPECT_EQ(knn_predict(knn_fit(ds, 3), std::vector<double>{8.9}).name, "F");
}

TEST(Knn, DimensionMismatchIsRejected) {
  const Dataset ds = make_dataset(Task::Texture, {{{0, 1}, "F"}});
  EXPECT_THROW(knn_predict(knn_fit(ds), std::vector<double>{0.0}), Error);
  EXPECT_THROW(knn_fit(ds, 0), Error);
}

TEST(Knn, PredictionsInvariantToUniformScaling) {
  const Dataset ds = blobs(4, 15, 1.5, 3);
  std::vector<Sample> scaled;
  for (const auto& r : ds.rows()) {
    auto v = r.values;
    for (double& x : v) x *= 7.5;
    scaled.push_back({v, r.label, r.trial_id});
  }
  const auto a = knn_fit(ds);
  const auto b = knn_fit(ds.with_rows(scaled));
  for (double x = -5; x <= 5; x += 0.7) {
    for (double y = -5; y <= 5; y += 0.7) {
      EXPECT_EQ(knn_predict(a, std::vector<double>{x, y}),
                knn_predict(b, std::vector<double>{7.5 * x, 7.5 * y}));
    }
  }
}

TEST(Svm, TwoPointLinearMachineHasUnitWeightAndZeroBias) {
  const Dataset ds = make_dataset(Task::Texture, {{{1.0}, "F"}, {{-1.0}, "R1"}});
  const auto model = svm_train(ds, {KernelKind::Linear, 1.0, std::nullopt});
  ASSERT_EQ(model.machines.size(), 1u);
  const auto& m = model.machines[0];
  EXPECT_EQ(m.positive.name, "F");
  EXPECT_NEAR(linear_weights(m, 1)[0], 1.0, 1e-3);
  EXPECT_NEAR(m.bias, 0.0, 1e-3);
  EXPECT_EQ(svm_predict(model, std::vector<double>{0.3}).name, "F");
  EXPECT_EQ(svm_predict(model, std::vector<double>{-0.3}).name, "R1");
}

void expect_dual_feasible(const SvmModel& model) {
  for (const auto& m : model.machines) {
    EXPECT_TRUE(m.converged);
    double balance = 0.0;
    for (std::size_t i = 0; i < m.alphas.size(); ++i) {
      EXPECT_GE(m.alphas[i], 0.0);
      EXPECT_LE(m.alphas[i], model.c + 1e-12);
      balance += m.alphas[i] * m.targets[i];
    }
    EXPECT_NEAR(balance, 0.0, 1e-9);
  }
}

TEST(Svm, DualSolutionIsFeasible) {
  const Dataset ds = blobs(4, 20, 2.0, 8);
  expect_dual_feasible(svm_train(ds, {KernelKind::Linear, 1.0, std::nullopt}));
  expect_dual_feasible(svm_train(ds, {KernelKind::Rbf, 0.5, std::nullopt}));
}

TEST(Svm, SeparableDataIsFittedExactly) {
  const Dataset ds = blobs(5, 12, 0.3, 4);
  for (auto kind : {KernelKind::Linear, KernelKind::Rbf}) {
    const auto model = svm_train(ds, {kind, 10.0, std::nullopt});
    for (const auto& r : ds.rows()) EXPECT_EQ(svm_predict(model, r.values), r.label);
  }
}

TEST(Svm, OneMachinePerClassPair) {
  const auto model = svm_train(blobs(5, 6, 0.5, 1), {});
  EXPECT_EQ(model.machines.size(), 10u);
}

TEST(Svm, InputErrors) {
  const Dataset one = make_dataset(Task::Texture, {{{1}, "F"}, {{2}, "F"}});
  try {
    svm_train(one, {});
    FAIL() << "expected SingleClass";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SingleClass);
  }
  const Dataset two = make_dataset(Task::Texture, {{{1}, "F"}, {{2}, "R1"}});
  EXPECT_THROW(svm_train(two, {KernelKind::Linear, 0.0, std::nullopt}), Error);
  const Dataset bad = make_dataset(Task::Texture, {{{INFINITY}, "F"}, {{2}, "R1"}});
  EXPECT_THROW(svm_train(bad, {}), Error);
}

TEST(Tree, SplitsAtMidpoint) {
  const Dataset ds =
      make_dataset(Task::Texture, {{{1}, "F"}, {{2}, "F"}, {{5}, "F"}, {{6}, "R1"}, {{9}, "R1"}});
  const auto m = tree_train(ds);
  ASSERT_EQ(m.nodes.size(), 3u);
  EXPECT_EQ(m.nodes[0].feature, 0);
  EXPECT_DOUBLE_EQ(m.nodes[0].threshold, 5.5);
  EXPECT_EQ(tree_predict(m, std::vector<double>{5.5}).name, "F");
  EXPECT_EQ(tree_predict(m, std::vector<double>{5.6}).name, "R1");
}

TEST(Tree, PureDataIsASingleLeaf) {
  const Dataset ds = make_dataset(Task::Texture, {{{1}, "R3"}, {{2}, "R3"}});
  const auto m = tree_train(ds);
  EXPECT_EQ(m.leaf_count(), 1u);
  EXPECT_EQ(m.depth(), 0u);
  EXPECT_EQ(tree_predict(m, std::vector<double>{100}).name, "R3");
}

TEST(Tree, MemorisesDistinctTrainingRows) {
  const Dataset ds = blobs(6, 10, 3.0, 12, 3);
  const auto m = tree_train(ds);
  for (const auto& r : ds.rows()) EXPECT_EQ(tree_predict(m, r.values), r.label);
}

TEST(Tree, RootSplitMinimisesGini) {
  std::mt19937_64 gen(99);
  for (int trial = 0; trial < 50; ++trial) {
    const Dataset ds = blobs(3, 8, 3.0, gen(), 3);
    const auto m = tree_train(ds);
    std::vector<int> labels;
    for (const auto& r : ds.rows()) labels.push_back(r.label.ordinal);

    double best = 1e9;
    for (std::size_t f = 0; f < ds.feature_count(); ++f) {
      std::vector<double> col;
      for (const auto& r : ds.rows()) col.push_back(r.values[f]);
      std::vector<double> sorted = col;
      std::sort(sorted.begin(), sorted.end());
      for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
        if (sorted[i] < sorted[i + 1]) {
          best = std::min(best, oracle::split_gini(col, labels, (sorted[i] + sorted[i + 1]) / 2));
        }
      }
    }
    std::vector<double> root;
    for (const auto& r : ds.rows()) root.push_back(r.values[static_cast<std::size_t>(m.nodes[0].feature)]);
    EXPECT_NEAR(oracle::split_gini(root, labels, m.nodes[0].threshold), best, 1e-12);
  }
}

TEST(Model, TypeErasedModelsDispatch) {
  const Dataset ds = blobs(3, 10, 0.3, 21);
  for (const auto& spec : default_model_specs()) {
    Model m(spec);
    EXPECT_THROW(m.predict(ds.row(0).values), Error);
    m.fit(ds);
    EXPECT_EQ(m.predict(ds.row(0).values), ds.row(0).label) << m.name();
  }
  EXPECT_EQ(parse_model_kind("svm-rbf"), ModelKind::SvmRbf);
  EXPECT_THROW(parse_model_kind("forest"), Error);
}

}  // namespace
}  // namespace tactile
