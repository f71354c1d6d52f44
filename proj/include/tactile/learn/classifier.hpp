#pragma once

#include <concepts>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tactile/core.hpp"
#include "tactile/error.hpp"
#include "tactile/learn/knn.hpp"
#include "tactile/learn/svm.hpp"
#include "tactile/learn/tree.hpp"

namespace tactile {

/// Anything the cross-validation harness can fit and query.
template <class M>
concept Classifier = requires(M m, const M cm, const Dataset& ds, std::span<const double> x) {
  m.fit(ds);
  { cm.predict(x) } -> std::convertible_to<ClassLabel>;
};

enum class ModelKind { Knn, SvmLinear, SvmRbf, DecisionTree };

struct ModelSpec {
  ModelKind kind = ModelKind::Knn;
  std::size_t k = 3;
  double c = 1.0;
  std::optional<double> gamma;
};

constexpr std::string_view model_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::Knn: return "knn";
    case ModelKind::SvmLinear: return "svm-linear";
    case ModelKind::SvmRbf: return "svm-rbf";
    case ModelKind::DecisionTree: return "dtree";
  }
  return "unknown";
}

inline ModelKind parse_model_kind(std::string_view name) {
  for (auto kind : {ModelKind::Knn, ModelKind::SvmLinear, ModelKind::SvmRbf, ModelKind::DecisionTree}) {
    if (model_name(kind) == name) return kind;
  }
  throw Error(ErrorKind::Format, "unknown model '" + std::string(name) + "'");
}

/// Spec with the default hyperparameters (k = 3, C = 1, automatic gamma).
inline ModelSpec model_spec(ModelKind kind) { return ModelSpec{kind, 3, 1.0, std::nullopt}; }

inline std::vector<ModelSpec> default_model_specs() {
  return {model_spec(ModelKind::Knn), model_spec(ModelKind::SvmLinear),
          model_spec(ModelKind::SvmRbf), model_spec(ModelKind::DecisionTree)};
}

/// Type-erased fitted model built from a ModelSpec.
class Model {
 public:
  explicit Model(ModelSpec spec) : spec_(spec) {}

  void fit(const Dataset& train) {
    switch (spec_.kind) {
      case ModelKind::Knn:
        state_ = knn_fit(train, spec_.k);
        break;
      case ModelKind::SvmLinear:
        state_ = svm_train(train, {KernelKind::Linear, spec_.c, spec_.gamma});
        break;
      case ModelKind::SvmRbf:
        state_ = svm_train(train, {KernelKind::Rbf, spec_.c, spec_.gamma});
        break;
      case ModelKind::DecisionTree:
        state_ = tree_train(train);
        break;
    }
  }

  ClassLabel predict(std::span<const double> x) const {
    if (const auto* m = std::get_if<KnnModel>(&state_)) return knn_predict(*m, x);
    if (const auto* m = std::get_if<SvmModel>(&state_)) return svm_predict(*m, x);
    if (const auto* m = std::get_if<TreeModel>(&state_)) return tree_predict(*m, x);
    throw Error(ErrorKind::Empty, "model used before fit");
  }

  const ModelSpec& spec() const { return spec_; }
  std::string name() const { return std::string(model_name(spec_.kind)); }

  template <class T>
  const T* state() const {
    return std::get_if<T>(&state_);
  }

 private:
  ModelSpec spec_;
  std::variant<std::monostate, KnnModel, SvmModel, TreeModel> state_;
};

static_assert(Classifier<Model>);

}  // namespace tactile
