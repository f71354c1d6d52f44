// Simulates a small corpus for each task, extracts features and reports
// cross-validated accuracy plus the most discriminative features.

#include <algorithm>
#include <cstdio>
#include <numeric>

#include "tactile/tactile.hpp"

int main() {
  using namespace tactile;

  for (Task task : {Task::Texture, Task::Stiffness}) {
    const auto corpus = generate_corpus(task, ContactMode::Flexion, 20, SimConfig{}, 1);
    const Dataset ds = extract_dataset(corpus);
    std::printf("%s: %zu trials, %zu features, %zu classes\n", std::string(to_string(task)).c_str(),
                ds.size(), ds.feature_count(), ds.labels().size());

    for (const auto& spec : default_model_specs()) {
      const CvReport r = cross_validate(ds, spec, {5, 3, 1});
      std::printf("  %-10s mean accuracy %.3f\n", r.model_name.c_str(), r.mean_accuracy);
    }

    const auto profile = significance_profile(ds);
    std::vector<std::size_t> order(profile.average_p.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return profile.average_p[a] < profile.average_p[b]; });
    std::printf("  most discriminative features:");
    for (std::size_t i = 0; i < std::min<std::size_t>(3, order.size()); ++i) {
      std::printf(" %s (p=%.2g)", profile.feature_names[order[i]].c_str(), profile.average_p[order[i]]);
    }
    std::printf("\n");
  }
  return 0;
}
