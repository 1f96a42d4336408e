#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "lrrt/region.hpp"

namespace lrrt {

/// Raw (pre-softmax) per-pixel class scores, row-major with class fastest.
struct ScoreField {
  int height = 0;
  int width = 0;
  int n_classes = kDefaultClassCount;
  std::vector<double> scores;

  ScoreField() = default;
  ScoreField(int h, int w, int k)
      : height(h), width(w), n_classes(k), scores(static_cast<std::size_t>(h) * w * k, 0.0) {}

  double& at(int y, int x, int k) {
    return scores[(static_cast<std::size_t>(y) * width + x) * n_classes + k];
  }
  double at(int y, int x, int k) const {
    return scores[(static_cast<std::size_t>(y) * width + x) * n_classes + k];
  }
};

struct LossParams {
  double gamma = 2.0;
  std::vector<double> weights{1.0, 1.0, 1.0};
};

struct LossResult {
  std::vector<double> per_pixel;  ///< row-major
  double mean = 0.0;
};

/// Weighted focal loss. Per pixel with true class t:
///   l = -w[t] * (1 - S_t)^gamma * log S_t,   S = softmax(scores)
/// computed through a max-shifted log-softmax.
LossResult focal_loss(const ScoreField& scores, const ClassGrid& truth, const LossParams& params);

/// Unweighted cross-entropy -log S_t on the same inputs.
LossResult cross_entropy(const ScoreField& scores, const ClassGrid& truth);

/// Inverse-frequency weights total / (n_classes * count[k]), scaled so the
/// smallest weight is 1. Throws InvalidArgument if any class is absent.
std::vector<double> class_weights(const std::vector<std::uint64_t>& pixel_counts);

/// Per-class pixel counts of a label grid.
std::vector<std::uint64_t> class_counts(const ClassGrid& labels);

struct EvalReport {
  double accuracy = 0.0;
  double redundancy = 0.0;
  double metric = 0.0;
  /// confusion[predicted][true] pixel counts (3 x 3; unused rows stay zero).
  std::array<std::array<std::uint64_t, 3>, 3> confusion{};
};

/// Fraction of ground-truth promising pixels predicted promising.
double accuracy(const ClassGrid& predicted, const ClassGrid& truth);

/// Ground-truth free pixels predicted promising, over the ground-truth
/// promising count. Pixels that are obstacle in the ground truth never
/// count.
double redundancy(const ClassGrid& predicted, const ClassGrid& truth);

/// metric = (1 - accuracy) + redundancy. Also evaluates the direct form
///   1 - sum(c * (g_pr - g_free)) / sum(g_pr)
/// and throws std::logic_error if the two disagree beyond 1e-9.
EvalReport combined_metric(const ClassGrid& predicted, const ClassGrid& truth);

/// The direct single-sum form on its own.
double direct_metric(const ClassGrid& predicted, const ClassGrid& truth);

}  // namespace lrrt
