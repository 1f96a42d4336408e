#include "lrrt/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lrrt/errors.hpp"

namespace lrrt {

namespace {

constexpr std::uint8_t kFree = static_cast<std::uint8_t>(RegionClass::kFree);
constexpr std::uint8_t kPromising = static_cast<std::uint8_t>(RegionClass::kPromising);

void check_shapes(const ScoreField& scores, const ClassGrid& truth) {
  if (scores.height != truth.height || scores.width != truth.width)
    throw InvalidArgument("loss: score field and ground truth differ in shape");
  if (scores.scores.size() !=
      static_cast<std::size_t>(scores.height) * scores.width * scores.n_classes)
    throw InvalidArgument("loss: score payload does not match its dimensions");
  for (std::uint8_t label : truth.labels)
    if (label >= scores.n_classes) throw InvalidArgument("loss: label outside class range");
}

void check_shapes(const ClassGrid& predicted, const ClassGrid& truth) {
  if (predicted.height != truth.height || predicted.width != truth.width)
    throw InvalidArgument("metric: prediction and ground truth differ in shape");
}

// log S_t for one pixel.
double log_softmax_at(const double* s, int n, int t) {
  const double peak = *std::max_element(s, s + n);
  double sum = 0.0;
  for (int k = 0; k < n; ++k) sum += std::exp(s[k] - peak);
  return (s[t] - peak) - std::log(sum);
}

template <typename PerPixel>
LossResult accumulate(const ScoreField& scores, const ClassGrid& truth, PerPixel&& loss_of) {
  LossResult out;
  const std::size_t n = truth.labels.size();
  out.per_pixel.resize(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const int t = truth.labels[i];
    const double log_s = log_softmax_at(&scores.scores[i * scores.n_classes], scores.n_classes, t);
    out.per_pixel[i] = loss_of(t, log_s);
    total += out.per_pixel[i];
  }
  out.mean = n ? total / static_cast<double>(n) : 0.0;
  return out;
}

std::uint64_t truth_promising(const ClassGrid& truth) {
  const auto count = static_cast<std::uint64_t>(truth.count(RegionClass::kPromising));
  if (count == 0) throw InvalidArgument("metric: ground truth has no promising pixel");
  return count;
}

}  // namespace

LossResult focal_loss(const ScoreField& scores, const ClassGrid& truth, const LossParams& params) {
  check_shapes(scores, truth);
  if (static_cast<int>(params.weights.size()) != scores.n_classes)
    throw InvalidArgument("focal_loss: need one weight per class");
  if (params.gamma < 0.0) throw InvalidArgument("focal_loss: gamma must be >= 0");
  return accumulate(scores, truth, [&](int t, double log_s) {
    const double s = std::exp(log_s);
    return -params.weights[t] * std::pow(1.0 - s, params.gamma) * log_s;
  });
}

LossResult cross_entropy(const ScoreField& scores, const ClassGrid& truth) {
  check_shapes(scores, truth);
  return accumulate(scores, truth, [](int, double log_s) { return -log_s; });
}

std::vector<double> class_weights(const std::vector<std::uint64_t>& pixel_counts) {
  if (pixel_counts.empty()) throw InvalidArgument("class_weights: no classes");
  double total = 0.0;
  for (std::size_t k = 0; k < pixel_counts.size(); ++k) {
    if (pixel_counts[k] == 0)
      throw InvalidArgument("class_weights: class " + std::to_string(k) +
                            " is absent from the dataset");
    total += static_cast<double>(pixel_counts[k]);
  }
  const double n = static_cast<double>(pixel_counts.size());
  std::vector<double> w;
  for (std::uint64_t c : pixel_counts) w.push_back(total / (n * static_cast<double>(c)));
  const double lowest = *std::min_element(w.begin(), w.end());
  for (double& v : w) v /= lowest;
  return w;
}

std::vector<std::uint64_t> class_counts(const ClassGrid& labels) {
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(labels.n_classes), 0);
  for (std::uint8_t l : labels.labels) {
    if (l >= counts.size()) throw InvalidArgument("class_counts: label outside class range");
    ++counts[l];
  }
  return counts;
}

double accuracy(const ClassGrid& predicted, const ClassGrid& truth) {
  check_shapes(predicted, truth);
  const std::uint64_t total = truth_promising(truth);
  std::uint64_t hits = 0;
  for (std::size_t i = 0; i < truth.labels.size(); ++i)
    hits += predicted.labels[i] == kPromising && truth.labels[i] == kPromising;
  return static_cast<double>(hits) / static_cast<double>(total);
}

double redundancy(const ClassGrid& predicted, const ClassGrid& truth) {
  check_shapes(predicted, truth);
  const std::uint64_t total = truth_promising(truth);
  std::uint64_t extra = 0;
  for (std::size_t i = 0; i < truth.labels.size(); ++i)
    extra += predicted.labels[i] == kPromising && truth.labels[i] == kFree;
  return static_cast<double>(extra) / static_cast<double>(total);
}

double direct_metric(const ClassGrid& predicted, const ClassGrid& truth) {
  check_shapes(predicted, truth);
  const std::uint64_t total = truth_promising(truth);
  std::int64_t signed_sum = 0;
  for (std::size_t i = 0; i < truth.labels.size(); ++i) {
    const int c = predicted.labels[i] == kPromising;
    const int g_pr = truth.labels[i] == kPromising;
    const int g_free = truth.labels[i] == kFree;
    signed_sum += c * (g_pr - g_free);
  }
  return 1.0 - static_cast<double>(signed_sum) / static_cast<double>(total);
}

EvalReport combined_metric(const ClassGrid& predicted, const ClassGrid& truth) {
  EvalReport report;
  report.accuracy = accuracy(predicted, truth);
  report.redundancy = redundancy(predicted, truth);
  report.metric = (1.0 - report.accuracy) + report.redundancy;
  const double direct = direct_metric(predicted, truth);
  if (std::abs(direct - report.metric) > 1e-9)
    throw std::logic_error("combined_metric: direct and decomposed forms disagree");
  for (std::size_t i = 0; i < truth.labels.size(); ++i) {
    const auto p = predicted.labels[i];
    const auto t = truth.labels[i];
    if (p < 3 && t < 3) ++report.confusion[p][t];
  }
  return report;
}

}  // namespace lrrt
