#include "lumistack/metrics.hpp"

#include <cmath>
#include <string>

namespace lumistack {

namespace {

double ratio_or(std::uint64_t num, std::uint64_t den, bool empty_agrees) {
  if (den == 0) return empty_agrees ? 1.0 : 0.0;
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

std::size_t BinaryMask::count() const noexcept {
  std::size_t n = 0;
  for (auto b : bits_) n += b;
  return n;
}

BinaryMask BinaryMask::inverted() const {
  BinaryMask out(width(), height());
  for (std::size_t i = 0; i < size(); ++i) out.set(i, !(*this)[i]);
  return out;
}

BinaryMask binarize(const GrayImage& prob, std::uint8_t threshold) {
  BinaryMask out(prob.width(), prob.height());
  for (std::size_t i = 0; i < prob.size(); ++i) out.set(i, prob[i] >= threshold);
  return out;
}

BinaryMask mask_from_nonzero(const GrayImage& img) { return binarize(img, 1); }

MetricsReport evaluate(const BinaryMask& pred, const BinaryMask& ref) {
  if (pred.width() != ref.width() || pred.height() != ref.height()) {
    throw InvalidArgument("mask dimensions differ: " + std::to_string(pred.width()) + "x" +
                          std::to_string(pred.height()) + " vs " + std::to_string(ref.width()) +
                          "x" + std::to_string(ref.height()));
  }
  MetricsReport m;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const bool p = pred[i];
    const bool r = ref[i];
    if (p && r) {
      ++m.tp;
    } else if (!p && !r) {
      ++m.tn;
    } else if (p) {
      ++m.fp;
    } else {
      ++m.fn;
    }
  }
  const std::uint64_t total = m.tp + m.tn + m.fp + m.fn;
  const std::uint64_t pred_pos = m.tp + m.fp;
  const std::uint64_t pred_neg = m.tn + m.fn;
  const std::uint64_t uni = m.tp + m.fp + m.fn;

  m.accuracy = static_cast<double>(m.tp + m.tn) / static_cast<double>(total);
  m.sensitivity = ratio_or(m.tp, m.tp + m.fn, pred_pos == 0);
  m.specificity = ratio_or(m.tn, m.tn + m.fp, pred_neg == 0);
  m.dice = ratio_or(2 * m.tp, pred_pos + m.tp + m.fn, true);
  m.jaccard = ratio_or(m.tp, uni, true);
  return m;
}

MeanStdErr summarize(std::span<const double> values) {
  MeanStdErr out;
  if (values.empty()) return out;
  const double n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  out.mean = sum / n;
  if (values.size() < 2) return out;
  double ss = 0.0;
  for (double v : values) ss += (v - out.mean) * (v - out.mean);
  out.std_error = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  return out;
}

}  // namespace lumistack
