#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lumistack/image.hpp"

namespace lumistack {

inline constexpr std::uint8_t kDefaultThreshold = 128;

class BinaryMask {
 public:
  BinaryMask(int width, int height, bool fill = false)
      : bits_(width, height, static_cast<std::uint8_t>(fill)) {}

  int width() const noexcept { return bits_.width(); }
  int height() const noexcept { return bits_.height(); }
  std::size_t size() const noexcept { return bits_.size(); }

  bool operator[](std::size_t i) const { return bits_[i] != 0; }
  bool at(int x, int y) const { return bits_(x, y) != 0; }
  void set(std::size_t i, bool on) { bits_[i] = static_cast<std::uint8_t>(on); }
  void set(int x, int y, bool on) { bits_(x, y) = static_cast<std::uint8_t>(on); }

  std::size_t count() const noexcept;
  BinaryMask inverted() const;

  friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

 private:
  Raster<std::uint8_t> bits_;
};

/// Pixel is positive iff its 8-bit value is >= threshold.
BinaryMask binarize(const GrayImage& prob, std::uint8_t threshold = kDefaultThreshold);

/// Pixel is positive iff non-zero.
BinaryMask mask_from_nonzero(const GrayImage& img);

struct MetricsReport {
  std::uint64_t tp = 0;
  std::uint64_t tn = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  double accuracy = 0.0;
  double sensitivity = 0.0;
  double specificity = 0.0;
  double dice = 0.0;
  double jaccard = 0.0;
};

/// Confusion counts and the five overlap metrics of `pred` against `ref`.
///
/// An empty denominator resolves to 1 when the prediction agrees with the
/// reference on that (empty) set and 0 otherwise: sensitivity with no
/// reference positives is 1 iff pred has no positives, specificity with no
/// reference negatives is 1 iff pred has no negatives, and dice/jaccard of
/// two empty masks are 1.
MetricsReport evaluate(const BinaryMask& pred, const BinaryMask& ref);

struct MeanStdErr {
  double mean = 0.0;
  double std_error = 0.0;  // sample std (n - 1) / sqrt(n); 0 for n < 2
};

MeanStdErr summarize(std::span<const double> values);

}  // namespace lumistack
