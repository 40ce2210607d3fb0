#pragma once

#include <stdexcept>
#include <string>

namespace lumistack {

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by raster and container I/O when a file cannot be decoded or
/// uses an unsupported encoding. The message always names the file.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The image carries no usable chromaticity information (for example a
/// single flat color), so no projection angle can be chosen.
class DegenerateImageError : public std::runtime_error {
 public:
  DegenerateImageError() : std::runtime_error("degenerate chromaticity image") {}
};

}  // namespace lumistack
