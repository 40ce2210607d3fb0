#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lumistack/error.hpp"
#include "lumistack/image.hpp"

namespace lumistack {

/// Channels in canonical stack order.
enum class Channel : std::uint8_t {
  Red,
  Green,
  Blue,
  RPrime,
  VStar,
  Intrinsic,
  Gray,
  ShadedRed,
  ShadedGreen,
  ShadedBlue,
};

/// Ablation configurations: the full 10-channel stack and variants with one
/// component dropped.
enum class StackConfig : std::uint8_t {
  RgbOnly,
  All,
  NoRPrime,
  NoVStar,
  NoGray,
  NoIntrinsic,
  NoSa,
};

inline constexpr std::array kAllConfigs = {
    StackConfig::RgbOnly,     StackConfig::All,         StackConfig::NoRPrime, StackConfig::NoVStar,
    StackConfig::NoGray,      StackConfig::NoIntrinsic, StackConfig::NoSa,
};

inline constexpr int kDefaultStackSize = 128;

std::string_view config_name(StackConfig cfg) noexcept;
std::optional<StackConfig> parse_config(std::string_view name) noexcept;
std::string_view channel_name(Channel ch) noexcept;

/// Channels included by `cfg`, in canonical order.
std::vector<Channel> config_channels(StackConfig cfg);

using FloatPlane = Raster<float>;

struct StackChannel {
  std::string name;
  FloatPlane plane;
  friend bool operator==(const StackChannel&, const StackChannel&) = default;
};

struct ChannelStack {
  std::string config;
  std::vector<StackChannel> channels;

  int width() const { return channels.empty() ? 0 : channels.front().plane.width(); }
  int height() const { return channels.empty() ? 0 : channels.front().plane.height(); }
  const StackChannel* find(std::string_view name) const;

  friend bool operator==(const ChannelStack&, const ChannelStack&) = default;
};

/// Resizes `img` to size x size (nearest neighbour) and assembles the planes
/// `cfg` asks for, all in [0, 1]. Throws DegenerateImageError when the
/// configuration needs the intrinsic image and it cannot be computed.
ChannelStack build_stack(const RgbImage& img, StackConfig cfg, int size = kDefaultStackSize);

// LSTACK container, all integers little-endian:
//   "LSTK" | u16 version (1) | u32 width | u32 height | u16 channel count
//   | u16 length + UTF-8 config name
//   | per channel: u16 length + UTF-8 channel name
//   | planar f32 samples, channel-major, row-major within a channel.
inline constexpr std::uint16_t kStackVersion = 1;

enum class StackErrorKind { BadMagic, BadVersion, Truncated, DimOverflow, BadHeader, Io };

class StackFormatError : public FormatError {
 public:
  StackFormatError(StackErrorKind kind, const std::string& what) : FormatError(what), kind_(kind) {}
  StackErrorKind kind() const noexcept { return kind_; }

 private:
  StackErrorKind kind_;
};

/// Byte size of the header for the given names.
std::size_t stack_header_size(std::string_view config, std::span<const std::string> channel_names);

std::vector<std::uint8_t> encode_stack(const ChannelStack& stack);
ChannelStack decode_stack(std::span<const std::uint8_t> bytes);

void write_stack(const ChannelStack& stack, const std::filesystem::path& path);
ChannelStack read_stack(const std::filesystem::path& path);

}  // namespace lumistack
