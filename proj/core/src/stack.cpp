#include "lumistack/stack.hpp"

#include <algorithm>
#include <bit>
#include <climits>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>

#include "lumistack/colorbands.hpp"
#include "lumistack/intrinsic.hpp"
#include "lumistack/odgray.hpp"
#include "lumistack/shading.hpp"

namespace lumistack {

namespace {

constexpr std::array<char, 4> kMagic = {'L', 'S', 'T', 'K'};

struct ConfigInfo {
  StackConfig config;
  std::string_view name;
  std::optional<Channel> dropped_first;
  int dropped_count;  // consecutive channels removed starting at dropped_first
};

constexpr std::array<ConfigInfo, 7> kConfigTable = {{
    {StackConfig::RgbOnly, "rgb_only", Channel::RPrime, 7},
    {StackConfig::All, "all", std::nullopt, 0},
    {StackConfig::NoRPrime, "no_rprime", Channel::RPrime, 1},
    {StackConfig::NoVStar, "no_vstar", Channel::VStar, 1},
    {StackConfig::NoGray, "no_gray", Channel::Gray, 1},
    {StackConfig::NoIntrinsic, "no_intrinsic", Channel::Intrinsic, 1},
    {StackConfig::NoSa, "no_sa", Channel::ShadedRed, 3},
}};

const ConfigInfo& info(StackConfig cfg) {
  for (const auto& row : kConfigTable) {
    if (row.config == cfg) return row;
  }
  throw InvalidArgument("unknown stack configuration");
}

FloatPlane to_float(const PlaneImage& plane) {
  return map_pixels(plane, [](double v) { return static_cast<float>(v); });
}

FloatPlane channel_to_float(const RgbImage& img, int k) {
  return map_pixels(img, [k](const Rgb8& px) { return static_cast<float>(px[k] / 255.0); });
}

[[noreturn]] void stack_error(StackErrorKind kind, const std::string& what) {
  throw StackFormatError(kind, what);
}

class ByteWriter {
 public:
  explicit ByteWriter(std::vector<std::uint8_t>& out) : out_(out) {}

  template <typename U>
  void put(U value) {
    using Bits = std::conditional_t<sizeof(U) == 2, std::uint16_t, std::uint32_t>;
    const auto bits = std::bit_cast<Bits>(value);
    for (std::size_t i = 0; i < sizeof(U); ++i) out_.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
  }

  void put_string(std::string_view s) {
    put(static_cast<std::uint16_t>(s.size()));
    out_.insert(out_.end(), s.begin(), s.end());
  }

 private:
  std::vector<std::uint8_t>& out_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t remaining() const { return bytes_.size() - pos_; }

  void need(std::size_t n, const char* what) {
    if (remaining() < n) stack_error(StackErrorKind::Truncated, std::string("truncated ") + what);
  }

  template <typename U>
  U get(const char* what) {
    need(sizeof(U), what);
    using Bits = std::conditional_t<sizeof(U) == 2, std::uint16_t, std::uint32_t>;
    Bits bits = 0;
    for (std::size_t i = 0; i < sizeof(U); ++i) bits |= static_cast<Bits>(Bits{bytes_[pos_ + i]} << (8 * i));
    pos_ += sizeof(U);
    return std::bit_cast<U>(bits);
  }

  std::string get_string(const char* what) {
    const auto len = get<std::uint16_t>(what);
    need(len, what);
    std::string s(reinterpret_cast<const char*>(bytes_.data() + pos_), len);
    pos_ += len;
    return s;
  }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string_view config_name(StackConfig cfg) noexcept {
  for (const auto& row : kConfigTable) {
    if (row.config == cfg) return row.name;
  }
  return "unknown";
}

std::optional<StackConfig> parse_config(std::string_view name) noexcept {
  for (const auto& row : kConfigTable) {
    if (row.name == name) return row.config;
  }
  return std::nullopt;
}

std::string_view channel_name(Channel ch) noexcept {
  switch (ch) {
    case Channel::Red: return "R";
    case Channel::Green: return "G";
    case Channel::Blue: return "B";
    case Channel::RPrime: return "R_prime";
    case Channel::VStar: return "V_star";
    case Channel::Intrinsic: return "Intrinsic";
    case Channel::Gray: return "GRAY";
    case Channel::ShadedRed: return "SA_R";
    case Channel::ShadedGreen: return "SA_G";
    case Channel::ShadedBlue: return "SA_B";
  }
  return "unknown";
}

std::vector<Channel> config_channels(StackConfig cfg) {
  const ConfigInfo& row = info(cfg);
  std::vector<Channel> out;
  for (int c = 0; c <= static_cast<int>(Channel::ShadedBlue); ++c) {
    if (row.dropped_first) {
      const int first = static_cast<int>(*row.dropped_first);
      if (c >= first && c < first + row.dropped_count) continue;
    }
    out.push_back(static_cast<Channel>(c));
  }
  return out;
}

const StackChannel* ChannelStack::find(std::string_view name) const {
  for (const auto& ch : channels) {
    if (ch.name == name) return &ch;
  }
  return nullptr;
}

ChannelStack build_stack(const RgbImage& img, StackConfig cfg, int size) {
  if (size < 1) throw InvalidArgument("stack size must be positive");
  const RgbImage small = resize_nearest(img, size, size);
  const std::vector<Channel> wanted = config_channels(cfg);
  const auto wants = [&](Channel ch) {
    return std::find(wanted.begin(), wanted.end(), ch) != wanted.end();
  };

  std::optional<PlaneImage> intrinsic;
  if (wants(Channel::Intrinsic) || wants(Channel::ShadedRed)) intrinsic = intrinsic_image(small);
  std::optional<RgbImage> shaded;
  if (wants(Channel::ShadedRed)) shaded = shading_attenuate(small, *intrinsic);

  ChannelStack stack;
  stack.config = std::string(config_name(cfg));
  for (Channel ch : wanted) {
    StackChannel out{std::string(channel_name(ch)), FloatPlane(size, size)};
    switch (ch) {
      case Channel::Red: out.plane = channel_to_float(small, 0); break;
      case Channel::Green: out.plane = channel_to_float(small, 1); break;
      case Channel::Blue: out.plane = channel_to_float(small, 2); break;
      case Channel::RPrime: out.plane = to_float(r_prime(small)); break;
      case Channel::VStar: out.plane = to_float(v_star(small)); break;
      case Channel::Intrinsic: out.plane = to_float(*intrinsic); break;
      case Channel::Gray: out.plane = to_float(od_grayscale(small)); break;
      case Channel::ShadedRed: out.plane = channel_to_float(*shaded, 0); break;
      case Channel::ShadedGreen: out.plane = channel_to_float(*shaded, 1); break;
      case Channel::ShadedBlue: out.plane = channel_to_float(*shaded, 2); break;
    }
    stack.channels.push_back(std::move(out));
  }
  return stack;
}

std::size_t stack_header_size(std::string_view config, std::span<const std::string> channel_names) {
  std::size_t n = kMagic.size() + 2 + 4 + 4 + 2 + 2 + config.size();
  for (const auto& name : channel_names) n += 2 + name.size();
  return n;
}

std::vector<std::uint8_t> encode_stack(const ChannelStack& stack) {
  if (stack.channels.empty()) throw InvalidArgument("cannot encode an empty channel stack");
  if (stack.channels.size() > std::numeric_limits<std::uint16_t>::max()) {
    throw InvalidArgument("too many channels for LSTACK");
  }
  const auto check_name = [](const std::string& s) {
    if (s.size() > std::numeric_limits<std::uint16_t>::max()) {
      throw InvalidArgument("name too long for LSTACK: " + s.substr(0, 32));
    }
  };
  check_name(stack.config);
  std::vector<std::string> names;
  for (const auto& ch : stack.channels) {
    if (!ch.plane.same_shape(stack.channels.front().plane)) {
      throw InvalidArgument("all stack planes must share dimensions");
    }
    check_name(ch.name);
    names.push_back(ch.name);
  }

  const auto w = static_cast<std::uint32_t>(stack.width());
  const auto h = static_cast<std::uint32_t>(stack.height());
  std::vector<std::uint8_t> bytes;
  bytes.reserve(stack_header_size(stack.config, names) +
                stack.channels.size() * std::size_t{w} * h * sizeof(float));
  ByteWriter out(bytes);
  bytes.insert(bytes.end(), kMagic.begin(), kMagic.end());
  out.put(kStackVersion);
  out.put(w);
  out.put(h);
  out.put(static_cast<std::uint16_t>(stack.channels.size()));
  out.put_string(stack.config);
  for (const auto& name : names) out.put_string(name);
  for (const auto& ch : stack.channels) {
    for (float v : ch.plane) out.put(v);
  }
  return bytes;
}

ChannelStack decode_stack(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kMagic.size()) stack_error(StackErrorKind::Truncated, "truncated magic");
  if (std::memcmp(bytes.data(), kMagic.data(), kMagic.size()) != 0) {
    stack_error(StackErrorKind::BadMagic, "bad magic");
  }
  ByteReader in(bytes.subspan(kMagic.size()));
  const auto version = in.get<std::uint16_t>("version");
  if (version != kStackVersion) {
    stack_error(StackErrorKind::BadVersion, "unsupported version " + std::to_string(version));
  }
  const auto w = in.get<std::uint32_t>("width");
  const auto h = in.get<std::uint32_t>("height");
  const auto count = in.get<std::uint16_t>("channel count");
  if (w == 0 || h == 0 || count == 0) stack_error(StackErrorKind::BadHeader, "empty dimensions");
  if (w > static_cast<std::uint32_t>(INT_MAX) || h > static_cast<std::uint32_t>(INT_MAX)) {
    stack_error(StackErrorKind::DimOverflow, "dimensions overflow");
  }

  ChannelStack stack;
  stack.config = in.get_string("config name");
  std::vector<std::string> names;
  names.reserve(count);
  for (std::uint16_t c = 0; c < count; ++c) names.push_back(in.get_string("channel name"));

  const std::uint64_t area = std::uint64_t{w} * h;
  const std::uint64_t limit = std::numeric_limits<std::size_t>::max() / sizeof(float) / count;
  if (area > limit) stack_error(StackErrorKind::DimOverflow, "dimensions overflow");
  const std::size_t payload = static_cast<std::size_t>(area) * count * sizeof(float);
  in.need(payload, "payload");
  if (in.remaining() != payload) stack_error(StackErrorKind::BadHeader, "trailing bytes after payload");

  for (auto& name : names) {
    std::vector<float> samples(static_cast<std::size_t>(area));
    for (float& v : samples) v = in.get<float>("payload");
    stack.channels.push_back(
        {std::move(name), FloatPlane(static_cast<int>(w), static_cast<int>(h), std::move(samples))});
  }
  return stack;
}

void write_stack(const ChannelStack& stack, const std::filesystem::path& path) {
  const auto bytes = encode_stack(stack);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) stack_error(StackErrorKind::Io, path.string() + ": cannot create file");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) stack_error(StackErrorKind::Io, path.string() + ": write failed");
}

ChannelStack read_stack(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) stack_error(StackErrorKind::Io, path.string() + ": cannot open file");
  const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                        std::istreambuf_iterator<char>());
  try {
    return decode_stack(bytes);
  } catch (const StackFormatError& e) {
    throw StackFormatError(e.kind(), path.string() + ": " + e.what());
  }
}

}  // namespace lumistack
