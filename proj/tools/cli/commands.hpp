#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace lumistack::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitPartial = 2;

/// Everything a subcommand needs, after argument parsing.
struct JobSpec {
  std::string command;
  std::vector<std::string> inputs;  // files, directories or wildcard patterns
  std::filesystem::path out;        // directory, or CSV file for angles/metrics
  std::string config = "all";
  int size = 128;
  int threads = 1;
  bool emit_png = false;
  std::uint64_t seed = 1;
  std::vector<std::string> which{"rprime", "vstar", "intrinsic", "gray", "sa"};
  // metrics
  std::filesystem::path pred_dir;
  std::filesystem::path ref_dir;
  int threshold = 128;
  // synth
  std::string kind = "planckian";
  int count = 8;
  int jpeg_quality = 0;  // 0 writes PNG
};

/// Expands files, directories (their PNG/JPEG entries) and `*`/`?` patterns
/// in the last path component; result is sorted and de-duplicated.
std::vector<std::filesystem::path> expand_inputs(const std::vector<std::string>& inputs);

/// Thread count from LUMISTACK_THREADS, or 1 when unset or invalid.
int default_threads();

int cmd_transform(const JobSpec& job, std::ostream& log);
int cmd_stack(const JobSpec& job, std::ostream& log);
int cmd_angles(const JobSpec& job, std::ostream& log);
int cmd_metrics(const JobSpec& job, std::ostream& log);
int cmd_synth(const JobSpec& job, std::ostream& log);

/// Parses a full command line (args[0] is the program name) and dispatches.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lumistack::cli
