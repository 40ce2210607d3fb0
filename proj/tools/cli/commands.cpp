#include "commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <thread>

#include "lumistack/colorbands.hpp"
#include "lumistack/image_io.hpp"
#include "lumistack/intrinsic.hpp"
#include "lumistack/metrics.hpp"
#include "lumistack/odgray.hpp"
#include "lumistack/shading.hpp"
#include "lumistack/stack.hpp"
#include "lumistack/synth.hpp"

namespace lumistack::cli {

namespace fs = std::filesystem;

namespace {

const std::set<std::string> kTransforms = {"rprime", "vstar", "intrinsic", "gray", "sa"};

class Log {
 public:
  explicit Log(std::ostream& os) : os_(os) {}
  void line(const std::string& msg) {
    std::lock_guard lock(mu_);
    os_ << msg << '\n';
  }

 private:
  std::ostream& os_;
  std::mutex mu_;
};

bool is_image_file(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

bool wildcard_match(std::string_view pattern, std::string_view text) {
  if (pattern.empty()) return text.empty();
  if (pattern.front() == '*') {
    for (std::size_t i = 0; i <= text.size(); ++i) {
      if (wildcard_match(pattern.substr(1), text.substr(i))) return true;
    }
    return false;
  }
  if (text.empty()) return false;
  if (pattern.front() != '?' && pattern.front() != text.front()) return false;
  return wildcard_match(pattern.substr(1), text.substr(1));
}

std::string fmt_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// Runs fn(i) for i in [0, n) on up to `threads` workers; fn must not throw.
template <typename Fn>
void for_each_index(std::size_t n, int threads, Fn&& fn) {
  const std::size_t workers = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), 1, std::max<std::size_t>(n, 1));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) fn(i);
  };
  if (workers == 1) {
    work();
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
}

bool ensure_dir(const fs::path& dir, Log& log) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    log.line("error: cannot create output directory " + dir.string());
    return false;
  }
  return true;
}

std::optional<std::vector<fs::path>> collect(const JobSpec& job, Log& log) {
  auto files = expand_inputs(job.inputs);
  if (files.empty()) {
    log.line("error: no input images matched");
    return std::nullopt;
  }
  return files;
}

int finish(std::size_t failures, std::size_t total, Log& log) {
  if (failures == 0) return kExitOk;
  log.line(std::to_string(failures) + " of " + std::to_string(total) + " images failed");
  return kExitPartial;
}

PlaneImage to_plane(const FloatPlane& plane) {
  return map_pixels(plane, [](float v) { return static_cast<double>(v); });
}

}  // namespace

std::vector<fs::path> expand_inputs(const std::vector<std::string>& inputs) {
  std::set<fs::path> found;
  for (const auto& raw : inputs) {
    const fs::path p(raw);
    const std::string name = p.filename().string();
    std::error_code ec;
    if (name.find_first_of("*?") != std::string::npos) {
      const fs::path dir = p.has_parent_path() ? p.parent_path() : fs::path(".");
      for (const auto& entry : fs::directory_iterator(dir, ec)) {
        if (entry.is_regular_file() && wildcard_match(name, entry.path().filename().string())) {
          found.insert(entry.path());
        }
      }
    } else if (fs::is_directory(p, ec)) {
      for (const auto& entry : fs::directory_iterator(p, ec)) {
        if (entry.is_regular_file() && is_image_file(entry.path())) found.insert(entry.path());
      }
    } else if (fs::exists(p, ec)) {
      found.insert(p);
    }
  }
  return {found.begin(), found.end()};
}

int default_threads() {
  if (const char* env = std::getenv("LUMISTACK_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 1024) return static_cast<int>(v);
  }
  return 1;
}

int cmd_transform(const JobSpec& job, std::ostream& os) {
  Log log(os);
  for (const auto& w : job.which) {
    if (!kTransforms.contains(w)) {
      log.line("error: unknown transform '" + w + "' (expected rprime, vstar, intrinsic, gray, sa)");
      return kExitUsage;
    }
  }
  const auto files = collect(job, log);
  if (!files) return kExitUsage;
  if (!ensure_dir(job.out, log)) return kExitUsage;

  std::atomic<std::size_t> failures{0};
  for_each_index(files->size(), job.threads, [&](std::size_t i) {
    const fs::path& path = (*files)[i];
    const std::string stem = path.stem().string();
    bool ok = true;
    try {
      const RgbImage img = load_image(path);
      std::optional<PlaneImage> intrinsic;
      const auto need_intrinsic = [&]() -> const PlaneImage& {
        if (!intrinsic) intrinsic = intrinsic_image(img);
        return *intrinsic;
      };
      for (const auto& w : job.which) {
        const fs::path dest = job.out / (stem + "_" + w + ".png");
        try {
          if (w == "rprime") save_plane_png(r_prime(img), dest);
          else if (w == "vstar") save_plane_png(v_star(img), dest);
          else if (w == "intrinsic") save_plane_png(need_intrinsic(), dest);
          else if (w == "gray") save_plane_png(od_grayscale(img), dest);
          else if (w == "sa") save_rgb_png(shading_attenuate(img, need_intrinsic()), dest);
        } catch (const std::exception& e) {
          ok = false;
          log.line(path.string() + ": " + w + ": " + e.what());
        }
      }
    } catch (const std::exception& e) {
      ok = false;
      log.line(e.what());
    }
    if (!ok) ++failures;
  });
  return finish(failures, files->size(), log);
}

int cmd_stack(const JobSpec& job, std::ostream& os) {
  Log log(os);
  const auto cfg = parse_config(job.config);
  if (!cfg) {
    log.line("error: unknown config '" + job.config +
             "' (expected rgb_only, all, no_rprime, no_vstar, no_gray, no_intrinsic, no_sa)");
    return kExitUsage;
  }
  if (job.size < 1) {
    log.line("error: --size must be positive");
    return kExitUsage;
  }
  const auto files = collect(job, log);
  if (!files) return kExitUsage;
  if (!ensure_dir(job.out, log)) return kExitUsage;

  std::atomic<std::size_t> failures{0};
  for_each_index(files->size(), job.threads, [&](std::size_t i) {
    const fs::path& path = (*files)[i];
    const std::string stem = path.stem().string();
    try {
      const ChannelStack stack = build_stack(load_image(path), *cfg, job.size);
      write_stack(stack, job.out / (stem + ".lstack"));
      if (job.emit_png) {
        for (const auto& ch : stack.channels) {
          save_plane_png(to_plane(ch.plane), job.out / (stem + "_" + ch.name + ".png"));
        }
      }
    } catch (const std::exception& e) {
      ++failures;
      log.line(path.string() + ": " + e.what());
    }
  });
  return finish(failures, files->size(), log);
}

int cmd_angles(const JobSpec& job, std::ostream& os) {
  Log log(os);
  const auto files = collect(job, log);
  if (!files) return kExitUsage;
  if (job.out.has_parent_path() && !ensure_dir(job.out.parent_path(), log)) return kExitUsage;

  struct Row {
    bool ok = false;
    int angle = 0;
    double entropy = 0.0;
  };
  std::vector<Row> rows(files->size());
  for_each_index(files->size(), job.threads, [&](std::size_t i) {
    try {
      const ChiPlane chi = project_chi(log_chromaticity(load_image((*files)[i])));
      const EntropyScan scan = min_entropy_angle(chi);
      rows[i] = {true, scan.best_angle, scan.min_entropy};
    } catch (const std::exception& e) {
      log.line((*files)[i].string() + ": " + e.what());
    }
  });

  std::ofstream csv(job.out);
  if (!csv) {
    log.line("error: cannot write " + job.out.string());
    return kExitUsage;
  }
  csv << "filename,best_angle_degrees,min_entropy\n";
  std::array<std::size_t, kLastAngle + 1> counts{};
  std::size_t failures = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].ok) {
      ++failures;
      continue;
    }
    ++counts[rows[i].angle];
    csv << csv_field((*files)[i].filename().string()) << ',' << rows[i].angle << ','
        << fmt_number(rows[i].entropy) << '\n';
  }

  if (job.emit_png) {
    // One column per angle; bar height proportional to the count.
    constexpr int kPlotHeight = 100;
    const std::size_t peak = std::max<std::size_t>(1, *std::max_element(counts.begin(), counts.end()));
    GrayImage plot(kLastAngle, kPlotHeight, 0);
    for (int a = kFirstAngle; a <= kLastAngle; ++a) {
      const int bar = static_cast<int>(counts[a] * kPlotHeight / peak);
      for (int y = kPlotHeight - bar; y < kPlotHeight; ++y) plot(a - 1, y) = 255;
    }
    fs::path png = job.out;
    png.replace_filename(job.out.stem().string() + "_histogram.png");
    try {
      save_gray_png(plot, png);
    } catch (const std::exception& e) {
      log.line(e.what());
      return kExitPartial;
    }
  }
  return finish(failures, files->size(), log);
}

int cmd_metrics(const JobSpec& job, std::ostream& os) {
  Log log(os);
  if (job.threshold < 0 || job.threshold > 255) {
    log.line("error: --threshold must be in [0, 255]");
    return kExitUsage;
  }
  const auto preds = expand_inputs({job.pred_dir.string()});
  if (preds.empty()) {
    log.line("error: no prediction masks found in " + job.pred_dir.string());
    return kExitUsage;
  }
  std::map<std::string, fs::path> refs;
  for (const auto& p : expand_inputs({job.ref_dir.string()})) refs.emplace(p.stem().string(), p);
  if (job.out.has_parent_path() && !ensure_dir(job.out.parent_path(), log)) return kExitUsage;

  std::ofstream csv(job.out);
  if (!csv) {
    log.line("error: cannot write " + job.out.string());
    return kExitUsage;
  }
  csv << "image,accuracy,sensitivity,specificity,dice,jaccard,error\n";
  std::array<std::vector<double>, 5> columns;
  std::size_t failures = 0;
  for (const auto& pred_path : preds) {
    const std::string stem = pred_path.stem().string();
    try {
      const auto ref_it = refs.find(stem);
      if (ref_it == refs.end()) throw InvalidArgument("no reference mask named " + stem);
      const BinaryMask pred = binarize(load_gray(pred_path), static_cast<std::uint8_t>(job.threshold));
      const BinaryMask ref = mask_from_nonzero(load_gray(ref_it->second));
      const MetricsReport m = evaluate(pred, ref);
      const std::array<double, 5> values = {m.accuracy, m.sensitivity, m.specificity, m.dice, m.jaccard};
      csv << csv_field(stem);
      for (std::size_t k = 0; k < values.size(); ++k) {
        csv << ',' << fmt_number(values[k]);
        columns[k].push_back(values[k]);
      }
      csv << ",\n";
    } catch (const std::exception& e) {
      ++failures;
      log.line(pred_path.string() + ": " + e.what());
      csv << csv_field(stem) << ",,,,,," << csv_field(e.what()) << '\n';
    }
  }
  std::array<MeanStdErr, 5> summary;
  for (std::size_t k = 0; k < summary.size(); ++k) summary[k] = summarize(columns[k]);
  csv << "mean";
  for (const auto& s : summary) csv << ',' << fmt_number(s.mean);
  csv << ",\nstd_error";
  for (const auto& s : summary) csv << ',' << fmt_number(s.std_error);
  csv << ",\n";
  return finish(failures, preds.size(), log);
}

int cmd_synth(const JobSpec& job, std::ostream& os) {
  Log log(os);
  if (job.kind != "planckian" && job.kind != "lesion" && job.kind != "skin") {
    log.line("error: unknown kind '" + job.kind + "' (expected planckian, lesion, skin)");
    return kExitUsage;
  }
  if (job.count < 1 || job.size < 8) {
    log.line("error: --count must be >= 1 and --size >= 8");
    return kExitUsage;
  }
  if (job.jpeg_quality < 0 || job.jpeg_quality > 100) {
    log.line("error: --jpeg quality must be in [1, 100]");
    return kExitUsage;
  }
  if (!ensure_dir(job.out, log)) return kExitUsage;

  std::atomic<std::size_t> failures{0};
  for_each_index(static_cast<std::size_t>(job.count), job.threads, [&](std::size_t i) {
    std::seed_seq seq{static_cast<std::uint32_t>(job.seed), static_cast<std::uint32_t>(job.seed >> 32),
                      static_cast<std::uint32_t>(i)};
    std::mt19937_64 rng(seq);
    char name[64];
    std::snprintf(name, sizeof(name), "%s_%05zu.%s", job.kind.c_str(), i, job.jpeg_quality > 0 ? "jpg" : "png");
    try {
      RgbImage img(1, 1);
      if (job.kind == "planckian") {
        RandomSceneOptions opts;
        opts.width = opts.height = job.size;
        img = render_planckian(random_planckian_scene(rng, opts));
      } else if (job.kind == "lesion") {
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        const LesionPhantom ph = lesion_phantom(job.size, job.size, 0.15 + 0.2 * unit(rng), 0.35 + 0.4 * unit(rng));
        img = render_skin(ph.skin, ph.scene);
      } else {
        PlanckianScene scene;
        scene.width = scene.height = job.size;
        scene.shading = random_smooth_field(rng, job.size, job.size, 0.4, 1.0);
        img = render_skin(random_skin_model(rng, job.size, job.size), scene);
      }
      if (job.jpeg_quality > 0) {
        save_rgb_jpeg(img, job.out / name, job.jpeg_quality);
      } else {
        save_rgb_png(img, job.out / name);
      }
    } catch (const std::exception& e) {
      ++failures;
      log.line(std::string(name) + ": " + e.what());
    }
  });
  return finish(failures, static_cast<std::size_t>(job.count), log);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Illumination- and colour-theory channel transforms for dermoscopic images"};
  app.require_subcommand(1);
  JobSpec job;
  job.threads = default_threads();

  const auto add_threads = [&](CLI::App* sub) {
    sub->add_option("--threads", job.threads, "Worker threads (default: LUMISTACK_THREADS or 1)")
        ->check(CLI::Range(1, 1024));
  };

  auto* transform = app.add_subcommand("transform", "Write one PNG per transform per image");
  transform->add_option("inputs", job.inputs, "Image files, directories or wildcard patterns")->required();
  transform->add_option("--out", job.out, "Output directory")->required();
  transform->add_option("--which", job.which, "Subset of rprime,vstar,intrinsic,gray,sa")->delimiter(',');
  add_threads(transform);

  auto* stack = app.add_subcommand("stack", "Write an LSTACK channel stack per image");
  stack->add_option("inputs", job.inputs, "Image files, directories or wildcard patterns")->required();
  stack->add_option("--out", job.out, "Output directory")->required();
  stack->add_option("--config", job.config, "rgb_only|all|no_rprime|no_vstar|no_gray|no_intrinsic|no_sa");
  stack->add_option("--size", job.size, "Square stack resolution");
  stack->add_flag("--emit-png", job.emit_png, "Also write a PNG preview per channel");
  add_threads(stack);

  auto* angles = app.add_subcommand("angles", "Minimum-entropy projection angle per image");
  angles->add_option("inputs", job.inputs, "Image files, directories or wildcard patterns")->required();
  angles->add_option("--out", job.out, "Output CSV")->required();
  angles->add_flag("--emit-png", job.emit_png, "Also write a 180-bin angle histogram PNG");
  add_threads(angles);

  auto* metrics = app.add_subcommand("metrics", "Segmentation metrics of predicted vs reference masks");
  metrics->add_option("pred_dir", job.pred_dir, "Directory of predicted probability maps")->required();
  metrics->add_option("ref_dir", job.ref_dir, "Directory of reference masks")->required();
  metrics->add_option("--out", job.out, "Output CSV")->required();
  metrics->add_option("--threshold", job.threshold, "Positive iff value >= threshold");

  auto* synth = app.add_subcommand("synth", "Render synthetic fixtures");
  synth->add_option("--out", job.out, "Output directory")->required();
  synth->add_option("--kind", job.kind, "planckian|lesion|skin");
  synth->add_option("--count", job.count, "Number of images");
  synth->add_option("--size", job.size, "Square image size");
  synth->add_option("--seed", job.seed, "Random seed");
  synth->add_option("--jpeg", job.jpeg_quality, "Write JPEG at this quality instead of PNG");
  add_threads(synth);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  if (*transform) return cmd_transform(job, err);
  if (*stack) {
    if (!parse_config(job.config)) {
      err << "error: unknown config '" << job.config << "'\n\n" << stack->help();
      return kExitUsage;
    }
    return cmd_stack(job, err);
  }
  if (*angles) return cmd_angles(job, err);
  if (*metrics) return cmd_metrics(job, err);
  if (*synth) return cmd_synth(job, err);
  return kExitUsage;
}

}  // namespace lumistack::cli
