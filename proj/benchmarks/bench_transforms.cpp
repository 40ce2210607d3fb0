#include <benchmark/benchmark.h>

#include <random>

#include "lumistack/colorbands.hpp"
#include "lumistack/intrinsic.hpp"
#include "lumistack/odgray.hpp"
#include "lumistack/shading.hpp"
#include "lumistack/stack.hpp"
#include "lumistack/synth.hpp"

namespace {

using namespace lumistack;

RgbImage fixture(int size) {
  std::mt19937_64 rng(1);
  RandomSceneOptions opts;
  opts.width = size;
  opts.height = size;
  return render_planckian(random_planckian_scene(rng, opts));
}

void BM_ColorBands(benchmark::State& state) {
  const RgbImage img = fixture(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(color_bands(img));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(img.size()));
}
BENCHMARK(BM_ColorBands)->Arg(128)->Arg(512);

void BM_EntropyScan(benchmark::State& state) {
  const ChiPlane chi = project_chi(log_chromaticity(fixture(static_cast<int>(state.range(0)))));
  for (auto _ : state) benchmark::DoNotOptimize(min_entropy_angle(chi));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(chi.size()));
}
BENCHMARK(BM_EntropyScan)->Arg(128)->Arg(512);

void BM_OdGrayscale(benchmark::State& state) {
  const RgbImage img = fixture(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(od_grayscale(img));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(img.size()));
}
BENCHMARK(BM_OdGrayscale)->Arg(128)->Arg(512);

void BM_ShadingAttenuate(benchmark::State& state) {
  const RgbImage img = fixture(static_cast<int>(state.range(0)));
  const PlaneImage intrinsic = intrinsic_image(img);
  for (auto _ : state) benchmark::DoNotOptimize(shading_attenuate(img, intrinsic));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(img.size()));
}
BENCHMARK(BM_ShadingAttenuate)->Arg(128)->Arg(512);

void BM_BuildStackAll(benchmark::State& state) {
  const RgbImage img = fixture(256);
  for (auto _ : state) benchmark::DoNotOptimize(build_stack(img, StackConfig::All));
}
BENCHMARK(BM_BuildStackAll);

void BM_EncodeDecodeStack(benchmark::State& state) {
  const ChannelStack st = build_stack(fixture(128), StackConfig::All);
  for (auto _ : state) benchmark::DoNotOptimize(decode_stack(encode_stack(st)));
}
BENCHMARK(BM_EncodeDecodeStack);

}  // namespace

BENCHMARK_MAIN();
