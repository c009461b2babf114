#include <benchmark/benchmark.h>

#include <mrct/mrct.hpp>

using namespace mrct;

namespace {

const double kRate = kTwoPi * 80.0;

Signal chirp_record(std::size_t n) {
    const double fs = 256.0;
    const double duration = static_cast<double>(n) / fs;
    // Sweeps 20 to 100 Hz whatever the length.
    const ChirpSpec spec = ChirpSpec::constant(1.0, kTwoPi * 20.0, kTwoPi * 80.0 / duration, 0.0, duration);
    return add_awgn(synth_chirp(spec, fs, duration), 10.0, 1);
}

// n/2 + 1 bins up to fs/2: the bins of a length-n DFT.
TFGrid fft_grid(const Signal& s) { return make_tf_grid(s, s.size() / 2 + 1, s.fs() / 2.0); }

void BM_Ct(benchmark::State& state) {
    const Signal s = chirp_record(static_cast<std::size_t>(state.range(0)));
    const TFGrid g = fft_grid(s);
    const WindowParams wp(static_cast<double>(s.size()) / (12.0 * s.fs()), 0.0);
    for (auto _ : state) benchmark::DoNotOptimize(ct(s, wp, g));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Ct)->RangeMultiplier(2)->Range(256, 2048)->Unit(benchmark::kMillisecond);

void BM_CtDefaultGrid(benchmark::State& state) {
    const Signal s = synth_example1(1).noisy;
    const TFGrid g = make_tf_grid(s, 128, 128.0);
    const WindowParams wp(0.1, kRate);
    for (auto _ : state) benchmark::DoNotOptimize(ct(s, wp, g));
}
BENCHMARK(BM_CtDefaultGrid)->Unit(benchmark::kMillisecond);

void BM_Mrct(benchmark::State& state) {
    const Signal s = synth_example1(1).noisy;
    const TFGrid g = make_tf_grid(s, 128, 128.0);
    std::vector<WindowParams> e;
    for (long i = 0; i < state.range(0); ++i) e.emplace_back(0.16, kTwoPi * (70.0 + 5.0 * static_cast<double>(i)));
    const ParameterSet p(std::move(e));
    for (auto _ : state) benchmark::DoNotOptimize(mrct::mrct(s, p, g));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Mrct)->DenseRange(1, 6)->Unit(benchmark::kMillisecond)->Complexity(benchmark::oN);

void BM_Mrsect(benchmark::State& state) {
    const Signal s = synth_example1(1).noisy;
    const TFGrid g = make_tf_grid(s, 128, 128.0);
    const ParameterSet p({{0.1, kRate}, {0.16, kRate}, {0.25, kRate}});
    for (auto _ : state) benchmark::DoNotOptimize(mrsect(s, p, g, ExtractionConfig{}));
}
BENCHMARK(BM_Mrsect)->Unit(benchmark::kMillisecond);

void BM_Wvd(benchmark::State& state) {
    const Signal s = chirp_record(static_cast<std::size_t>(state.range(0)));
    const TFGrid g = make_tf_grid(s, s.size() / 2, s.fs() / 2.0);
    for (auto _ : state) benchmark::DoNotOptimize(wvd(s, g));
}
BENCHMARK(BM_Wvd)->RangeMultiplier(2)->Range(256, 1024)->Unit(benchmark::kMillisecond);

void BM_Cft(benchmark::State& state) {
    const Signal s = synth_example1(1).noisy;
    const UniformAxis freqs{0.0, kTwoPi * 0.5, 257};
    const auto n_cr = static_cast<std::size_t>(state.range(0));
    const UniformAxis crs{-kTwoPi * 200.0, kTwoPi * 400.0 / static_cast<double>(n_cr - 1), n_cr};
    for (auto _ : state) benchmark::DoNotOptimize(cft(s, freqs, crs));
}
BENCHMARK(BM_Cft)->Arg(101)->Arg(201)->Arg(401)->Unit(benchmark::kMillisecond);

void BM_SelectParameters(benchmark::State& state) {
    const Signal s = synth_example1(1).noisy;
    const UniformAxis freqs{0.0, kTwoPi * 0.5, 257};
    const UniformAxis crs{-kTwoPi * 200.0, kTwoPi * 2.0, 201};
    for (auto _ : state) benchmark::DoNotOptimize(select_parameters(s, 3, 1.0, freqs, crs));
}
BENCHMARK(BM_SelectParameters)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
