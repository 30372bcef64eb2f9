#include "gausslink/entanglement.hpp"
#include "gausslink/swapping.hpp"
#include "gausslink/sweep.hpp"
#include "gausslink/teleportation.hpp"
#include "gausslink/transducer.hpp"

#include <benchmark/benchmark.h>

namespace gl = gausslink;

namespace {

const gl::TransducerParams kBlue =
    gl::TransducerParams::from_cooperativities(1.0, 2.0, 0.8, 1.0, 0.1, gl::Detuning::kBlue);
const gl::TwoModeStandardForm kWorked{17.0, 9.0, 12.0};

void BM_OutputMoCovariance(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(gl::output_mo_covariance(kBlue, 0.3));
}
BENCHMARK(BM_OutputMoCovariance);

void BM_OutputMoClosedForm(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(gl::output_mo_closed_form(kBlue));
}
BENCHMARK(BM_OutputMoClosedForm);

void BM_EntanglementOfFormation(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(gl::entanglement_of_formation(kWorked));
}
BENCHMARK(BM_EntanglementOfFormation);

void BM_OptimizeGain(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(gl::optimize_gain(kWorked));
}
BENCHMARK(BM_OptimizeGain);

void BM_TeleportOracle(benchmark::State& state) {
    const gl::Matrix v_oe = kWorked.covariance();
    const gl::Matrix v_in = gl::Matrix::Identity(2, 2);
    for (auto _ : state) benchmark::DoNotOptimize(gl::teleport_oracle(v_oe, v_in, 1.2));
}
BENCHMARK(BM_TeleportOracle);

void BM_MmSwapNumeric(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(gl::mm_swap_numeric(kWorked, kWorked, 10.0));
}
BENCHMARK(BM_MmSwapNumeric);

void BM_EntanglementRate(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(gl::entanglement_rate(kBlue, 0.8));
}
BENCHMARK(BM_EntanglementRate)->Unit(benchmark::kMillisecond);

void BM_CapacityMap(benchmark::State& state) {
    gl::SweepConfig config = gl::default_config(gl::Experiment::kFig2bcCapacityMaps);
    for (gl::AxisSpec& a : config.axes) a.points = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(gl::compute_sweep(config, 1));
}
BENCHMARK(BM_CapacityMap)->Arg(20)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
