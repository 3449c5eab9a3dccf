#include <benchmark/benchmark.h>

#include "norflow/scenarios.hpp"

#include <random>

namespace {

using namespace norflow;

void MinimizeRandom(benchmark::State& state) {
    const int nvars = static_cast<int>(state.range(0));
    std::mt19937 rng(7);
    TruthSpec spec;
    for (int j = 0; j < nvars; ++j) spec.vars.push_back("v" + std::to_string(j));
    for (uint32_t m = 0; m < (1u << nvars); ++m) {
        const int r = static_cast<int>(rng() % 4);
        if (r == 0) spec.on_set.push_back(static_cast<uint16_t>(m));
        if (r == 1) spec.dc_set.push_back(static_cast<uint16_t>(m));
    }
    for (auto _ : state) {
        auto sop = qm_minimize(spec);
        benchmark::DoNotOptimize(sop);
    }
}
BENCHMARK(MinimizeRandom)->Arg(4)->Arg(6)->Arg(8);

void SynthesizeController(benchmark::State& state) {
    const PaperMachine m = machine_section2();
    for (auto _ : state) {
        auto s = synthesize(m);
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(SynthesizeController);

void SimulateController(benchmark::State& state) {
    const PaperMachine m = machine_section2();
    const SynthesizedMachine s = synthesize(m);
    const SimTime horizon = state.range(0);

    Stimulus stim;
    stim.t_end = horizon;
    SignalStim h;
    h.name = "H";
    for (SimTime t = 25; t + 60 < horizon; t += 100) {
        h.events.emplace_back(t, true);
        h.events.emplace_back(t + 60, false);
    }
    stim.signals.push_back(h);
    stim.signals.push_back(make_clock("CK", 20, Duty{1, 2}, horizon));

    for (auto _ : state) {
        auto trace = simulate(s.netlist, stim, DelayModel{}, idle_init(m));
        benchmark::DoNotOptimize(trace);
    }
}
BENCHMARK(SimulateController)->Arg(1000)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
