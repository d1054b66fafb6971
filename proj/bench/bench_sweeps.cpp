// SPDX-License-Identifier: MIT
// Serial reference against the OpenMP sweeps.
#include "stieltjes/spec_io.hpp"
#include "stieltjes/sweep.hpp"

#include <benchmark/benchmark.h>

using namespace stieltjes;

namespace {

const Derivator& paper_g() {
    static const Derivator g = load_derivator(std::string(FIXTURE_DIR) + "/paper_g.json").derivator;
    return g;
}

Exec mode(const benchmark::State& st) { return st.range(0) ? Exec::parallel : Exec::serial; }

void classify(benchmark::State& st) {
    const Interval dom(-1, 2);
    const auto pts = uniform_grid(dom, 4000);
    for (auto _ : st) benchmark::DoNotOptimize(classify_grid(paper_g(), dom, pts, mode(st)));
    st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(pts.size()));
}

void continuity(benchmark::State& st) {
    const Interval dom(-1, 2);
    const auto& g = paper_g();
    const PointFn dj = [&](const wide& t) { return t < wide(dom.b) ? g.jump(t) : wide(0); };
    const auto pts = probe_points(g, dom, 64, 1);
    for (auto _ : st) benchmark::DoNotOptimize(continuity_sweep(dj, g, dom, pts, mode(st)));
    st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(pts.size()));
}

void verify(benchmark::State& st) {
    const Interval dom(-1, 2);
    for (auto _ : st) benchmark::DoNotOptimize(verify_campaign(paper_g(), dom, 64, 7, mode(st), 2));
    st.SetItemsProcessed(st.iterations() * 64);
}

}  // namespace

BENCHMARK(classify)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(continuity)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(verify)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
