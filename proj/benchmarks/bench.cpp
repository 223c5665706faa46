#include "gclink/classify.hpp"
#include "gclink/dpq.hpp"
#include "gclink/great_circle.hpp"
#include "gclink/link_io.hpp"
#include "gclink/two_bridge.hpp"
#include "gclink/wedge_surface.hpp"

#include <benchmark/benchmark.h>

using namespace gclink;

static void BM_LinkingMatrix(benchmark::State& state) {
    const GCLink link = census_sample(5, 1, 0);
    for (auto _ : state) benchmark::DoNotOptimize(link.linking_matrix());
}
BENCHMARK(BM_LinkingMatrix);

static void BM_GaussLinking(benchmark::State& state) {
    const GCLink link = census_sample(2, 1, 0);
    const auto a = sample_curve(link[0], static_cast<int>(state.range(0)));
    const auto b = sample_curve(link[1], static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(gauss_linking(a, b));
}
BENCHMARK(BM_GaussLinking)->Arg(64)->Arg(256);

static void BM_Classify(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::size_t k = 0;
    for (auto _ : state) benchmark::DoNotOptimize(classify(census_sample(n, 3, k++)));
}
BENCHMARK(BM_Classify)->DenseRange(3, 5);

static void BM_Census(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(census(4, 200, 9));
}
BENCHMARK(BM_Census)->Unit(benchmark::kMillisecond);

static void BM_StandardDiagram(benchmark::State& state) {
    const DpqParams p = DpqParams::make(2, static_cast<long>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(standard_diagram(p));
}
BENCHMARK(BM_StandardDiagram)->Arg(7)->Arg(15)->Arg(31)->Unit(benchmark::kMicrosecond);

static void BM_RenderSvg(benchmark::State& state) {
    const LinkDiagram d = standard_diagram(DpqParams::make(2, 15));
    for (auto _ : state) benchmark::DoNotOptimize(render_svg(d));
}
BENCHMARK(BM_RenderSvg)->Unit(benchmark::kMicrosecond);

static void BM_LinkJsonRoundTrip(benchmark::State& state) {
    const GCLink link = build(DpqParams::make(2, 15));
    for (auto _ : state) benchmark::DoNotOptimize(parse_link(dump_json(link_to_json(link))));
}
BENCHMARK(BM_LinkJsonRoundTrip)->Unit(benchmark::kMicrosecond);

static void BM_WedgeCensus(benchmark::State& state) {
    const DpqParams p = DpqParams::exact(state.range(0), 99);
    for (auto _ : state) benchmark::DoNotOptimize(wedge_census(p));
}
BENCHMARK(BM_WedgeCensus)->Arg(2)->Arg(19);

static void BM_EvenCf(benchmark::State& state) {
    const Fraction f = Fraction::make(18, 23);
    for (auto _ : state) benchmark::DoNotOptimize(even_cf(f));
}
BENCHMARK(BM_EvenCf);

static void BM_Fibered(benchmark::State& state) {
    const Fraction f = Fraction::knot(34, 89);
    for (auto _ : state) benchmark::DoNotOptimize(fibered(f));
}
BENCHMARK(BM_Fibered);

static void BM_Certify(benchmark::State& state) {
    const Fraction f = Fraction::knot(2, 9);
    const Slope s = Slope::make(8, 1);
    for (auto _ : state) benchmark::DoNotOptimize(certify_vhaken(f, s));
}
BENCHMARK(BM_Certify);

BENCHMARK_MAIN();
