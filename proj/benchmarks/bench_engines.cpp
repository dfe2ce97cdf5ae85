#include <benchmark/benchmark.h>

#include "support/oracles.hpp"
#include "thinsys/certify.hpp"
#include "thinsys/linalg.hpp"
#include "thinsys/stream.hpp"

using namespace thinsys;
namespace tt = thinsys::testing;

namespace {

FieldSpec field_for(std::int64_t code) {
    return code == 0 ? FieldSpec::rationals() : FieldSpec::prime_field(static_cast<std::uint64_t>(code));
}

void BM_Rank(benchmark::State& state) {
    tt::Rng rng(1);
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto a = tt::random_matrix(rng, field_for(state.range(1)), n, n, 0.2);
    for (auto _ : state) benchmark::DoNotOptimize(rank(a));
}
BENCHMARK(BM_Rank)->ArgsProduct({{16, 64, 128}, {0, 2, 1000003}});

void BM_CertifyColumns(benchmark::State& state) {
    tt::Rng rng(2);
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto a = tt::random_matrix(rng, FieldSpec::prime_field(5), n + n / 4, n, 0.1);
    for (auto _ : state) benchmark::DoNotOptimize(certify_columns(a));
}
BENCHMARK(BM_CertifyColumns)->Arg(30)->Arg(100)->Arg(300);

void BM_MaxMatching(benchmark::State& state) {
    tt::Rng rng(3);
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto g = tt::random_graph(rng, n, n, 4.0 / static_cast<double>(n));
    for (auto _ : state) benchmark::DoNotOptimize(max_matching(g));
}
BENCHMARK(BM_MaxMatching)->Arg(100)->Arg(1000)->Arg(5000);

void BM_StreamPush(benchmark::State& state) {
    tt::Rng rng(4);
    const auto spec = FieldSpec::prime_field(1000003);
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto a = tt::random_matrix(rng, spec, n, n, 3.0 / static_cast<double>(n));
    for (auto _ : state) {
        StreamState st(spec);
        for (std::size_t i = 0; i < n; ++i) {
            const auto row = a.row(i);
            st.push(std::vector<Entry>(row.begin(), row.end()), FieldElement::zero(spec));
        }
        benchmark::DoNotOptimize(st.status());
    }
}
BENCHMARK(BM_StreamPush)->Arg(100)->Arg(1000);

} // namespace

BENCHMARK_MAIN();
