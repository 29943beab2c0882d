#include <vector>

#include <benchmark/benchmark.h>

#include "metrodose/closed_form.hpp"
#include "metrodose/nlp.hpp"
#include "metrodose/objective.hpp"
#include "metrodose/pkpd.hpp"
#include "metrodose/scheduler.hpp"

using namespace metrodose;

namespace {

DrugPK bench_pk() { return DrugPK(9.242, 4e-3, 60.0, 0.36); }
TumorModel bench_tumor() { return TumorModel(5.51e-3, 0.25); }

void BM_log_f1(benchmark::State& state) {
    const DrugPK pk = bench_pk();
    const int n = static_cast<int>(state.range(0));
    const std::vector<double> times = expand_pattern(Pattern(5, 28), n, 0.0);
    const std::vector<double> doses(n, 120.0);
    const double horizon = times.back() + 40.0;
    for (auto _ : state) benchmark::DoNotOptimize(log_f1(pk, times, horizon, doses));
}
BENCHMARK(BM_log_f1)->Arg(40)->Arg(115);

void BM_grad_log_f1(benchmark::State& state) {
    const DrugPK pk = bench_pk();
    const int n = static_cast<int>(state.range(0));
    const std::vector<double> times = expand_pattern(Pattern(5, 28), n, 0.0);
    const std::vector<double> doses(n, 120.0);
    const double horizon = times.back() + 40.0;
    for (auto _ : state) benchmark::DoNotOptimize(grad_log_f1(pk, times, horizon, doses));
}
BENCHMARK(BM_grad_log_f1)->Arg(40)->Arg(115);

void BM_tumor_ratio(benchmark::State& state) {
    const DrugPK pk = bench_pk();
    const TumorModel tm = bench_tumor();
    const std::vector<double> times = expand_pattern(Pattern(5, 28), 40, 0.0);
    DoseSchedule sched(times, std::vector<double>(40, 143.75), 210.0);
    for (auto _ : state) benchmark::DoNotOptimize(tumor_ratio(tm, pk, sched, 210.0));
}
BENCHMARK(BM_tumor_ratio);

void BM_ode_oracle(benchmark::State& state) {
    const DrugPK pk = bench_pk();
    const TumorModel tm = bench_tumor();
    const std::vector<double> times = expand_pattern(Pattern(5, 28), 40, 0.0);
    DoseSchedule sched(times, std::vector<double>(40, 143.75), 210.0);
    for (auto _ : state) benchmark::DoNotOptimize(simulate_ode_oracle(tm, pk, sched, 0.1));
}
BENCHMARK(BM_ode_oracle);

void BM_projection(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = 100.0 + 7.0 * ((i * 37) % 23);
    for (auto _ : state)
        benchmark::DoNotOptimize(project_simplex_box(v, n * 130.0, 100.0, 200.0));
}
BENCHMARK(BM_projection)->Arg(40)->Arg(400);

void BM_solve_curative(benchmark::State& state) {
    const DrugPK pk = bench_pk();
    const DoseBounds bounds(100.0, 200.0, 5750.0);
    const std::vector<double> times = expand_pattern(Pattern(5, 28), 40, 0.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_curative_exact(pk, times, 210.0, bounds, 40));
}
BENCHMARK(BM_solve_curative);

void BM_solve_palliative(benchmark::State& state) {
    const DrugPK pk = bench_pk();
    const DoseBounds bounds(100.0, 200.0);
    const std::vector<double> times = expand_pattern(Pattern(5, 28), 40, 0.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            solve_palliative_exact(pk, times, 210.0, bounds, 38.17443272074937, 40));
}
BENCHMARK(BM_solve_palliative);

}  // namespace

BENCHMARK_MAIN();
