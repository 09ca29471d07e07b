// Microbenchmarks for the hot paths: the leapfrog update, free-field
// evaluation, the retarded integral, and the moment quadrature.
#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "tailwave/config.hpp"
#include "tailwave/constants.hpp"
#include "tailwave/evolve.hpp"
#include "tailwave/greenfn.hpp"
#include "tailwave/linear.hpp"
#include "tailwave/model.hpp"

using namespace tailwave;

namespace {

HProfile canonical_h(double dx = 0.02) {
  const RadialProfile f = make_profile("zero", 0.0, 1.0, dx);
  const RadialProfile g = make_profile("bump4", 1.0, 1.0, dx);
  return build_h(f, g);
}

void BM_leapfrog_row(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const double dr = 0.02, dt = 0.018;
  std::vector<double> vprev(n), vcur(n), vnext(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double r = j * dr;
    vprev[j] = std::sin(r) * r;
    vcur[j] = std::sin(r - dt) * r;
  }
  const Nonlinearity F({3.0, 1.0, 0.0});
  const auto S = [&](double, double, double u) { return F(u); };
  for (auto _ : state) {
    leapfrog_step(vprev, vcur, vnext, dr, dt, 1.0, S);
    benchmark::DoNotOptimize(vnext.data());
    vprev.swap(vcur);
    vcur.swap(vnext);
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                          static_cast<int64_t>(n));
}
BENCHMARK(BM_leapfrog_row)->Arg(1 << 10)->Arg(1 << 13);

void BM_u0_eval(benchmark::State& state) {
  const HProfile h = canonical_h();
  double t = 0.3, r = 0.1, acc = 0.0;
  for (auto _ : state) {
    acc += u0_eval(h, t, r);
    t += 1e-4;          // sweep through the shell
    if (t > 1.2) t = 0.3;
    r += 3e-5;
    if (r > 1.0) r = 0.05;
  }
  benchmark::DoNotOptimize(acc);
}
BENCHMARK(BM_u0_eval);

void BM_duhamel_shell(benchmark::State& state) {
  ShellSource shell;
  shell.sigma = 0.02;
  const SpaceTimeSource src = make_source(shell);
  DuhamelOptions opt;
  opt.ds = opt.drho = shell.sigma / 4.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(duhamel_apply(src, 5.0, 1.0, opt));
  }
}
BENCHMARK(BM_duhamel_shell);

void BM_moment_Ck(benchmark::State& state) {
  const HProfile h = canonical_h(1.0 / static_cast<double>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(moment_Ck(h, 3.0));
  }
}
BENCHMARK(BM_moment_Ck)->Arg(64)->Arg(512);

}  // namespace

BENCHMARK_MAIN();
