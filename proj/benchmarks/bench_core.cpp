#include "qcomb/almost_periodic.hpp"
#include "qcomb/fourier.hpp"
#include "qcomb/gallery.hpp"
#include "qcomb/pointset.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

namespace {

using namespace qcomb;

void BM_EnumerateBall(benchmark::State& state) {
  auto radius = Rational(state.range(0));
  Lattice<Rational> l(SquareMatrix<Rational>::identity(2));
  Coset<Rational> coset(l, Vec<Rational>(2, Rational(1, 3)));
  Vec<Rational> center(2, Rational(0));
  for (auto _ : state) {
    auto pts = enumerate_ball(coset, center, radius);
    benchmark::DoNotOptimize(pts.size());
  }
}
BENCHMARK(BM_EnumerateBall)->Arg(8)->Arg(16)->Arg(32);

void BM_WindowCounterexample(benchmark::State& state) {
  auto f = gallery::counterexample(static_cast<int>(state.range(0)));
  Vec<double> origin(2, 0.0);
  for (auto _ : state) {
    auto w = evaluate_window(f, origin, 20.0);
    benchmark::DoNotOptimize(w.points.size());
  }
}
BENCHMARK(BM_WindowCounterexample)->Arg(4)->Arg(8);

void BM_PairGaussian(benchmark::State& state) {
  auto f = gallery::integer_comb(2);
  TestFunction phi = TestFunction::gaussian(2);
  Rational radius(state.range(0));
  for (auto _ : state) {
    auto res = pair(f, phi, radius);
    benchmark::DoNotOptimize(res.value);
  }
}
BENCHMARK(BM_PairGaussian)->Arg(8)->Arg(16);

void BM_DistributionFt(benchmark::State& state) {
  auto f = gallery::theorem11_sample(5, 2, 2, 2, 1);
  for (auto _ : state) {
    auto fhat = distribution_ft(f);
    benchmark::DoNotOptimize(fhat.components.size());
  }
}
BENCHMARK(BM_DistributionFt);

void BM_AlmostPeriodScan(benchmark::State& state) {
  ap::ExponentialSum g;
  g.dim = 1;
  g.terms.push_back(ap::ExpTerm{Complex(1.0, 0.0), {1.0}});
  g.terms.push_back(ap::ExpTerm{Complex(1.0, 0.0), {std::sqrt(2.0)}});
  double range = static_cast<double>(state.range(0));
  for (auto _ : state) {
    auto rep = ap::find_almost_periods(g, 0.1, range, 0.01, 500, 0.1);
    benchmark::DoNotOptimize(rep.taus.size());
  }
}
BENCHMARK(BM_AlmostPeriodScan)->Arg(100)->Arg(1000);

void BM_SeparatingConstant(benchmark::State& state) {
  auto w = evaluate_window(gallery::counterexample(6), Vec<double>(2, 0.0), 40.0);
  auto pts = pointset::window_points(w);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pointset::separating_constant(pts));
  }
}
BENCHMARK(BM_SeparatingConstant);

}  // namespace

BENCHMARK_MAIN();
