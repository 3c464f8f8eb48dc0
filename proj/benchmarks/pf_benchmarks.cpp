#include "pf/bicomplex.hpp"
#include "pf/constants.hpp"
#include "pf/globalize.hpp"
#include "pf/homotopy.hpp"
#include "pf/lp_examples.hpp"
#include "pf/random_forms.hpp"
#include "pf/subdivision.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace pf;

static void BM_ConeOperatorEval(benchmark::State& state)
{
    std::mt19937_64 rng(1);
    auto omega = random_polynomial_form(3, 2, static_cast<int>(state.range(0)), rng);
    double y[3] = {0.5, 0.5, 0.5};
    auto k = cone_operator(y, omega);
    double x[3] = {0.2, 0.7, 0.4};
    for (auto _ : state)
        benchmark::DoNotOptimize(k.values(x));
}
BENCHMARK(BM_ConeOperatorEval)->Arg(1)->Arg(3)->Arg(5);

static void BM_PoincareConstant(benchmark::State& state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(poincare_constant_C(2.0, 1.5, 1, 3));
}
BENCHMARK(BM_PoincareConstant);

static void BM_AveragedPrimitiveNorm(benchmark::State& state)
{
    auto dom = ConvexDomain::unit_box(2);
    auto omega = Form::basis(2, {0, 1});
    for (auto _ : state)
        benchmark::DoNotOptimize(local_primitive(dom, omega, 2.0, 2.0).cert.norm_xi);
}
BENCHMARK(BM_AveragedPrimitiveNorm)->Unit(benchmark::kMillisecond);

static void BM_TorusNerve(benchmark::State& state)
{
    const int cells = static_cast<int>(state.range(0));
    auto cover = build_box_cover(Geometry::torus(2), cells, 0.5);
    for (auto _ : state) {
        auto nc = nerve(cover);
        benchmark::DoNotOptimize(betti_numbers(nc, 2));
    }
}
BENCHMARK(BM_TorusNerve)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_GlueTorus(benchmark::State& state)
{
    auto ctx = make_context(build_box_cover(Geometry::torus(2), 4, 0.5));
    auto pou = partition_of_unity(ctx->cover);
    std::mt19937_64 rng(2);
    auto beta = cech_delta(random_element(ctx, 1, 1, 2, rng));
    for (auto _ : state) {
        auto alpha = glue(beta, pou);
        benchmark::DoNotOptimize(bicomplex_max_abs(alpha, 32));
    }
}
BENCHMARK(BM_GlueTorus)->Unit(benchmark::kMillisecond);

static void BM_CircleGlobalPrimitive(benchmark::State& state)
{
    auto ctx = make_context(build_box_cover(Geometry::torus(1), 3, 0.5));
    TrigPolynomial t(1);
    t.add_term(6.283185307179586, {1}, TrigPolynomial::Phase::Cos);
    auto omega = Form::from_dense(1, 1, {ScalarField(t)});
    GlobalizeOptions opts;
    opts.residual_probes = 1000;
    for (auto _ : state)
        benchmark::DoNotOptimize(global_primitive(omega, ctx, opts).report.residual);
}
BENCHMARK(BM_CircleGlobalPrimitive)->Unit(benchmark::kMillisecond);

static void BM_SubdivisionFormula(benchmark::State& state)
{
    const int r = static_cast<int>(state.range(0));
    auto sigma = ParentSimplex::standard(r);
    std::mt19937_64 rng(3);
    auto omega = random_exact_form(r, r, 2, rng);
    auto cascade = star_cascade(omega, sigma);
    for (auto _ : state)
        benchmark::DoNotOptimize(formula_identity_check(omega, sigma, 0, cascade).gap);
}
BENCHMARK(BM_SubdivisionFormula)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_AnnulusIntegral(benchmark::State& state)
{
    auto omega = angle_form();
    AnnulusSpec spec;
    spec.inner = 1e-3;
    for (auto _ : state)
        benchmark::DoNotOptimize(annulus_lp_power(omega, 3.0, spec));
}
BENCHMARK(BM_AnnulusIntegral)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
