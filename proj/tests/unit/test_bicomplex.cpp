#include "helpers.hpp"

#include "pf/bicomplex.hpp"
#include "pf/error.hpp"
#include "pf/random_forms.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace pf;

namespace {

std::shared_ptr<const CoverContext> circle()
{
    return make_context(build_box_cover(Geometry::torus(1), 3, 0.5));
}

std::shared_ptr<const CoverContext> torus()
{
    return make_context(build_box_cover(Geometry::torus(2), 4, 0.5));
}

Form sin_form_1d()
{
    TrigPolynomial t(1);
    t.add_term(1.0, {1}, TrigPolynomial::Phase::Sin);
    return Form::scalar(t);
}

} // namespace

TEST_SUITE("bicomplex")
{
    TEST_CASE("restriction of a global form")
    {
        auto ctx = circle();
        auto f = sin_form_1d();
        auto res = restrict_global(f, ctx);
        CHECK(res.cech() == 1);
        CHECK(res.size() == 3);
        for (int k = 0; k < 3; ++k) {
            auto pts = res.domain(k).probes(50, 11 + k);
            CHECK(max_abs_difference(res.component(k), f, pts) <= 1e-14);
        }
        // on the circle the restriction is a Čech cocycle
        CHECK(bicomplex_max_abs(cech_delta(res)) <= 1e-14);
    }

    TEST_CASE("Čech differential of constants")
    {
        auto ctx = circle();
        auto a = BicomplexElement::constants(ctx, 1, {1.0, 2.0, 4.0});
        auto b = cech_delta(a);
        REQUIRE(b.tuples() == std::vector<Tuple>{{0, 1}, {0, 2}, {1, 2}});
        std::vector<double> expect{1.0, 3.0, 2.0};
        for (int k = 0; k < 3; ++k) {
            auto x = b.domain(k).probes(1, 5);
            CHECK(b.component(k).values(x)[0] == doctest::Approx(expect[k]).epsilon(1e-15));
        }
        // reordering a tuple flips the sign; a repeated index gives zero
        auto x = b.domain(0).probes(1, 5);
        CHECK(b.component(Tuple{1, 0}).values(x)[0] == doctest::Approx(-1.0));
        CHECK(b.component(Tuple{1, 1}).is_zero());
    }

    TEST_CASE("δδ vanishes on random elements")
    {
        std::mt19937_64 rng(42);
        for (auto ctx : {circle(), torus()}) {
            const int n = ctx->cover.dim();
            for (int degree = 0; degree <= n; ++degree)
                for (int s = 1; s + 2 <= ctx->nerve.levels(); ++s) {
                    auto a = random_element(ctx, degree, s, 3, rng);
                    CHECK(bicomplex_max_abs(cech_delta(cech_delta(a))) <= 1e-12);
                }
        }
    }

    TEST_CASE("d and δ commute")
    {
        std::mt19937_64 rng(9);
        auto ctx = torus();
        auto a = random_element(ctx, 0, 1, 3, rng);
        CHECK(bicomplex_max_abs(cech_delta(a.d()) - cech_delta(a).d()) <= 1e-12);
    }

    TEST_CASE("partitions of unity sum to one")
    {
        for (auto ctx : {circle(), torus()}) {
            auto pou = partition_of_unity(ctx->cover);
            const int n = ctx->cover.dim();
            auto pts = pftest::random_points(n, 1000, 77);
            double worst = 0.0;
            for (int k = 0; k < 1000; ++k) {
                std::span<const double> x(pts.data() + k * n, n);
                double sum = 0.0;
                for (const auto& rho : pou.rho) {
                    double v = rho.evaluate(x);
                    CHECK(v >= 0.0);
                    sum += v;
                }
                worst = std::max(worst, std::abs(sum - 1.0));
            }
            CHECK(worst <= 1e-12);
            CHECK(pou.c_pou() > 1.0);
            CHECK(std::isfinite(pou.c_pou()));
        }
        auto star = make_context(Cover::star(Geometry::simplex({{0, 0}, {1, 0}, {0, 1}})));
        auto pou = partition_of_unity(star->cover);
        std::vector<double> x{0.2, 0.3};
        CHECK(pou.rho[0].evaluate(x) == doctest::Approx(0.5));
        CHECK(pou.rho[1].evaluate(x) == doctest::Approx(0.2));
        CHECK(pou.rho[2].evaluate(x) == doctest::Approx(0.3));
    }

    TEST_CASE("glue is a right inverse of δ on cocycles")
    {
        std::mt19937_64 rng(2024);
        for (auto ctx : {circle(), torus()}) {
            auto pou = partition_of_unity(ctx->cover);
            for (int degree = 0; degree <= 1; ++degree)
                for (int s = 1; s + 1 <= ctx->nerve.levels(); ++s) {
                    auto alpha = random_element(ctx, degree, s, 2, rng);
                    auto beta = cech_delta(alpha);
                    auto glued = glue(beta, pou);
                    double scale = std::max(1.0, bicomplex_max_abs(beta));
                    CHECK(bicomplex_max_abs(cech_delta(glued) - beta) <= 1e-9 * scale);
                }
        }
    }

    TEST_CASE("gluing a restricted global form recovers it")
    {
        auto ctx = circle();
        auto pou = partition_of_unity(ctx->cover);
        auto f = sin_form_1d();
        auto res = restrict_global(f, ctx);
        auto glued = glue(res, pou);
        REQUIRE(glued.cech() == 0);
        auto pts = pftest::random_points(1, 500, 3);
        CHECK(max_abs_difference(glued.component(0), f, pts) <= 1e-12);
        auto zero = glue(BicomplexElement::zero(ctx, 1, 2), pou);
        CHECK(bicomplex_max_abs(zero) == 0.0);
    }

    TEST_CASE("glue rejects non-cocycles")
    {
        std::mt19937_64 rng(5);
        auto ctx = torus();
        auto pou = partition_of_unity(ctx->cover);
        auto beta = random_element(ctx, 0, 2, 2, rng);
        CHECK_THROWS_AS(glue(beta, pou), VerificationFailure);
    }

    TEST_CASE("glue norm estimates")
    {
        // Each (s+1)-tuple J appears once for every j in J in Σ_I Σ_j ‖ρ_j β_{jI}‖,
        // so the sum-of-norms bound carries the factor s+1.
        std::mt19937_64 rng(31);
        for (auto ctx : {circle(), torus()}) {
            auto pou = partition_of_unity(ctx->cover);
            for (int degree = 0; degree <= 1; ++degree)
                for (int s = 1; s + 1 <= ctx->nerve.levels(); ++s) {
                    auto beta = cech_delta(random_element(ctx, degree, s, 2, rng));
                    if (bicomplex_max_abs(beta) == 0.0)
                        continue;
                    auto rep = glue_report(glue(beta, pou), beta, pou, 2.0);
                    CAPTURE(ctx->cover.dim());
                    CAPTURE(s);
                    CHECK(rep.ratio <= (s + 1) * 1.0001);
                    CHECK(rep.derivative_ratio <= (s + 1) * pou.c_pou() * 1.0001);
                    if (s <= 2)
                        CHECK(rep.ratio <= 1.05);
                }
        }
    }

    TEST_CASE("glue norm ratio can exceed one")
    {
        // four pieces around a torus vertex: every triple has the same
        // intersection as the quadruple, and α has four components per β_J
        auto ctx = torus();
        auto pou = partition_of_unity(ctx->cover);
        std::mt19937_64 rng(31);
        for (int s = 1; s <= 2; ++s)
            random_element(ctx, 0, s, 2, rng);
        auto beta = cech_delta(random_element(ctx, 0, 3, 2, rng));
        auto rep = glue_report(glue(beta, pou), beta, pou, 2.0);
        CHECK(rep.ratio > 1.05);
        CHECK(rep.ratio <= 4.0);
    }
}
