#include "helpers.hpp"

#include "pf/globalize.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace pf;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// a·cos(2πk·x_axis) (or sin) as a scalar field on T^dim.
ScalarField wave(int dim, int axis, int k, double a, TrigPolynomial::Phase phase)
{
    TrigPolynomial t(dim);
    std::vector<int> freq(dim, 0);
    freq[axis] = k;
    t.add_term(a, freq, phase);
    return t;
}

std::shared_ptr<const CoverContext> circle()
{
    return make_context(build_box_cover(Geometry::torus(1), 3, 0.5));
}

Form exact_circle_form(int k, double a)
{
    return Form::from_dense(1, 1, {wave(1, 0, k, a * kTwoPi * k, TrigPolynomial::Phase::Cos)});
}

} // namespace

TEST_SUITE("globalize")
{
    TEST_CASE("sign conventions")
    {
        CHECK(int_sign(1) == -1);
        CHECK(int_sign(2) == -1);
        CHECK(int_sign(3) == 1);
        CHECK(int_sign(4) == 1);
        CHECK(int_sign_unshifted(1) == 1);
        CHECK(int_sign_unshifted(2) == -1);
        CHECK(int_sign_unshifted(3) == -1);
        CHECK(int_sign_unshifted(4) == 1);
    }

    TEST_CASE("cascade on the circle")
    {
        auto ctx = circle();
        auto omega = exact_circle_form(1, 1.0);
        auto cascade = xi_cascade(omega, ctx);
        REQUIRE(cascade.xi.size() == 1);
        CHECK(cascade.xi[0].cech() == 1);
        CHECK(cascade.xi[0].degree() == 0);
        for (const auto& level : cascade.levels) {
            CHECK(level.identity_residual <= 1e-8);
            CHECK(std::isfinite(level.ratio));
        }
        // the period vanishes, so Int ω pairs to zero with the cycle
        auto cocycle = int_cocycle(cascade);
        auto pairings = pair_with_cycles(ctx->nerve, 1, cocycle.values, ctx->nerve.homology_basis(1));
        REQUIRE(pairings.size() == 1);
        CHECK(std::abs(pairings[0].value) <= 1e-8);
    }

    TEST_CASE("exact form on the circle")
    {
        auto ctx = circle();
        auto omega = exact_circle_form(1, 1.0);
        auto res = global_primitive(omega, ctx);
        CHECK(res.report.status == "exact-solved");
        REQUIRE(res.xi.has_value());
        CHECK(res.report.residual <= 1e-8);
        auto pts = pftest::random_points(1, 400, 8);
        // ξ differs from sin(2πx) by a constant
        double first = 0.0;
        double spread = 0.0;
        for (int k = 0; k < 400; ++k) {
            std::span<const double> x(pts.data() + k, 1);
            double diff = res.xi->values(x)[0] - std::sin(kTwoPi * x[0]);
            if (k == 0)
                first = diff;
            spread = std::max(spread, std::abs(diff - first));
        }
        CHECK(spread <= 1e-8);
        CHECK(std::isfinite(res.report.ratio));
        CHECK(res.report.ledger_product > 0.0);
    }

    TEST_CASE("angle form on the circle is obstructed")
    {
        auto ctx = circle();
        auto omega = Form::from_dense(1, 1, {ScalarField::constant(1, 1.0)});
        auto res = global_primitive(omega, ctx);
        CHECK(res.report.status == "obstructed");
        CHECK_FALSE(res.xi.has_value());
        REQUIRE(res.report.pairings.size() == 1);
        // the period of dx around the circle is 1
        CHECK(res.report.pairings[0].value == doctest::Approx(1.0).epsilon(1e-8));
    }

    TEST_CASE("exact 2-form on the torus")
    {
        auto ctx = make_context(build_box_cover(Geometry::torus(2), 4, 0.5));
        ScalarField c = wave(2, 0, 1, kTwoPi, TrigPolynomial::Phase::Cos);
        auto omega = Form::from_dense(2, 2, {c});
        auto res = global_primitive(omega, ctx);
        CHECK(res.report.status == "exact-solved");
        CHECK(res.report.residual <= 1e-6);
        CHECK(res.report.residual_probes == 10000);
        CHECK(std::isfinite(res.report.ratio));
        CHECK(res.report.ratio > 0.0);
    }

    TEST_CASE("a non-trivial torus class is obstructed")
    {
        auto ctx = make_context(build_box_cover(Geometry::torus(2), 4, 0.5));
        auto omega = Form::basis(2, {0, 1});
        GlobalizeOptions opts;
        opts.residual_probes = 400;
        auto res = global_primitive(omega, ctx, opts);
        CHECK(res.report.status == "obstructed");
        REQUIRE(res.report.pairings.size() == 1);
        CHECK(std::abs(res.report.pairings[0].value) == doctest::Approx(1.0).epsilon(1e-7));
    }

    TEST_CASE("single-piece cover")
    {
        auto ctx = make_context(build_box_cover(Geometry::box({0, 0}, {1, 1}), 1, 0.5));
        REQUIRE(ctx->cover.size() == 1);
        auto omega = Form::basis(2, {0, 1});
        auto res = global_primitive(omega, ctx);
        CHECK(res.report.status == "exact-solved");
        CHECK(res.report.residual <= 1e-10);
    }

    TEST_CASE("zero form")
    {
        auto ctx = circle();
        auto res = global_primitive(Form::zero(1, 1), ctx);
        CHECK(res.report.status == "exact-solved");
        REQUIRE(res.xi.has_value());
        auto pts = pftest::random_points(1, 100, 2);
        CHECK(pftest::max_abs_value(*res.xi, pts) == 0.0);
        CHECK(res.report.ratio == 0.0);
    }

    TEST_CASE("primitive is linear in ω")
    {
        auto ctx = circle();
        auto w1 = exact_circle_form(1, 1.0);
        auto w2 = exact_circle_form(2, 0.5);
        auto combined = global_primitive(linear_combination({{2.0, w1}, {-3.0, w2}}), ctx);
        auto a = global_primitive(w1, ctx);
        auto b = global_primitive(w2, ctx);
        REQUIRE(combined.xi.has_value());
        REQUIRE(a.xi.has_value());
        REQUIRE(b.xi.has_value());
        auto pts = pftest::random_points(1, 200, 6);
        auto expected = linear_combination({{2.0, *a.xi}, {-3.0, *b.xi}});
        CHECK(max_abs_difference(*combined.xi, expected, pts) <= 1e-9);
    }
}
