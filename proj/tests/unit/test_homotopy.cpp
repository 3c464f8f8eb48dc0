#include "helpers.hpp"

#include "pf/constants.hpp"
#include "pf/error.hpp"
#include "pf/homotopy.hpp"
#include "pf/random_forms.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <doctest.h>

#include <cmath>

using namespace pf;
using pftest::poly;
using pftest::random_points;

namespace {

// Independent oracle: the defining integral with the min() kept explicit,
// integrated by double-exponential quadrature on each half.
double oracle_C(double p, double q, int r, int n)
{
    auto pair = admissible_exponents(p, q, n);
    double a = pair.kind == ExponentCase::I ? n / p : n / q;
    auto f = [&](double t) {
        return std::min(std::pow(t, a), std::pow(1 - t, a)) * std::pow(t, r - a) * std::pow(1 - t, -n / q);
    };
    boost::math::quadrature::tanh_sinh<double> ts;
    return ts.integrate(f, 0.0, 0.5) + ts.integrate(f, 0.5, 1.0);
}

} // namespace

TEST_SUITE("homotopy")
{
    TEST_CASE("cone operator examples on the unit square")
    {
        auto D = ConvexDomain::unit_box(2);
        double y[2] = {0.0, 0.0};
        Form k1 = homotopy_operator(D, y, Form::basis(2, {0}));
        double x[2] = {0.5, 0.25};
        CHECK(k1.values(x)[0] == doctest::Approx(0.5).epsilon(1e-15));
        Form k2 = homotopy_operator(D, y, Form::basis(2, {0, 1}));
        double e1[2] = {1.0, 0.0};
        auto v = k2.values(e1);
        CHECK(v[0] == doctest::Approx(0.0));
        CHECK(v[1] == doctest::Approx(0.5).epsilon(1e-15));
        Form kz = homotopy_operator(D, y, Form::zero(2, 2));
        CHECK(pftest::max_abs_value(kz, random_points(2, 10, 1)) == 0.0);
    }

    TEST_CASE("operator preconditions")
    {
        auto D = ConvexDomain::unit_box(2);
        double inside[2] = {0.5, 0.5};
        double outside[2] = {1.5, 0.5};
        CHECK_THROWS_AS(homotopy_operator(D, inside, Form::constant(2, 1.0)), InvalidArgument);
        CHECK_THROWS_AS(homotopy_operator(D, outside, Form::basis(2, {0})), DomainError);
    }

    TEST_CASE("averaged operator examples")
    {
        auto D = ConvexDomain::unit_box(2);
        auto pts = random_points(2, 200, 4);
        Form a1 = averaged_homotopy(D, Form::basis(2, {0}));
        Form e1 = Form::scalar(poly(2, {{1.0, {1, 0}}, {-0.5, {0, 0}}}));
        CHECK(max_abs_difference(a1, e1, pts) <= 1e-14);
        Form a2 = averaged_homotopy(D, Form::basis(2, {0, 1}));
        Form e2 = Form::from_dense(2, 1, {poly(2, {{-0.5, {0, 1}}, {0.25, {0, 0}}}),
                                          poly(2, {{0.5, {1, 0}}, {-0.25, {0, 0}}})});
        CHECK(max_abs_difference(a2, e2, pts) <= 1e-14);
    }

    TEST_CASE("homotopy identity on random polynomial forms")
    {
        std::mt19937_64 rng(2024);
        double worst = 0.0;
        for (int k = 0; k < 20; ++k) {
            int n = 2 + k % 2;
            int r = 1 + (k / 2) % 2;
            auto D = ConvexDomain::unit_box(n);
            Form w = random_polynomial_form(n, r, k % 4, rng);
            auto y = D.probes(1, 1000 + k);
            Form lhs = homotopy_operator(D, y, w).d() +
                       (r < n ? homotopy_operator(D, y, w.d()) : Form::zero(n, r));
            worst = std::max(worst, max_abs_difference(lhs, w, random_points(n, 1000, k)));
        }
        CHECK(worst <= 1e-9);
    }

    TEST_CASE("homotopy identity on trig forms uses the quadrature path")
    {
        TrigPolynomial t(2);
        t.add_term(1.0, {1, 1}, TrigPolynomial::Phase::Sin);
        t.add_term(0.5, {0, 2}, TrigPolynomial::Phase::Cos);
        Form w = Form::from_dense(2, 1, {ScalarField(t), ScalarField::zero(2)});
        auto D = ConvexDomain::unit_box(2);
        double y[2] = {0.3, 0.6};
        Form lhs = homotopy_operator(D, y, w).d() + homotopy_operator(D, y, w.d());
        CHECK(max_abs_difference(lhs, w, random_points(2, 1000, 2)) <= 1e-9);
    }

    TEST_CASE("averaged identity dA + A d = id")
    {
        std::mt19937_64 rng(99);
        auto D = ConvexDomain::unit_box(2);
        Form w = random_polynomial_form(2, 1, 3, rng);
        Form lhs = averaged_homotopy(D, w).d() + averaged_homotopy(D, w.d());
        CHECK(max_abs_difference(lhs, w, random_points(2, 1000, 6)) <= 1e-9);
    }

    TEST_CASE("translation commutes with the cone operator")
    {
        std::mt19937_64 rng(1);
        Form w = random_polynomial_form(2, 2, 2, rng);
        double shift[2] = {0.25, -0.5};
        double y[2] = {0.4, 0.3};
        double ys[2] = {y[0] - shift[0], y[1] - shift[1]};
        // (K_y w)(x + s) = (K_{y-s} w(· + s))(x)
        Form a = homotopy_operator(ConvexDomain::unit_box(2), y, w).translated(shift);
        Form b = cone_operator(ys, w.translated(shift));
        CHECK(max_abs_difference(a, b, random_points(2, 100, 3)) <= 1e-14);
    }

    TEST_CASE("exponent classification")
    {
        CHECK(admissible_exponents(2, 2, 2).kind == ExponentCase::I);
        auto bad = admissible_exponents(4, 1, 2);
        CHECK(bad.kind == ExponentCase::Inadmissible);
        CHECK_FALSE(bad.violated.empty());
        for (int n = 1; n <= 4; ++n)
            CHECK(admissible_exponents(1, 2, n).kind == ExponentCase::II);
        CHECK_THROWS_AS(poincare_constant_C(4, 1, 1, 2), InvalidArgument);
    }

    TEST_CASE("constant C against closed forms and an independent oracle")
    {
        const double ln2 = std::log(2.0);
        CHECK(std::abs(poincare_constant_C(1, 1, 1, 1) - ln2) <= 1e-8);
        CHECK(std::abs(poincare_constant_C(2, 2, 1, 2) - ln2) <= 1e-8);
        // (1,2,1,1): ∫_0^½ t(1-t)^{-1/2} + ∫_½^1 t^{1/2} = (4/3 - 5/(3√2)) + (2/3)(1 - 2^{-3/2}) = 2 - √2.
        double closed = (4.0 / 3.0 - 5.0 / (3.0 * std::sqrt(2.0))) + (2.0 / 3.0) * (1.0 - std::pow(0.5, 1.5));
        CHECK(closed == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-15));
        CHECK(std::abs(poincare_constant_C(1, 2, 1, 1) - closed) <= 1e-8);
        struct Case { double p, q; int r, n; };
        for (auto c : {Case{1, 2, 1, 1}, Case{2, 3, 1, 2}, Case{3, 2, 2, 3}, Case{2, 2, 0, 2}, Case{1.5, 4, 2, 3}}) {
            double v = poincare_constant_C(c.p, c.q, c.r, c.n);
            double o = oracle_C(c.p, c.q, c.r, c.n);
            CHECK(std::abs(v - o) <= 1e-8 * std::max(1.0, std::abs(o)));
        }
    }

    TEST_CASE("constant is stable under tighter quadrature")
    {
        ConstantOptions tight;
        tight.abs_tol = 1e-13;
        tight.rel_tol = 1e-13;
        tight.max_intervals = 20000;
        for (double q : {1.2, 1.5, 2.0}) {
            double a = poincare_constant_C(2, q, 1, 2);
            double b = poincare_constant_C(2, q, 1, 2, tight);
            CHECK(std::abs(a - b) <= 1e-8 * std::abs(b));
        }
    }

    TEST_CASE("theorem constant")
    {
        const double ln2 = std::log(2.0);
        auto unit = ConvexDomain::unit_box(2);
        CHECK(theorem_constant_c(2, 2, 1, unit) == doctest::Approx(std::sqrt(2.0) * ln2).epsilon(1e-9));
        auto big = ConvexDomain::box({0, 0}, {2, 2});
        CHECK(theorem_constant_c(2, 2, 1, big) == doctest::Approx(2 * std::sqrt(2.0) * ln2).epsilon(1e-9));
    }

    TEST_CASE("L^p norms")
    {
        auto D = ConvexDomain::unit_box(2);
        CHECK(lp_norm(Form::basis(2, {0}), D, 2) == doctest::Approx(1.0).epsilon(1e-14));
        Form xdx = Form::from_dense(2, 1, {poly(2, {{1.0, {1, 0}}}), ScalarField::zero(2)});
        CHECK(lp_norm(xdx, D, 2) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
        CHECK(lp_norm(Form::zero(2, 1), D, 2) == 0.0);
        auto tri = ConvexDomain::simplex({{0, 0}, {1, 0}, {0, 1}});
        CHECK(lp_norm(Form::basis(2, {0, 1}), tri, 1) == doctest::Approx(0.5).epsilon(1e-14));
    }

    TEST_CASE("local primitive certificate")
    {
        auto D = ConvexDomain::unit_box(2);
        auto lp = local_primitive(D, Form::basis(2, {0, 1}), 2, 2);
        CHECK(std::abs(lp.cert.norm_xi - 1.0 / std::sqrt(24.0)) <= 1e-9);
        CHECK(lp.cert.bound == doctest::Approx(std::sqrt(2.0) * std::log(2.0)).epsilon(1e-9));
        CHECK(lp.cert.ratio <= lp.cert.bound);
        CHECK(lp.cert.bound_holds);

        Form f = Form::scalar(poly(2, {{1.0, {2, 1}}}));
        auto lf = local_primitive(D, f.d(), 2, 2);
        CHECK(max_abs_difference(lf.xi.d(), f.d(), random_points(2, 1000, 8)) <= 1e-9);

        auto lz = local_primitive(D, Form::zero(2, 1), 2, 2);
        CHECK(lz.cert.ratio == 0.0);

        Form notclosed = Form::from_dense(2, 1, {ScalarField::zero(2), poly(2, {{1.0, {0, 1}}, {1.0, {1, 0}}})});
        CHECK_THROWS_AS(local_primitive(D, notclosed, 2, 2), VerificationFailure);
    }
}
