#include "helpers.hpp"

#include "pf/error.hpp"
#include "pf/io.hpp"
#include "pf/lp_examples.hpp"
#include "pf/pullback.hpp"
#include "pf/random_forms.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace pf;
using pftest::poly;
using pftest::random_points;

TEST_SUITE("forms")
{
    TEST_CASE("coefficient access with permuted indices")
    {
        Form w = Form::from_dense(2, 1, {ScalarField::zero(2), poly(2, {{1.0, {1, 0}}})});
        double x[2] = {0.5, 0.2};
        int dy[1] = {1};
        int dx[1] = {0};
        CHECK(eval_form(w, x, dy) == 0.5);
        CHECK(eval_form(w, x, dx) == 0.0);
        Form area = Form::basis(2, {0, 1});
        int swapped[2] = {1, 0};
        CHECK(eval_form(area, x, swapped) == -1.0);
        int repeated[2] = {1, 1};
        CHECK(eval_form(area, x, repeated) == 0.0);
    }

    TEST_CASE("exterior derivative examples")
    {
        auto pts = random_points(2, 100, 7);
        // d(xy) = y dx + x dy
        Form f = Form::scalar(poly(2, {{1.0, {1, 1}}}));
        Form expect = Form::from_dense(2, 1, {poly(2, {{1.0, {0, 1}}}), poly(2, {{1.0, {1, 0}}})});
        CHECK(max_abs_difference(f.d(), expect, pts) == 0.0);
        // d(x dy) = dx∧dy
        Form xdy = Form::from_dense(2, 1, {ScalarField::zero(2), poly(2, {{1.0, {1, 0}}})});
        CHECK(max_abs_difference(xdy.d(), Form::basis(2, {0, 1}), pts) == 0.0);
        // d∘d(x²y) = 0
        Form g = Form::scalar(poly(2, {{1.0, {2, 1}}}));
        CHECK(pftest::max_abs_value(g.d().d(), pts) <= 1e-12);
    }

    TEST_CASE("d∘d vanishes for random polynomial, trig and evaluator forms")
    {
        std::mt19937_64 rng(11);
        auto pts = random_points(3, 100, 3);
        for (int r = 0; r <= 1; ++r) {
            Form w = random_polynomial_form(3, r, 3, rng);
            CHECK(pftest::max_abs_value(w.d().d(), pts) <= 1e-12);
        }
        TrigPolynomial t(3);
        t.add_term(0.7, {1, 2, 0}, TrigPolynomial::Phase::Sin);
        t.add_term(-1.3, {0, 1, 1}, TrigPolynomial::Phase::Cos);
        Form tw = Form::from_dense(3, 1, {ScalarField(t), ScalarField(t), ScalarField::zero(3)});
        CHECK(pftest::max_abs_value(tw.d().d(), pts) <= 1e-12);
        Form ang = angle_form();
        auto annulus = random_points(2, 100, 5, 0.2, 0.9);
        CHECK(pftest::max_abs_value(ang.d().d(), annulus) <= 1e-8);
    }

    TEST_CASE("wedge products")
    {
        auto pts = random_points(2, 20, 1);
        Form dx = Form::basis(2, {0});
        Form dy = Form::basis(2, {1});
        CHECK(pftest::max_abs_value(wedge(dx, dx), pts) == 0.0);
        CHECK(max_abs_difference(wedge(dx, dy), -1.0 * wedge(dy, dx), pts) == 0.0);
        Form xdx = Form::from_dense(2, 1, {poly(2, {{1.0, {1, 0}}}), ScalarField::zero(2)});
        Form ydy = Form::from_dense(2, 1, {ScalarField::zero(2), poly(2, {{1.0, {0, 1}}})});
        Form expect = Form::from_dense(2, 2, {poly(2, {{1.0, {1, 1}}})});
        CHECK(max_abs_difference(wedge(xdx, ydy), expect, pts) <= 1e-15);
        // degree overflow gives the zero form
        Form over = wedge(Form::basis(2, {0, 1}), dx);
        CHECK(over.is_zero());
    }

    TEST_CASE("Leibniz rule")
    {
        std::mt19937_64 rng(5);
        auto pts = random_points(3, 100, 9);
        for (int da = 0; da <= 1; ++da) {
            Form a = random_polynomial_form(3, da, 2, rng);
            Form b = random_polynomial_form(3, 1, 2, rng);
            Form lhs = wedge(a, b).d();
            Form rhs = wedge(a.d(), b) + (da % 2 == 0 ? 1.0 : -1.0) * wedge(a, b.d());
            CHECK(max_abs_difference(lhs, rhs, pts) <= 1e-12);
        }
    }

    TEST_CASE("pointwise norm")
    {
        double x[2] = {0.3, -0.4};
        CHECK(pointwise_norm(Form::basis(2, {0}), x) == 1.0);
        CHECK(pointwise_norm(Form::basis(2, {0}) + Form::basis(2, {1}), x) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
        double y[2] = {0.0, 2.0};
        CHECK(pointwise_norm(angle_form(), y) == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(pointwise_norm(angle_form(), x) == doctest::Approx(2.0).epsilon(1e-14));
    }

    TEST_CASE("closure without gradient cannot be differentiated")
    {
        auto f = ScalarField::closure(2, [](std::span<const double> x) { return x[0] * x[1]; });
        Form w = Form::scalar(f);
        double x[2] = {0.2, 0.3};
        CHECK_THROWS_AS(w.d().values(x), UnsupportedOperation);
    }

    TEST_CASE("gradients agree with central differences")
    {
        // fourth-order stencil keeps the oracle's truncation error near 1e-8
        const double h = 1e-3;
        TrigPolynomial t(2);
        t.add_term(1.0, {1, -2}, TrigPolynomial::Phase::Sin);
        Bump b{{0.6, 0.6}, {0.7, 0.7}, {0.0, 0.0}, {1.3, 1.3}};
        std::vector<ScalarField> fields = {poly(2, {{1.0, {3, 1}}, {-2.0, {0, 2}}}), ScalarField(t), ScalarField(b)};
        auto pts = random_points(2, 50, 21, 0.05, 0.95);
        for (const auto& f : fields) {
            double worst = 0.0;
            for (size_t at = 0; at < pts.size(); at += 2) {
                double x[2] = {pts[at], pts[at + 1]};
                double g[2];
                f.gradient(x, g);
                for (int k = 0; k < 2; ++k) {
                    auto at_offset = [&](double s) {
                        double y[2] = {x[0], x[1]};
                        y[k] += s * h;
                        return f.evaluate(y);
                    };
                    double fd = (8 * (at_offset(1) - at_offset(-1)) - (at_offset(2) - at_offset(-2))) / (12 * h);
                    worst = std::max(worst, std::abs(fd - g[k]));
                }
            }
            CHECK(worst <= 1e-6);
        }
    }

    TEST_CASE("pullback split matches the Jacobian-minor pullback")
    {
        std::mt19937_64 rng(17);
        const int n = 3;
        for (int r = 1; r <= 3; ++r) {
            Form w = random_polynomial_form(n, r, 2, rng);
            double y[3] = {0.2, 0.7, 0.4};
            auto split = pullback_split(w, y);
            Form rec = split.reconstruct();
            REQUIRE(rec.dim() == n + 1);
            REQUIRE(rec.degree() == r);
            const auto& big = IndexTable::get(n + 1, r);
            const auto& small = IndexTable::get(n, r);
            auto pts = random_points(n + 1, 30, 100 + r);
            double worst = 0.0;
            for (size_t at = 0; at < pts.size(); at += n + 1) {
                std::span<const double> xt(pts.data() + at, n + 1);
                double t = xt[n];
                std::vector<double> psi(n);
                for (int i = 0; i < n; ++i)
                    psi[i] = t * xt[i] + (1 - t) * y[i];
                auto wv = w.values(psi);
                auto rv = rec.values(xt);
                // Jacobian: rows ψ_i, columns (x_0..x_{n-1}, t).
                auto jac = [&](int i, int j) { return j < n ? (i == j ? t : 0.0) : xt[i] - y[i]; };
                for (int L = 0; L < big.size(); ++L) {
                    const auto& cols = big.indices(L);
                    double expect = 0.0;
                    for (int I = 0; I < small.size(); ++I) {
                        const auto& rows = small.indices(I);
                        // r x r determinant by permutation expansion
                        std::vector<int> perm(r);
                        for (int k = 0; k < r; ++k)
                            perm[k] = k;
                        double det = 0.0;
                        do {
                            double prod = permutation_sign(perm);
                            for (int k = 0; k < r; ++k)
                                prod *= jac(rows[k], cols[perm[k]]);
                            det += prod;
                        } while (std::next_permutation(perm.begin(), perm.end()));
                        expect += wv[I] * det;
                    }
                    worst = std::max(worst, std::abs(expect - rv[L]));
                }
            }
            CHECK(worst <= 1e-12);
        }
    }

    TEST_CASE("pullback split examples")
    {
        double y0[2] = {0.0, 0.0};
        auto s = pullback_split(Form::basis(2, {0}), y0);
        double xt[3] = {0.3, 0.8, 0.6};
        CHECK(s.alpha0.values(xt)[0] == doctest::Approx(0.6));
        CHECK(s.alpha1.values(xt)[0] == doctest::Approx(0.3));
        auto a = pullback_split(Form::basis(2, {0, 1}), y0);
        auto v = a.alpha1.values(xt); // t(x dy - y dx)
        CHECK(v[0] == doctest::Approx(-0.6 * 0.8));
        CHECK(v[1] == doctest::Approx(0.6 * 0.3));
        auto z = pullback_split(Form::zero(2, 1), y0);
        CHECK(z.alpha1.values(xt)[0] == 0.0);
    }

    TEST_CASE("JSON round trip is exact for symbolic kinds")
    {
        std::mt19937_64 rng(3);
        Form w = random_polynomial_form(3, 2, 3, rng);
        Form back = form_from_json(Json::parse(canonical_dump(form_to_json(w), 16)));
        auto pts = random_points(3, 50, 2);
        CHECK(max_abs_difference(w, back, pts) == 0.0);
        TrigPolynomial t(2);
        t.add_term(2.0 * std::numbers::pi, {1, 0}, TrigPolynomial::Phase::Cos);
        Form tw = Form::from_dense(2, 2, {ScalarField(t)});
        Form tb = form_from_json(Json::parse(canonical_dump(form_to_json(tw), 16)));
        CHECK(max_abs_difference(tw, tb, random_points(2, 50, 4)) == 0.0);
        CHECK_THROWS_AS(form_to_json(angle_form()), UnsupportedOperation);
    }

    TEST_CASE("evaluation is bit-stable")
    {
        std::mt19937_64 rng(8);
        Form w = random_polynomial_form(2, 1, 3, rng);
        double x[2] = {0.123, 0.456};
        auto a = w.values(x);
        auto b = w.values(x);
        CHECK(a == b);
    }
}
