#include "pf/error.hpp"
#include "pf/lp_examples.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace pf;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// ∫_{ε<|x|<1} |x|^{-p} dx in closed form.
double exact_power(double p, double eps)
{
    if (p == 2.0)
        return kTwoPi * std::log(1.0 / eps);
    return kTwoPi * (std::pow(eps, 2.0 - p) - 1.0) / (p - 2.0);
}

} // namespace

TEST_SUITE("lp")
{
    TEST_CASE("angle form values")
    {
        auto w = angle_form();
        std::vector<double> a{1.0, 0.0};
        auto va = w.values(a);
        CHECK(va[0] == doctest::Approx(0.0));
        CHECK(va[1] == doctest::Approx(1.0));
        std::vector<double> b{0.0, 2.0};
        auto vb = w.values(b);
        CHECK(vb[0] == doctest::Approx(-0.5));
        CHECK(vb[1] == doctest::Approx(0.0));
        CHECK(w.pointwise_norm(b) == doctest::Approx(0.5));
        std::vector<double> origin{0.0, 0.0};
        CHECK_THROWS_AS(w.values(origin), DomainError);
    }

    TEST_CASE("angle form is closed with period 2π")
    {
        auto w = angle_form();
        CHECK(angle_form_closedness(w) <= 1e-10);
        for (double radius : {0.1, 0.5, 0.9})
            CHECK(std::abs(circle_period(w, radius) - kTwoPi) <= 1e-9);
    }

    TEST_CASE("annulus integrals against closed forms")
    {
        auto w = angle_form();
        for (double p : {1.0, 2.0, 3.0, 4.0})
            for (double eps : {1e-1, 1e-2, 1e-3}) {
                AnnulusSpec spec;
                spec.inner = eps;
                CAPTURE(p);
                CAPTURE(eps);
                double got = annulus_lp_power(w, p, spec);
                CHECK(got == doctest::Approx(exact_power(p, eps)).epsilon(1e-9));
            }
    }

    TEST_CASE("divergence regimes")
    {
        std::vector<double> eps{1e-1, 1e-2, 1e-3};
        auto s4 = lp_divergence_scan(4.0, eps);
        CHECK(s4.regime == "divergent-power");
        CHECK(s4.expected_slope == -2.0);
        CHECK(std::abs(s4.slope + 2.0) <= 0.05);

        auto s3 = lp_divergence_scan(3.0, eps);
        CHECK(std::abs(s3.slope + 1.0) <= 0.05);
        CHECK(std::abs(s3.tail_slope + 1.0) <= 0.01);

        auto s2 = lp_divergence_scan(2.0, eps);
        CHECK(s2.regime == "divergent-log");
        CHECK(s2.log_rate == doctest::Approx(kTwoPi).epsilon(1e-9));

        auto s1 = lp_divergence_scan(1.0, {1e-2, 1e-4, 1e-8});
        CHECK(s1.regime == "convergent");
        CHECK(s1.rows.back().integral == doctest::Approx(kTwoPi).epsilon(1e-7));
        REQUIRE(s1.rows.size() == 3);
        CHECK(s1.rows[0].log_epsilon == doctest::Approx(std::log(1e-2)));
    }
}
