#include "helpers.hpp"

#include "pf/error.hpp"
#include "pf/io.hpp"
#include "pfcli/cli.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace pf;
using pfcli::RunConfig;

namespace {

RunConfig command(const std::string& name)
{
    RunConfig c;
    c.command = name;
    return c;
}

} // namespace

TEST_SUITE("io-cli")
{
    TEST_CASE("canonical dump")
    {
        Json j = {{"b", 1.5}, {"a", {1, 2, 3}}, {"c", {{"z", -0.0}, {"y", "s"}}}};
        j["nan"] = std::numeric_limits<double>::quiet_NaN();
        std::string text = canonical_dump(j, 6);
        CHECK(text.find("\"a\": [1, 2, 3]") != std::string::npos);
        CHECK(text.find("1.500000e+00") != std::string::npos);
        CHECK(text.find("\"nan\": null") != std::string::npos);
        CHECK(text.find("-0") == std::string::npos);
        CHECK(text.find("\"a\"") < text.find("\"b\""));
        CHECK(canonical_dump(Json::parse(text), 6) == text);
    }

    TEST_CASE("cover files round trip")
    {
        auto cover = build_box_cover(Geometry::torus(2), 4, 0.5);
        auto back = cover_from_json(cover_to_json(cover));
        REQUIRE(back.size() == cover.size());
        for (int i = 0; i < cover.size(); ++i) {
            CHECK(back.lo_exact(i) == cover.lo_exact(i));
            CHECK(back.hi_exact(i) == cover.hi_exact(i));
        }
        Json grid = {{"geometry", {{"kind", "torus"}, {"dim", 1}}}, {"grid", {{"cells", 3}, {"overlap", 0.5}}}};
        CHECK(cover_from_json(grid).size() == 3);
        CHECK(rational_to_string(Rational(3, 16)) == "3/16");
        CHECK(rational_from_json(Json("-1/16")) == Rational(-1, 16));
        CHECK(rational_from_json(Json(0.25)) == Rational(1, 4));
    }

    TEST_CASE("config parsing")
    {
        Json j = {{"command", "constant"}, {"p", 3.0}, {"q", 1.5}, {"r", 1}, {"n", 2}};
        auto c = pfcli::config_from_json(j);
        CHECK(c.command == "constant");
        CHECK(c.p == 3.0);
        CHECK(c.q == 1.5);
        CHECK_NOTHROW(pfcli::validate(c));
        CHECK_THROWS_AS(pfcli::config_from_json(Json{{"command", "cech"}, {"bogus", 1}}), InvalidArgument);
        CHECK_THROWS_AS(pfcli::config_from_json(Json{{"p", "two"}}), InvalidArgument);
        CHECK_THROWS_AS(pfcli::validate(command("nope")), InvalidArgument);
        auto inline_form = pfcli::load_json_arg(R"({"dim": 1, "degree": 0, "terms": []})");
        CHECK(inline_form["dim"] == 1);
    }

    TEST_CASE("exit codes")
    {
        CHECK(pfcli::exit_code_for(InvalidArgument("x")) == pfcli::kConfigError);
        CHECK(pfcli::exit_code_for(DomainError("x")) == pfcli::kConfigError);
        CHECK(pfcli::exit_code_for(VerificationFailure("x", 0.5)) == pfcli::kVerificationFailure);
        auto err = Json::parse(pfcli::error_json(VerificationFailure("bad", 0.25)));
        CHECK(err["exit_code"] == 2);
        CHECK(err["error"]["residual"] == 0.25);

        auto c = command("constant");
        c.p = 4.0;
        c.q = 1.0; // 1/q - 1/p >= 1/n
        CHECK_THROWS_AS(pfcli::execute(c), InvalidArgument);

        auto prim = command("primitive");
        prim.cover = Json{{"geometry", {{"kind", "torus"}, {"dim", 1}}}, {"grid", {{"cells", 3}, {"overlap", 0.5}}}};
        prim.form = form_to_json(Form::from_dense(1, 1, {ScalarField::constant(1, 1.0)}));
        prim.grid_points = 100;
        auto res = pfcli::execute(prim);
        CHECK(res.exit_code == pfcli::kObstruction);
        CHECK(res.report["status"] == "obstructed");
    }

    TEST_CASE("reports are deterministic")
    {
        auto c = command("homotopy-check");
        c.count = 4;
        auto a = pfcli::execute(c);
        auto b = pfcli::execute(c);
        CHECK(a.exit_code == pfcli::kOk);
        CHECK(canonical_dump(a.report) == canonical_dump(b.report));
        CHECK(a.report["schema"] == "pf.report/v1");

        auto cech = command("cech");
        cech.cover = Json{{"geometry", {{"kind", "torus"}, {"dim", 2}}}, {"grid", {{"cells", 4}, {"overlap", 0.5}}}};
        auto r = pfcli::execute(cech);
        CHECK(r.report["nerve"]["betti"] == Json({1, 2, 1}));
    }
}
