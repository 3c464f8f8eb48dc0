#include "pf/cover.hpp"
#include "pf/error.hpp"
#include "pf/nerve.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

using namespace pf;

namespace {

// ∂_{j} ∘ ∂_{j+1} as a dense integer product.
bool boundary_squares_to_zero(const NerveComplex& nc)
{
    for (int j = 1; j + 1 < nc.levels(); ++j) {
        std::map<std::pair<int, int>, long> prod;
        auto outer = nc.boundary(j);
        auto inner = nc.boundary(j + 1);
        for (const auto& b : inner)
            for (const auto& a : outer)
                if (a.col == b.row)
                    prod[{a.row, b.col}] += static_cast<long>(a.value) * b.value;
        for (const auto& [k, v] : prod)
            if (v != 0)
                return false;
    }
    return true;
}

std::set<std::set<int>> relabeled(const NerveComplex& nc, const std::vector<int>& label)
{
    std::set<std::set<int>> out;
    for (int j = 0; j < nc.levels(); ++j)
        for (const auto& t : nc.simplices(j)) {
            std::set<int> s;
            for (int i : t)
                s.insert(label[i]);
            out.insert(s);
        }
    return out;
}

} // namespace

TEST_SUITE("cover-nerve")
{
    TEST_CASE("three-arc circle cover")
    {
        auto cover = build_box_cover(Geometry::torus(1), 3, 0.5);
        REQUIRE(cover.size() == 3);
        for (int i = 0; i < 3; ++i)
            CHECK(cover.hi_exact(i)[0] - cover.lo_exact(i)[0] == Rational(1, 2));
        CHECK(cover.lo_exact(1)[0] - cover.lo_exact(0)[0] == Rational(1, 3));
        CHECK(cover.lo_exact(2)[0] - cover.lo_exact(0)[0] == Rational(2, 3));
        auto nc = nerve(cover);
        CHECK(nc.count(0) == 3);
        CHECK(nc.simplices(1) == std::vector<Tuple>{{0, 1}, {0, 2}, {1, 2}});
        CHECK(nc.count(2) == 0);
        CHECK_FALSE(cover.intersection({0, 1, 2}).has_value());
        CHECK(betti_numbers(nc, 1) == std::vector<int>{1, 1});
        CHECK(cover.coverage_holes() == 0);
    }

    TEST_CASE("4x4 torus cover")
    {
        auto cover = build_box_cover(Geometry::torus(2), 4, 0.5);
        CHECK(cover.size() == 16);
        auto nc = nerve(cover);
        CHECK(betti_numbers(nc, 2) == std::vector<int>{1, 2, 1});
        CHECK(boundary_squares_to_zero(nc));
        CHECK(cover.coverage_holes() == 0);
        for (int j = 0; j < nc.levels(); ++j)
            CHECK(std::is_sorted(nc.simplices(j).begin(), nc.simplices(j).end()));
    }

    TEST_CASE("interval cover of a box")
    {
        auto cover = build_box_cover(Geometry::box({0.0}, {1.0}), 2, 0.2);
        auto nc = nerve(cover);
        CHECK(nc.count(0) == 2);
        CHECK(nc.count(1) == 1);
        CHECK(betti_numbers(nc, 1) == std::vector<int>{1, 0});
    }

    TEST_CASE("star covers of single simplices")
    {
        auto tri = Cover::star(Geometry::simplex({{0, 0}, {1, 0}, {0, 1}}));
        auto nc = nerve(tri);
        CHECK(nc.count(0) == 3);
        CHECK(nc.count(1) == 3);
        CHECK(nc.count(2) == 1);
        CHECK(betti_numbers(nc, 2) == std::vector<int>{1, 0, 0});
        CHECK(boundary_squares_to_zero(nc));
        auto seg = Cover::star(Geometry::simplex({{0.0}, {1.0}}));
        auto ns = nerve(seg);
        CHECK(ns.count(0) == 2);
        CHECK(ns.count(1) == 1);
        auto tet = Cover::star(Geometry::simplex({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
        CHECK(betti_numbers(nerve(tet), 3) == std::vector<int>{1, 0, 0, 0});
        CHECK_THROWS(Geometry::simplex({{0, 0}, {1, 1}, {2, 2}}));
    }

    TEST_CASE("nerve is invariant under relabeling")
    {
        auto base = build_box_cover(Geometry::torus(2), 4, 0.5);
        std::vector<int> perm(base.size());
        for (int i = 0; i < base.size(); ++i)
            perm[i] = (7 * i + 3) % base.size();
        // new piece k is old piece perm[k]
        std::vector<std::vector<Rational>> lo(base.size()), hi(base.size());
        for (int k = 0; k < base.size(); ++k) {
            lo[k] = base.lo_exact(perm[k]);
            hi[k] = base.hi_exact(perm[k]);
        }
        auto shuffled = Cover::from_boxes(Geometry::torus(2), lo, hi, 0.5);
        auto a = nerve(base);
        auto b = nerve(shuffled);
        std::vector<int> identity(base.size());
        for (int i = 0; i < base.size(); ++i)
            identity[i] = i;
        CHECK(relabeled(a, identity) == relabeled(b, perm));
        CHECK(betti_numbers(b, 2) == std::vector<int>{1, 2, 1});
    }

    TEST_CASE("box intersections agree with per-axis interval arithmetic")
    {
        auto cover = build_box_cover(Geometry::box({0, 0}, {1, 1}), 3, 0.4);
        for (int i = 0; i < cover.size(); ++i)
            for (int j = i + 1; j < cover.size(); ++j) {
                bool overlap = true;
                for (int a = 0; a < 2; ++a)
                    overlap = overlap && std::max(cover.lo_exact(i)[a], cover.lo_exact(j)[a]) <
                                             std::min(cover.hi_exact(i)[a], cover.hi_exact(j)[a]);
                CHECK(cover.intersection({i, j}).has_value() == overlap);
            }
    }

    TEST_CASE("cover construction errors")
    {
        CHECK_THROWS_AS(build_box_cover(Geometry::torus(1), 3, 1.0), InvalidArgument);
        CHECK_THROWS_AS(build_box_cover(Geometry::torus(1), 3, 0.0), InvalidArgument);
        // two cells of width 3/4 would wrap more than half the circle
        CHECK_THROWS_AS(build_box_cover(Geometry::torus(1), 2, 0.5), InvalidArgument);
    }

    TEST_CASE("integer cycle bases")
    {
        auto circle = nerve(build_box_cover(Geometry::torus(1), 3, 0.5));
        auto cyc = circle.homology_basis(1);
        REQUIRE(cyc.size() == 1);
        // ∂ of the cycle vanishes
        std::vector<long> img(3, 0);
        for (const auto& e : circle.boundary(1))
            img[e.row] += e.value * cyc[0][e.col];
        CHECK(img == std::vector<long>{0, 0, 0});
        auto torus = nerve(build_box_cover(Geometry::torus(2), 4, 0.5));
        CHECK(torus.homology_basis(1).size() == 2);
        CHECK(torus.homology_basis(2).size() == 1);
    }
}
