#include "pf/cover.hpp"

#include "pf/error.hpp"
#include "pf/multi_index.hpp"

#include <cmath>
#include <sstream>

namespace pf {

namespace {

using boost::multiprecision::cpp_int;

cpp_int floor_div(const Rational& x)
{
    cpp_int n = numerator(x);
    cpp_int d = denominator(x);
    cpp_int q = n / d;
    if (n % d != 0 && n < 0)
        q -= 1;
    return q;
}

cpp_int nearest_integer(const Rational& x) { return floor_div(x + Rational(1, 2)); }

double to_double(const Rational& x) { return x.convert_to<double>(); }

void check_tuple(const Tuple& I, int n)
{
    if (I.empty())
        throw InvalidArgument("empty cover tuple");
    for (std::size_t k = 0; k < I.size(); ++k) {
        if (I[k] < 0 || I[k] >= n)
            throw InvalidArgument("cover index out of range: " + std::to_string(I[k]));
        if (k > 0 && I[k] <= I[k - 1])
            throw InvalidArgument("cover tuple must be strictly increasing");
    }
}

} // namespace

Rational to_rational(double x, long max_den)
{
    if (!std::isfinite(x))
        throw InvalidArgument("cannot convert a non-finite value to a rational");
    // Continued-fraction convergents; stop at the denominator limit or once exact.
    Rational exact(x);
    cpp_int p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    Rational rest = exact;
    Rational best = Rational(floor_div(exact));
    for (int iter = 0; iter < 64; ++iter) {
        cpp_int a = floor_div(rest);
        cpp_int p2 = a * p1 + p0;
        cpp_int q2 = a * q1 + q0;
        if (q2 > max_den)
            break;
        best = Rational(p2, q2);
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        Rational frac = rest - Rational(a);
        if (frac == 0)
            break;
        rest = 1 / frac;
    }
    return best;
}

Geometry Geometry::box(std::vector<double> lo, std::vector<double> hi)
{
    ConvexDomain::box(lo, hi); // validates
    Geometry g;
    g.kind_ = Kind::Box;
    g.dim_ = static_cast<int>(lo.size());
    g.lo_ = std::move(lo);
    g.hi_ = std::move(hi);
    return g;
}

Geometry Geometry::torus(int dim)
{
    if (dim < 1 || dim > kMaxDim - 1)
        throw InvalidArgument("torus dimension out of range");
    Geometry g;
    g.kind_ = Kind::Torus;
    g.dim_ = dim;
    g.lo_.assign(dim, 0.0);
    g.hi_.assign(dim, 1.0);
    return g;
}

Geometry Geometry::simplex(std::vector<std::vector<double>> vertices)
{
    ConvexDomain::simplex(vertices); // validates
    Geometry g;
    g.kind_ = Kind::Simplex;
    g.dim_ = static_cast<int>(vertices.size()) - 1;
    g.vertices_ = std::move(vertices);
    return g;
}

Geometry Geometry::punctured_disk()
{
    Geometry g;
    g.kind_ = Kind::PuncturedDisk;
    g.dim_ = 2;
    g.lo_ = {-1.0, -1.0};
    g.hi_ = {1.0, 1.0};
    return g;
}

ConvexDomain Geometry::fundamental_domain() const
{
    if (kind_ == Kind::Simplex)
        return ConvexDomain::simplex(vertices_);
    return ConvexDomain::box(lo_, hi_);
}

std::vector<double> Geometry::lift(std::span<const double> x, std::span<const double> center) const
{
    std::vector<double> out(x.begin(), x.begin() + dim_);
    if (kind_ == Kind::Torus)
        for (int i = 0; i < dim_; ++i)
            out[i] += std::round(center[i] - x[i]);
    return out;
}

std::string to_string(Geometry::Kind kind)
{
    switch (kind) {
    case Geometry::Kind::Box:
        return "box";
    case Geometry::Kind::Torus:
        return "torus";
    case Geometry::Kind::Simplex:
        return "simplex";
    case Geometry::Kind::PuncturedDisk:
        return "punctured-disk";
    }
    return "unknown";
}

Cover Cover::from_boxes(Geometry geometry, std::vector<std::vector<Rational>> lo,
                        std::vector<std::vector<Rational>> hi, double overlap,
                        std::optional<std::vector<std::pair<std::vector<double>, std::vector<double>>>> cores)
{
    if (geometry.kind() != Geometry::Kind::Box && geometry.kind() != Geometry::Kind::Torus)
        throw InvalidArgument("box pieces need a box or torus geometry");
    if (lo.size() != hi.size() || lo.empty())
        throw InvalidArgument("cover needs at least one piece with both corners");
    const int n = geometry.dim();
    Cover c;
    c.geometry_ = std::move(geometry);
    c.overlap_ = overlap;
    for (std::size_t j = 0; j < lo.size(); ++j) {
        if (static_cast<int>(lo[j].size()) != n || static_cast<int>(hi[j].size()) != n)
            throw DimensionMismatch("piece " + std::to_string(j) + " has wrong dimension");
        std::vector<double> dlo(n), dhi(n), center(n);
        for (int i = 0; i < n; ++i) {
            if (!(lo[j][i] < hi[j][i]))
                throw DomainError("piece " + std::to_string(j) + " is empty along axis " + std::to_string(i));
            if (c.geometry_.kind() == Geometry::Kind::Torus && hi[j][i] - lo[j][i] > Rational(1, 2)) {
                std::ostringstream os;
                os << "torus piece " << j << " has length " << to_double(hi[j][i] - lo[j][i])
                   << " > 1/2 along axis " << i << " (it would not lift to a single convex box)";
                throw InvalidArgument(os.str());
            }
            dlo[i] = to_double(lo[j][i]);
            dhi[i] = to_double(hi[j][i]);
            center[i] = to_double((lo[j][i] + hi[j][i]) / 2);
        }
        c.pieces_.push_back(ConvexDomain::box(dlo, dhi));
        c.centers_.push_back(center);
        if (cores) {
            const auto& [clo, chi] = cores->at(j);
            c.cores_.push_back(ConvexDomain::box(clo, chi));
        } else {
            // Undo the widening: each side was moved out by overlap/(1+overlap)/2
            // of the piece width, except sides clipped to the geometry.
            std::vector<double> clo = dlo, chi = dhi;
            for (int i = 0; i < n; ++i) {
                double margin = 0.5 * overlap / (1.0 + overlap) * (dhi[i] - dlo[i]);
                bool boxed = c.geometry_.kind() == Geometry::Kind::Box;
                if (!(boxed && dlo[i] <= c.geometry_.lo()[i]))
                    clo[i] += margin;
                if (!(boxed && dhi[i] >= c.geometry_.hi()[i]))
                    chi[i] -= margin;
            }
            c.cores_.push_back(ConvexDomain::box(clo, chi));
        }
    }
    c.lo_q_ = std::move(lo);
    c.hi_q_ = std::move(hi);
    return c;
}

Cover Cover::star(Geometry simplex_geometry)
{
    if (simplex_geometry.kind() != Geometry::Kind::Simplex)
        throw InvalidArgument("star cover needs a simplex geometry");
    Cover c;
    c.geometry_ = std::move(simplex_geometry);
    const auto& v = c.geometry_.vertices();
    for (int i = 0; i < static_cast<int>(v.size()); ++i) {
        c.pieces_.push_back(ConvexDomain::barycentric_region(v, {i}));
        c.centers_.push_back(v[i]);
    }
    return c;
}

std::optional<ConvexDomain> Cover::intersection(const Tuple& I) const
{
    check_tuple(I, size());
    if (is_star())
        return ConvexDomain::barycentric_region(geometry_.vertices(), I);
    const int n = dim();
    const bool torus = geometry_.kind() == Geometry::Kind::Torus;
    const int a = I.front();
    std::vector<double> lo(n), hi(n);
    for (int i = 0; i < n; ++i) {
        Rational l = lo_q_[a][i], h = hi_q_[a][i];
        Rational ca = (lo_q_[a][i] + hi_q_[a][i]) / 2;
        for (std::size_t k = 1; k < I.size(); ++k) {
            int b = I[k];
            Rational shift = 0;
            if (torus)
                shift = Rational(nearest_integer(ca - (lo_q_[b][i] + hi_q_[b][i]) / 2));
            l = std::max(l, Rational(lo_q_[b][i] + shift));
            h = std::min(h, Rational(hi_q_[b][i] + shift));
        }
        if (!(l < h))
            return std::nullopt;
        lo[i] = to_double(l);
        hi[i] = to_double(h);
    }
    return ConvexDomain::box(lo, hi);
}

std::vector<double> Cover::chart_shift(const Tuple& I, int a) const
{
    std::vector<double> shift(dim(), 0.0);
    if (geometry_.kind() != Geometry::Kind::Torus)
        return shift;
    auto dom = intersection(I);
    if (!dom)
        throw DomainError("chart shift requested for an empty intersection");
    auto c = dom->distinguished_point();
    for (int i = 0; i < dim(); ++i)
        shift[i] = std::round(centers_[a][i] - c[i]);
    return shift;
}

std::vector<double> Cover::lift(std::span<const double> x, int a) const
{
    return geometry_.lift(x, centers_.at(a));
}

int Cover::coverage_holes(int per_axis) const
{
    const int n = dim();
    auto fundamental = geometry_.fundamental_domain();
    int holes = 0;
    if (is_star()) {
        // Probe the simplex; every point has some positive barycentric coordinate.
        auto pts = fundamental.probes(per_axis * per_axis, kProbeSeed);
        for (std::size_t k = 0; k < pts.size(); k += n) {
            auto lambda = fundamental.barycentric({pts.data() + k, static_cast<std::size_t>(n)});
            bool hit = false;
            for (double l : lambda)
                hit = hit || l > 0.0;
            holes += hit ? 0 : 1;
        }
        return holes;
    }
    long total = 1;
    for (int i = 0; i < n; ++i)
        total *= per_axis;
    std::vector<double> x(n);
    for (long idx = 0; idx < total; ++idx) {
        long rest = idx;
        for (int i = n - 1; i >= 0; --i) {
            long k = rest % per_axis;
            rest /= per_axis;
            x[i] = fundamental.lo()[i] + (k + 0.5) / per_axis * (fundamental.hi()[i] - fundamental.lo()[i]);
        }
        bool hit = false;
        for (int a = 0; a < size() && !hit; ++a)
            hit = pieces_[a].contains(lift(x, a), 0.0);
        holes += hit ? 0 : 1;
    }
    return holes;
}

Cover build_box_cover(const Geometry& geometry, int cells_per_axis, double overlap)
{
    if (geometry.kind() != Geometry::Kind::Box && geometry.kind() != Geometry::Kind::Torus)
        throw InvalidArgument("box covers need a box or torus geometry");
    if (cells_per_axis < 1)
        throw InvalidArgument("cells per axis must be positive");
    if (!(overlap > 0.0) || !(overlap < 1.0))
        throw InvalidArgument("overlap must lie in (0,1)");
    const int n = geometry.dim();
    const bool torus = geometry.kind() == Geometry::Kind::Torus;
    Rational ov = to_rational(overlap);
    long count = 1;
    for (int i = 0; i < n; ++i)
        count *= cells_per_axis;
    std::vector<std::vector<Rational>> lo, hi;
    std::vector<std::pair<std::vector<double>, std::vector<double>>> cores;
    for (long idx = 0; idx < count; ++idx) {
        std::vector<int> cell(n);
        long rest = idx;
        for (int i = n - 1; i >= 0; --i) {
            cell[i] = static_cast<int>(rest % cells_per_axis);
            rest /= cells_per_axis;
        }
        std::vector<Rational> plo(n), phi(n);
        std::vector<double> clo(n), chi(n);
        for (int i = 0; i < n; ++i) {
            Rational glo(geometry.lo()[i]), ghi(geometry.hi()[i]);
            Rational w = (ghi - glo) / cells_per_axis;
            Rational a = glo + w * cell[i];
            Rational b = a + w;
            clo[i] = to_double(a);
            chi[i] = to_double(b);
            plo[i] = a - ov * w / 2;
            phi[i] = b + ov * w / 2;
            if (!torus) {
                plo[i] = std::max(plo[i], glo);
                phi[i] = std::min(phi[i], ghi);
            }
        }
        lo.push_back(plo);
        hi.push_back(phi);
        cores.emplace_back(clo, chi);
    }
    return Cover::from_boxes(geometry, lo, hi, overlap, cores);
}

Cover star_cover_single_simplex(const Geometry& simplex_geometry)
{
    return Cover::star(simplex_geometry);
}

} // namespace pf
