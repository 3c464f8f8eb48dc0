#pragma once

#include "pf/domain.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pf {

using Rational = boost::multiprecision::cpp_rational;
using Tuple = std::vector<int>;

/// Nearest rational with denominator at most `max_den` (continued fractions).
Rational to_rational(double x, long max_den = 1000000);

/// Flat compact geometries. Torus charts have unit periods.
class Geometry {
public:
    enum class Kind { Box, Torus, Simplex, PuncturedDisk };

    static Geometry box(std::vector<double> lo, std::vector<double> hi);
    static Geometry torus(int dim);
    static Geometry simplex(std::vector<std::vector<double>> vertices);
    /// Unit disk minus the origin (used only for L^p scans).
    static Geometry punctured_disk();

    Kind kind() const { return kind_; }
    int dim() const { return dim_; }
    const std::vector<double>& lo() const { return lo_; }
    const std::vector<double>& hi() const { return hi_; }
    const std::vector<std::vector<double>>& vertices() const { return vertices_; }
    /// A fundamental domain for integration and probing.
    ConvexDomain fundamental_domain() const;
    /// Maps x into the chart whose box is centered at `center` (torus: nearest
    /// integer translate; other geometries: identity).
    std::vector<double> lift(std::span<const double> x, std::span<const double> center) const;

private:
    Kind kind_ = Kind::Box;
    int dim_ = 0;
    std::vector<double> lo_, hi_;
    std::vector<std::vector<double>> vertices_;
};

std::string to_string(Geometry::Kind kind);

/// A good cover: convex pieces (boxes on box/torus geometries, open stars on
/// a simplex), each piece a chart. Box endpoints are kept as exact rationals.
class Cover {
public:
    /// Boxes given by rational corners; `cores` are the partition-of-unity
    /// cores (defaults derived from `overlap`).
    static Cover from_boxes(Geometry geometry, std::vector<std::vector<Rational>> lo,
                            std::vector<std::vector<Rational>> hi, double overlap,
                            std::optional<std::vector<std::pair<std::vector<double>, std::vector<double>>>> cores = {});
    static Cover star(Geometry simplex_geometry);

    const Geometry& geometry() const { return geometry_; }
    int size() const { return static_cast<int>(pieces_.size()); }
    int dim() const { return geometry_.dim(); }
    double overlap() const { return overlap_; }
    const ConvexDomain& piece(int i) const { return pieces_.at(i); }
    const std::vector<ConvexDomain>& pieces() const { return pieces_; }
    bool is_star() const { return geometry_.kind() == Geometry::Kind::Simplex; }
    /// Core box of piece i (box covers only).
    const ConvexDomain& core(int i) const { return cores_.at(i); }
    const std::vector<Rational>& lo_exact(int i) const { return lo_q_.at(i); }
    const std::vector<Rational>& hi_exact(int i) const { return hi_q_.at(i); }

    /// U_I in the chart of piece I[0], or nothing when empty. I must be
    /// strictly increasing.
    std::optional<ConvexDomain> intersection(const Tuple& I) const;
    /// Translation taking chart-I[0] coordinates of points of U_I to the
    /// chart of piece `a`.
    std::vector<double> chart_shift(const Tuple& I, int a) const;
    /// x (any chart) expressed in the chart of piece a.
    std::vector<double> lift(std::span<const double> x, int a) const;
    /// Number of grid points (`per_axis`^n cell midpoints) not in any piece.
    int coverage_holes(int per_axis = 64) const;

private:
    Geometry geometry_;
    std::vector<ConvexDomain> pieces_;
    std::vector<ConvexDomain> cores_;
    std::vector<std::vector<Rational>> lo_q_, hi_q_;
    std::vector<std::vector<double>> centers_;
    double overlap_ = 0.0;
};

/// cells^n boxes of width w = extent/cells, each widened by overlap·w/2 per
/// side (clipped on a box, wrapped on a torus).
Cover build_box_cover(const Geometry& geometry, int cells_per_axis, double overlap);

/// U_i = {λ_i > 0} on a single simplex.
Cover star_cover_single_simplex(const Geometry& simplex_geometry);

inline std::optional<ConvexDomain> intersection_domain(const Cover& cover, const Tuple& I)
{
    return cover.intersection(I);
}

} // namespace pf
