#pragma once

#include "pf/quadrature.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace pf {

/// Compact convex region in R^n: an axis-aligned box, a simplex, or the part
/// of a simplex where a chosen set of barycentric coordinates is positive.
class ConvexDomain {
public:
    enum class Kind { Box, Simplex, BarycentricRegion };

    static ConvexDomain box(std::vector<double> lo, std::vector<double> hi);
    static ConvexDomain unit_box(int dim);
    /// n+1 vertices, each of length n.
    static ConvexDomain simplex(std::vector<std::vector<double>> vertices);
    /// {x in simplex : λ_i(x) > 0 for i in support}.
    static ConvexDomain barycentric_region(std::vector<std::vector<double>> vertices,
                                           std::vector<int> support);

    Kind kind() const { return kind_; }
    int dim() const { return dim_; }
    const std::vector<double>& lo() const { return lo_; }
    const std::vector<double>& hi() const { return hi_; }
    const std::vector<std::vector<double>>& vertices() const { return vertices_; }
    const std::vector<int>& support() const { return support_; }

    double volume() const;
    double diameter() const;
    /// Closed-region membership with a small tolerance.
    bool contains(std::span<const double> x, double tol = 1e-12) const;
    /// Barycentric coordinates (simplex kinds only).
    std::vector<double> barycentric(std::span<const double> x) const;
    /// Box center, or the barycenter of the supporting face for barycentric regions,
    /// or the simplex barycenter.
    std::vector<double> distinguished_point() const;
    /// Integration rule over the region (tensor Gauss on boxes,
    /// Grundmann–Möller on simplices).
    QuadratureRule quadrature(const QuadratureSpec& spec) const;
    /// `count` deterministic interior points.
    std::vector<double> probes(int count, std::uint64_t seed) const;
    /// Same region shifted by v.
    ConvexDomain translated(std::span<const double> v) const;

    std::string describe() const;

private:
    Kind kind_ = Kind::Box;
    int dim_ = 0;
    std::vector<double> lo_, hi_;
    std::vector<std::vector<double>> vertices_;
    std::vector<int> support_;
};

std::string to_string(ConvexDomain::Kind kind);

} // namespace pf
