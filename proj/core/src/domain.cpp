#include "pf/domain.hpp"

#include "pf/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pf {

namespace {

Eigen::MatrixXd edge_matrix(const std::vector<std::vector<double>>& v)
{
    const int n = static_cast<int>(v.size()) - 1;
    Eigen::MatrixXd m(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            m(i, j) = v[j + 1][i] - v[0][i];
    return m;
}

double factorial(int n)
{
    double f = 1.0;
    for (int i = 2; i <= n; ++i)
        f *= i;
    return f;
}

void check_simplex(const std::vector<std::vector<double>>& vertices)
{
    if (vertices.empty())
        throw InvalidArgument("simplex needs vertices");
    const std::size_t n = vertices.size() - 1;
    if (n == 0)
        throw InvalidArgument("simplex needs at least two vertices");
    for (const auto& v : vertices)
        if (v.size() != n)
            throw DimensionMismatch("simplex vertices must have n coordinates for n+1 vertices");
    auto m = edge_matrix(vertices);
    double scale = 0.0;
    for (int i = 0; i < m.size(); ++i)
        scale = std::max(scale, std::abs(m.data()[i]));
    if (scale == 0.0 || std::abs(m.determinant()) <= 1e-12 * std::pow(scale, static_cast<double>(n)))
        throw DomainError("degenerate simplex");
}

} // namespace

ConvexDomain ConvexDomain::box(std::vector<double> lo, std::vector<double> hi)
{
    if (lo.size() != hi.size() || lo.empty())
        throw DimensionMismatch("box corners must have equal nonzero length");
    for (std::size_t i = 0; i < lo.size(); ++i)
        if (!(lo[i] < hi[i]))
            throw DomainError("box has empty interior along axis " + std::to_string(i));
    ConvexDomain d;
    d.kind_ = Kind::Box;
    d.dim_ = static_cast<int>(lo.size());
    d.lo_ = std::move(lo);
    d.hi_ = std::move(hi);
    return d;
}

ConvexDomain ConvexDomain::unit_box(int dim)
{
    return box(std::vector<double>(dim, 0.0), std::vector<double>(dim, 1.0));
}

ConvexDomain ConvexDomain::simplex(std::vector<std::vector<double>> vertices)
{
    check_simplex(vertices);
    ConvexDomain d;
    d.kind_ = Kind::Simplex;
    d.dim_ = static_cast<int>(vertices.size()) - 1;
    d.vertices_ = std::move(vertices);
    for (int i = 0; i <= d.dim_; ++i)
        d.support_.push_back(i);
    return d;
}

ConvexDomain ConvexDomain::barycentric_region(std::vector<std::vector<double>> vertices,
                                              std::vector<int> support)
{
    check_simplex(vertices);
    std::sort(support.begin(), support.end());
    if (support.empty() || std::adjacent_find(support.begin(), support.end()) != support.end())
        throw InvalidArgument("barycentric region needs a nonempty set of distinct vertices");
    for (int i : support)
        if (i < 0 || i >= static_cast<int>(vertices.size()))
            throw InvalidArgument("barycentric region vertex out of range");
    ConvexDomain d;
    d.kind_ = Kind::BarycentricRegion;
    d.dim_ = static_cast<int>(vertices.size()) - 1;
    d.vertices_ = std::move(vertices);
    d.support_ = std::move(support);
    return d;
}

double ConvexDomain::volume() const
{
    if (kind_ == Kind::Box) {
        double v = 1.0;
        for (int i = 0; i < dim_; ++i)
            v *= hi_[i] - lo_[i];
        return v;
    }
    // The open conditions λ_i > 0 remove only boundary faces, a null set.
    return std::abs(edge_matrix(vertices_).determinant()) / factorial(dim_);
}

double ConvexDomain::diameter() const
{
    if (kind_ == Kind::Box) {
        double s = 0.0;
        for (int i = 0; i < dim_; ++i)
            s += (hi_[i] - lo_[i]) * (hi_[i] - lo_[i]);
        return std::sqrt(s);
    }
    // The closure of a barycentric region is the whole simplex; its diameter
    // is the longest edge.
    double best = 0.0;
    for (std::size_t a = 0; a < vertices_.size(); ++a)
        for (std::size_t b = a + 1; b < vertices_.size(); ++b) {
            double s = 0.0;
            for (int i = 0; i < dim_; ++i)
                s += (vertices_[a][i] - vertices_[b][i]) * (vertices_[a][i] - vertices_[b][i]);
            best = std::max(best, std::sqrt(s));
        }
    return best;
}

std::vector<double> ConvexDomain::barycentric(std::span<const double> x) const
{
    if (kind_ == Kind::Box)
        throw UnsupportedOperation("barycentric coordinates of a box");
    auto m = edge_matrix(vertices_);
    Eigen::VectorXd rhs(dim_);
    for (int i = 0; i < dim_; ++i)
        rhs(i) = x[i] - vertices_[0][i];
    Eigen::VectorXd mu = m.partialPivLu().solve(rhs);
    std::vector<double> lambda(dim_ + 1);
    double rest = 1.0;
    for (int i = 0; i < dim_; ++i) {
        lambda[i + 1] = mu(i);
        rest -= mu(i);
    }
    lambda[0] = rest;
    return lambda;
}

bool ConvexDomain::contains(std::span<const double> x, double tol) const
{
    if (static_cast<int>(x.size()) < dim_)
        throw DimensionMismatch("point dimension below domain dimension");
    if (kind_ == Kind::Box) {
        for (int i = 0; i < dim_; ++i)
            if (x[i] < lo_[i] - tol || x[i] > hi_[i] + tol)
                return false;
        return true;
    }
    auto lambda = barycentric(x);
    for (double l : lambda)
        if (l < -tol)
            return false;
    return true;
}

std::vector<double> ConvexDomain::distinguished_point() const
{
    std::vector<double> c(dim_, 0.0);
    if (kind_ == Kind::Box) {
        for (int i = 0; i < dim_; ++i)
            c[i] = 0.5 * (lo_[i] + hi_[i]);
        return c;
    }
    for (int v : support_)
        for (int i = 0; i < dim_; ++i)
            c[i] += vertices_[v][i];
    for (int i = 0; i < dim_; ++i)
        c[i] /= static_cast<double>(support_.size());
    return c;
}

QuadratureRule ConvexDomain::quadrature(const QuadratureSpec& spec) const
{
    if (spec.order < 1)
        throw InvalidArgument("quadrature order must be positive");
    if (kind_ == Kind::Box) {
        if (spec.rule == "grundmann-moller")
            throw UnsupportedOperation("Grundmann–Möller rule requested on a box domain");
        return tensor_gauss(lo_, hi_, spec.order, std::max(1, spec.panels));
    }
    if (spec.rule == "gauss")
        throw UnsupportedOperation("tensor Gauss rule requested on a simplex domain");
    std::vector<double> flat;
    for (const auto& v : vertices_)
        flat.insert(flat.end(), v.begin(), v.end());
    return grundmann_moller(flat, dim_, spec.order);
}

std::vector<double> ConvexDomain::probes(int count, std::uint64_t seed) const
{
    auto unit = probe_points_unit(dim_, count, seed);
    std::vector<double> out(unit.size());
    if (kind_ == Kind::Box) {
        for (int k = 0; k < count; ++k)
            for (int i = 0; i < dim_; ++i)
                out[k * dim_ + i] = lo_[i] + unit[k * dim_ + i] * (hi_[i] - lo_[i]);
        return out;
    }
    // Fold the unit cube onto the simplex: sort coordinates, take gaps.
    std::vector<double> u(dim_);
    for (int k = 0; k < count; ++k) {
        for (int i = 0; i < dim_; ++i)
            u[i] = unit[k * dim_ + i];
        std::sort(u.begin(), u.end());
        std::vector<double> lambda(dim_ + 1);
        double prev = 0.0;
        for (int i = 0; i < dim_; ++i) {
            lambda[i] = u[i] - prev;
            prev = u[i];
        }
        lambda[dim_] = 1.0 - prev;
        for (int i = 0; i < dim_; ++i) {
            double s = 0.0;
            for (int v = 0; v <= dim_; ++v)
                s += lambda[v] * vertices_[v][i];
            out[k * dim_ + i] = s;
        }
    }
    return out;
}

ConvexDomain ConvexDomain::translated(std::span<const double> v) const
{
    ConvexDomain d = *this;
    for (int i = 0; i < dim_; ++i) {
        if (kind_ == Kind::Box) {
            d.lo_[i] += v[i];
            d.hi_[i] += v[i];
        } else {
            for (auto& vert : d.vertices_)
                vert[i] += v[i];
        }
    }
    return d;
}

std::string ConvexDomain::describe() const
{
    std::ostringstream os;
    os << to_string(kind_) << "(";
    if (kind_ == Kind::Box) {
        for (int i = 0; i < dim_; ++i)
            os << (i ? "x" : "") << "[" << lo_[i] << "," << hi_[i] << "]";
    } else {
        os << "support=";
        for (std::size_t i = 0; i < support_.size(); ++i)
            os << (i ? "," : "") << support_[i];
    }
    os << ")";
    return os.str();
}

std::string to_string(ConvexDomain::Kind kind)
{
    switch (kind) {
    case ConvexDomain::Kind::Box:
        return "box";
    case ConvexDomain::Kind::Simplex:
        return "simplex";
    case ConvexDomain::Kind::BarycentricRegion:
        return "barycentric-region";
    }
    return "unknown";
}

} // namespace pf
