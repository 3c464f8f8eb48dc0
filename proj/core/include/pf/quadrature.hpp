#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace pf {

/// Quadrature configuration shared by norm computations and the averaged
/// homotopy. `order` is points per axis for tensor Gauss rules and the
/// Grundmann–Möller index s (exact to degree 2s+1) for simplices; `panels`
/// subdivides each box axis into equal panels (composite rule).
struct QuadratureSpec {
    std::string rule = "auto"; // "auto" | "gauss" | "grundmann-moller"
    int order = 8;
    double adaptive_tol = 1e-10;
    int panels = 1;

    bool operator==(const QuadratureSpec&) const = default;
};

/// A rule on some region: nodes are stored row-major (`dim` doubles each).
struct QuadratureRule {
    int dim = 0;
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const { return weights.size(); }
    std::span<const double> node(std::size_t i) const
    {
        return {nodes.data() + i * dim, static_cast<std::size_t>(dim)};
    }
};

/// Gauss–Legendre nodes/weights mapped to [0,1].
const QuadratureRule& gauss_legendre_01(int order);

QuadratureRule tensor_gauss(std::span<const double> lo, std::span<const double> hi, int order,
                            int panels = 1);

/// Grundmann–Möller rule of index s on the simplex with the given vertices
/// (n+1 vertices in R^n, row-major). Weights may be negative.
QuadratureRule grundmann_moller(std::span<const double> vertices, int n, int s);

struct AdaptiveResult {
    double value = 0.0;
    double error = 0.0;
    int intervals = 0;
};

/// Globally adaptive G7/K15 integration on [a,b].
AdaptiveResult adaptive_gauss_kronrod(const std::function<double(double)>& f, double a, double b,
                                      double abs_tol, double rel_tol, int max_intervals = 2000);

/// Pairwise (tree) summation; the association order depends only on the length.
double pairwise_sum(std::span<const double> values);

/// Deterministic low-discrepancy probe points in [0,1]^dim: Halton sequence
/// with a Cranley–Patterson shift drawn from `seed`.
std::vector<double> probe_points_unit(int dim, int count, std::uint64_t seed);

inline constexpr std::uint64_t kProbeSeed = 0x5EED;

} // namespace pf
