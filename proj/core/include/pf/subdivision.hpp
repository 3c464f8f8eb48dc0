#pragma once

#include "pf/cover.hpp"
#include "pf/form.hpp"
#include "pf/globalize.hpp"

#include <vector>

namespace pf {

using Permutation = std::vector<int>;

/// Simplex whose vertices are barycenters of faces of a parent simplex.
/// faces[k] lists the parent vertex ids averaged into vertex k.
struct OrderedSimplex {
    std::vector<std::vector<int>> faces;
    std::vector<std::vector<Rational>> points;

    int dim() const { return static_cast<int>(points.size()) - 1; }
    std::vector<std::vector<double>> points_double() const;
    bool operator==(const OrderedSimplex& o) const { return points == o.points; }
};

/// Formal integer combination of simplices.
struct SubdivisionChain {
    std::vector<std::pair<long, OrderedSimplex>> terms;

    /// Merges equal simplices (up to vertex order, with the permutation sign)
    /// and drops zero coefficients.
    SubdivisionChain canonical() const;
    bool operator==(const SubdivisionChain& o) const;
    SubdivisionChain operator-() const;
};

/// Parent simplex (i_0..i_r): vertex ids index its star cover pieces.
struct ParentSimplex {
    std::vector<int> ids;
    std::vector<std::vector<Rational>> positions;

    int r() const { return static_cast<int>(ids.size()) - 1; }
    static ParentSimplex standard(int r);
    static ParentSimplex from_points(const std::vector<std::vector<double>>& points);
    std::vector<std::vector<double>> positions_double() const;
};

/// Barycenter of the parent vertices at positions `sel` (indices into ids).
std::vector<Rational> barycenter(const ParentSimplex& sigma, const std::vector<int>& sel);

/// Sd_t over an ordered selection of parent vertices: barycenters of the
/// prefixes of length t..|seq|.
OrderedSimplex sd_simplex(const ParentSimplex& sigma, const std::vector<int>& seq, int t);

/// Sd_t(J) for a permutation J of {0..r}, 1 <= t <= r (t = r+1 gives σ^b).
OrderedSimplex sd_chain(const ParentSimplex& sigma, const Permutation& J, int t);

/// Permutations of {0..r} in lexicographic order whose first k+1 entries increase.
std::vector<Permutation> permutations_increasing_prefix(int r, int k);
int sign_of(const Permutation& J);

struct BoundaryRepresentation {
    SubdivisionChain lemma_chain;
    SubdivisionChain standard_boundary;
    bool equals_standard = false;
    bool equals_negated = false;
    /// The lemma chain equals factor·∂σ (0 when neither sign works).
    int factor = 0;
};

/// Σ_{J: j_0<...<j_{r-1}} sign(J) (i_{j_0},...,i_{j_{r-1}}) against the
/// alternating boundary, in exact arithmetic.
BoundaryRepresentation boundary_representation(const ParentSimplex& sigma);

/// max |(δξ)_σ - factor·Σ_J sign(J) ξ_{J'}| at probes of the open simplex.
double boundary_cochain_residual(const BicomplexElement& xi, int factor, int probes = 64);

/// ∫ over the oriented simplex of a form of degree dim(simplex), by
/// Grundmann–Möller of index s on the pulled-back parameter simplex.
double integrate_over_simplex(const Form& omega, const std::vector<std::vector<double>>& points, int gm_s = 4);
/// ∫ over the boundary Σ_i (-1)^i face_i.
double integrate_over_boundary(const Form& omega, const std::vector<std::vector<double>>& points, int gm_s = 4);

/// ψ(J,σ,ω) from the cascade built on σ's star cover.
double psi_term(const Permutation& J, const ParentSimplex& sigma, const XiCascade& cascade, int gm_s = 4);

struct FormulaTerm {
    std::string part; // "boundary" | "psi"
    Permutation J;
    Permutation K;
    int t = 0;
    double value = 0.0;
};

struct FormulaReport {
    int m = 0;
    int r = 0;
    double lhs = 0.0;
    double rhs = 0.0;
    double gap = 0.0;
    std::vector<FormulaTerm> terms;
    /// ∫_σ ω - [sign·(δξ^{r-1})_σ + Σ_J sign(J) ψ(J)] with the unshifted
    /// sign (-1)^{⌊r/2⌋} and with int_sign.
    double period_gap_unshifted = 0.0;
    double period_gap = 0.0;
    double delta_xi = 0.0;
};

FormulaReport formula_identity_check(const Form& omega, const ParentSimplex& sigma, int m,
                                     const XiCascade& cascade, int gm_s = 4);

/// Builds the star cover of σ and the cascade for ω on it.
XiCascade star_cascade(const Form& omega, const ParentSimplex& sigma);

struct BijectionCheck {
    int r = 0;
    int t = 0;
    int domain_size = 0;
    int codomain_size = 0;
    bool bijective = false;
    bool signs_ok = false;
    bool sets_ok = true;
};

/// (J,s) ↦ (J_s) with sign((J_s)) = (-1)^{t-s+1} sign(J) and Sd_{t+2} invariance.
BijectionCheck check_f_correspondence(int r, int t);
/// (J,K) ↦ (J'_K, j_r) with sign(K)sign(J) = sign(J'_K, j_r).
BijectionCheck check_h_correspondence(int r, int t);

} // namespace pf
