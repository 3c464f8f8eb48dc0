#pragma once

#include "pf/cover.hpp"
#include "pf/form.hpp"
#include "pf/nerve.hpp"
#include "pf/quadrature.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace pf {

/// Cover plus its nerve, shared by every bicomplex element built on them.
struct CoverContext {
    Cover cover;
    NerveComplex nerve;
};

std::shared_ptr<const CoverContext> make_context(Cover cover, int max_length = 0);

/// Element of K^{r,s}: one r-form per nonempty intersection of s pieces, each
/// expressed in the chart of its first piece. s = 0 is a single global form.
class BicomplexElement {
public:
    BicomplexElement(std::shared_ptr<const CoverContext> ctx, int degree, int cech,
                     std::vector<Form> components);
    static BicomplexElement zero(std::shared_ptr<const CoverContext> ctx, int degree, int cech);
    /// A constant 0-form per s-tuple (K^{0,s}).
    static BicomplexElement constants(std::shared_ptr<const CoverContext> ctx, int cech,
                                      const std::vector<double>& values);

    const std::shared_ptr<const CoverContext>& context() const { return ctx_; }
    const Cover& cover() const { return ctx_->cover; }
    int degree() const { return degree_; }
    int cech() const { return cech_; }
    int size() const { return static_cast<int>(components_.size()); }
    /// Tuples in component order (the single empty tuple when s = 0).
    const std::vector<Tuple>& tuples() const;
    const Form& component(int k) const { return components_.at(k); }
    const std::vector<Form>& components() const { return components_; }
    /// Integration/probing domain of component k in its chart.
    ConvexDomain domain(int k) const;
    /// α_I for any ordering of I: sign of the sorting permutation, zero for a
    /// repeated index or an empty intersection.
    Form component(const Tuple& I) const;
    /// α_K (K ⊂ J) moved to the chart of U_J.
    Form restricted(const Tuple& K, const Tuple& J) const;

    BicomplexElement d() const;
    friend BicomplexElement operator+(const BicomplexElement& a, const BicomplexElement& b);
    friend BicomplexElement operator-(const BicomplexElement& a, const BicomplexElement& b);
    friend BicomplexElement operator*(double s, const BicomplexElement& a);

private:
    std::shared_ptr<const CoverContext> ctx_;
    int degree_;
    int cech_;
    std::vector<Form> components_;
};

/// ω as an element of K^{r,1}: ω restricted to each piece.
BicomplexElement restrict_global(const Form& omega, std::shared_ptr<const CoverContext> ctx);

BicomplexElement cech_delta(const BicomplexElement& alpha);

/// L^p norm over a box split at every piece and core face of a box cover
/// (the glued forms are only piecewise smooth across those faces). Other
/// domains fall back to lp_norm.
double cover_lp_norm(const Form& omega, const ConvexDomain& domain, const Cover& cover, double p,
                     const QuadratureSpec& quad = {});

double bicomplex_lp_norm(const BicomplexElement& alpha, double p, const QuadratureSpec& quad = {});

/// max |component| over `per_tuple` probes of each intersection.
double bicomplex_max_abs(const BicomplexElement& alpha, int per_tuple = 128,
                         std::uint64_t seed = kProbeSeed);

struct PartitionOfUnity {
    std::vector<ScalarField> rho;
    /// max_j sup |dρ_j| on a grid.
    double max_gradient = 0.0;
    double c_pou() const { return 1.0 + max_gradient; }
};

/// Normalized bumps on box covers; barycentric coordinates on a star cover.
PartitionOfUnity partition_of_unity(const Cover& cover, int grid_per_axis = 64);

struct GlueOptions {
    bool check_closed = true;
    int probes_per_tuple = 128;
    double tol = 1e-8;
};

/// α_I = Σ_j ρ_j β_{(j,I)} for δβ = 0; then δα = β. Throws
/// VerificationFailure (naming the tuple) when δβ ≠ 0.
BicomplexElement glue(const BicomplexElement& beta, const PartitionOfUnity& pou,
                      const GlueOptions& opts = {});

struct GlueReport {
    double norm_alpha = 0.0;
    double norm_beta = 0.0;
    double norm_dalpha = 0.0;
    double norm_dbeta = 0.0;
    double ratio = 0.0;
    double derivative_ratio = 0.0;
    double c_pou = 0.0;
};

GlueReport glue_report(const BicomplexElement& alpha, const BicomplexElement& beta,
                       const PartitionOfUnity& pou, double p, const QuadratureSpec& quad = {});

} // namespace pf
