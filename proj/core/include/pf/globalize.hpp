#pragma once

#include "pf/bicomplex.hpp"
#include "pf/form.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pf {

struct GlobalizeOptions {
    double p = 2.0;
    double q = 2.0;
    QuadratureSpec quad{};
    int t_order = 16;
    /// Average K_y over U_I instead of using its distinguished point.
    bool average = false;
    int cascade_probes = 64;
    double cascade_tol = 1e-8;
    double constancy_tol = 1e-8;
    double svd_cutoff = 1e-10;
    double obstruction_rel_tol = 1e-6;
    int residual_probes = 10000;
    double residual_tol = 1e-6;
    bool materialize_b = false;
};

struct CascadeLevel {
    int s = 0;
    int form_degree = 0;
    double norm = 0.0;
    /// ‖ξ^s‖ / ‖δξ^{s-1}‖ (‖ω‖_q at s = 0).
    double ratio = 0.0;
    /// max |dξ^s - δξ^{s-1}| at probes.
    double identity_residual = 0.0;
};

struct XiCascade {
    std::vector<BicomplexElement> xi;
    std::vector<CascadeLevel> levels;
    double omega_norm = 0.0;
};

XiCascade xi_cascade(const Form& omega, std::shared_ptr<const CoverContext> ctx,
                     const GlobalizeOptions& opts = {});

/// Sign relating the Čech class (δξ^{r-1}) to periods: (-1)^{⌊(r+1)/2⌋}.
int int_sign(int r);
/// (-1)^{⌊r/2⌋}, without the shift; negates every pairing for odd r.
int int_sign_unshifted(int r);

struct IntCocycle {
    int r = 0;
    int sign = 1;
    std::vector<Tuple> tuples;
    /// (δξ^{r-1})_I at the distinguished point of U_I.
    std::vector<double> raw;
    /// sign · raw.
    std::vector<double> values;
    double spread = 0.0;
};

IntCocycle int_cocycle(const XiCascade& cascade, const GlobalizeOptions& opts = {});

struct CyclePairing {
    std::vector<Tuple> tuples;
    std::vector<long> coefficients;
    double value = 0.0;
};

/// Pairing of a cochain (values on level-r tuples) with integer cycles of ker ∂_r.
std::vector<CyclePairing> pair_with_cycles(const NerveComplex& nerve, int r,
                                           const std::vector<double>& cochain,
                                           const std::vector<std::vector<long>>& cycles);

struct CocycleConstants {
    std::vector<Tuple> tuples;
    std::vector<double> c;
    double residual = 0.0;
    double rhs_norm = 0.0;
    int rank = 0;
    bool obstructed = false;
    /// Pairings of Int ω with a homology basis (filled when obstructed).
    std::vector<CyclePairing> pairings;
    /// c = B·(δξ^{r-1}); rows materialized on request.
    std::vector<std::vector<double>> b_rows;
};

CocycleConstants cocycle_constants(const XiCascade& cascade, const IntCocycle& cocycle,
                                   const GlobalizeOptions& opts = {});

struct DescentStep {
    int level = 0;
    double norm_input = 0.0;
    double norm_x = 0.0;
    double norm_dx = 0.0;
    GlueReport glue;
};

struct Descent {
    /// x^{r-1}, ..., x^0.
    std::vector<BicomplexElement> x;
    std::vector<BicomplexElement> inputs;
    std::vector<DescentStep> steps;
};

Descent x_descent(const XiCascade& cascade, const CocycleConstants& constants,
                  const PartitionOfUnity& pou, const GlobalizeOptions& opts = {});

struct LedgerFactor {
    std::string name;
    double value = 0.0;
};

struct GlobalizationReport {
    std::string status; // "exact-solved" | "obstructed"
    int r = 0;
    double residual = 0.0;
    int residual_probes = 0;
    double norm_xi = 0.0;
    double norm_omega = 0.0;
    double ratio = 0.0;
    double measured_ratio = 0.0;
    double ledger_product = 0.0;
    std::vector<LedgerFactor> ledger;
    std::vector<CascadeLevel> cascade;
    std::vector<DescentStep> descent;
    double c_norm = 0.0;
    double c_residual = 0.0;
    double C_local = 0.0;
    double max_piece_constant = 0.0;
    double c_pou = 0.0;
    double max_volume_ratio = 0.0;
    int cover_pieces = 0;
    int multiplicity = 0;
    std::vector<double> int_values;
    std::vector<CyclePairing> pairings;
};

struct GlobalResult {
    std::optional<Form> xi;
    GlobalizationReport report;
    std::optional<XiCascade> cascade;
};

GlobalResult global_primitive(const Form& omega, std::shared_ptr<const CoverContext> ctx,
                              const GlobalizeOptions& opts = {});

/// Midpoint grid with about `count` points of the geometry's fundamental domain.
std::vector<double> geometry_probe_grid(const Geometry& geometry, int count);

} // namespace pf
