#pragma once

#include "pf/form.hpp"

#include <span>
#include <vector>

namespace pf {

/// ψ_y(x,t) = y + t(x - y) pulled back onto R^n x [0,1]. Both parts are
/// forms on n+1 variables (x_1..x_n, t) that contain no dt:
/// ψ_y*ω = alpha0 + dt ∧ alpha1.
struct PullbackSplit {
    int dim = 0;
    int degree = 0;
    std::vector<double> y;
    Form alpha0;
    /// The dt-component; a zero 0-form when ω has degree 0.
    Form alpha1;

    /// alpha0 + dt∧alpha1 as a form on R^{n+1}.
    Form reconstruct() const;
};

PullbackSplit pullback_split(const Form& omega, std::span<const double> y);

/// Shared index bookkeeping for the interior product with the radial field:
/// ψ*dx_I contributes (-1)^k t^{r-1} (x_{i_k} - y_{i_k}) to the dt-part at I \ i_k.
struct ContractionEntry {
    int source_rank;
    int target_rank;
    int axis;
    int sign;
};
const std::vector<ContractionEntry>& contraction_table(int n, int r);

} // namespace pf
