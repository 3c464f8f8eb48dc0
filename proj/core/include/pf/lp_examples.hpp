#pragma once

#include "pf/form.hpp"

#include <string>
#include <vector>

namespace pf {

/// ω = (x dy − y dx)/(x² + y²) on the punctured plane, with exact gradients.
/// Evaluating at the origin throws DomainError.
Form angle_form();

/// Annulus ε ≤ |x| ≤ 1 and the polar quadrature used over it.
struct AnnulusSpec {
    double inner = 0.1;
    int angular_order = 16;
    int angular_panels = 4;
    int radial_order = 16;
    /// Radial panels per unit of ln(1/ε).
    int radial_panels_per_decade = 2;
};

/// ∫_{ε ≤ |x| ≤ 1} |ω|^p by tensor Gauss in (θ, ln r).
double annulus_lp_power(const Form& omega, double p, const AnnulusSpec& spec);

struct LpScanRow {
    double epsilon = 0.0;
    double integral = 0.0;
    double log_epsilon = 0.0;
    double log_integral = 0.0;
};

struct LpScan {
    double p = 0.0;
    std::vector<LpScanRow> rows;
    /// "divergent-power" (p > 2), "divergent-log" (p = 2), "convergent" (p < 2).
    std::string regime;
    /// Least-squares slope of log I against log ε; NaN for p = 2.
    double slope = 0.0;
    /// Slope over the two smallest ε.
    double tail_slope = 0.0;
    /// p = 2 only: slope of I against ln(1/ε) (→ 2π).
    double log_rate = 0.0;
    double expected_slope = 0.0;
};

LpScan lp_divergence_scan(double p, const std::vector<double>& eps_list, AnnulusSpec spec = {});

/// ∫ over the circle |x| = radius, counter-clockwise.
double circle_period(const Form& omega, double radius, int order = 32, int panels = 8);

/// Maximum |dω| at `count` Halton probes of the annulus min_radius ≤ |x| ≤ 1.
double angle_form_closedness(const Form& omega, int count = 1000, double min_radius = 0.05);

} // namespace pf
