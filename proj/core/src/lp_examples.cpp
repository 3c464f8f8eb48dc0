#include "pf/lp_examples.hpp"

#include "pf/error.hpp"
#include "pf/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace pf {

namespace {

double radius_sq(std::span<const double> x)
{
    double r2 = x[0] * x[0] + x[1] * x[1];
    if (r2 == 0.0)
        throw DomainError("the angle form is undefined at the origin");
    return r2;
}

double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys)
{
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (size_t k = 0; k < xs.size(); ++k) {
        mx += xs[k];
        my += ys[k];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (size_t k = 0; k < xs.size(); ++k) {
        sxy += (xs[k] - mx) * (ys[k] - my);
        sxx += (xs[k] - mx) * (xs[k] - mx);
    }
    return sxy / sxx;
}

} // namespace

Form angle_form()
{
    auto d_eval = [](std::span<const double> x, std::span<double> out) {
        double r2 = radius_sq(x);
        double r4 = r2 * r2;
        double dxq = 1.0 / r2 - 2.0 * x[0] * x[0] / r4;  // ∂_x(x/r²)
        double dyp = -1.0 / r2 + 2.0 * x[1] * x[1] / r4; // ∂_y(−y/r²)
        out[0] = dxq - dyp;
    };
    Form d = closed_form(Form::from_evaluator(
        2, 2, d_eval, [] { return Form::zero(2, 3); }, "d(angle)"));
    auto eval = [](std::span<const double> x, std::span<double> out) {
        double r2 = radius_sq(x);
        out[0] = -x[1] / r2;
        out[1] = x[0] / r2;
    };
    return Form::from_evaluator(2, 1, eval, [d] { return d; }, "angle");
}

double annulus_lp_power(const Form& omega, double p, const AnnulusSpec& spec)
{
    if (!(spec.inner > 0.0 && spec.inner < 1.0))
        throw InvalidArgument("annulus inner radius must lie in (0,1)");
    if (omega.dim() != 2)
        throw DimensionMismatch("annulus integrals need a form on R^2");
    const double two_pi = 2.0 * std::numbers::pi;
    const double s_lo = std::log(spec.inner);
    const double decades = -std::log10(spec.inner);
    const int rad_panels = std::max(1, static_cast<int>(std::ceil(decades * spec.radial_panels_per_decade)));
    const auto& gt = gauss_legendre_01(spec.angular_order);
    const auto& gs = gauss_legendre_01(spec.radial_order);
    std::vector<double> terms;
    terms.reserve(static_cast<size_t>(spec.angular_panels) * gt.weights.size() * rad_panels *
                  gs.weights.size());
    const double ht = two_pi / spec.angular_panels;
    const double hs = -s_lo / rad_panels;
    double x[2];
    for (int pt = 0; pt < spec.angular_panels; ++pt)
        for (size_t a = 0; a < gt.weights.size(); ++a) {
            double th = (pt + gt.nodes[a]) * ht;
            for (int ps = 0; ps < rad_panels; ++ps)
                for (size_t b = 0; b < gs.weights.size(); ++b) {
                    double s = s_lo + (ps + gs.nodes[b]) * hs;
                    double r = std::exp(s);
                    x[0] = r * std::cos(th);
                    x[1] = r * std::sin(th);
                    double v = std::pow(omega.pointwise_norm(x), p);
                    // dA = r dr dθ = r² ds dθ
                    terms.push_back(gt.weights[a] * ht * gs.weights[b] * hs * r * r * v);
                }
        }
    return pairwise_sum(terms);
}

LpScan lp_divergence_scan(double p, const std::vector<double>& eps_list, AnnulusSpec spec)
{
    if (!(p >= 1.0))
        throw InvalidArgument("p must be at least 1");
    if (eps_list.size() < 2)
        throw InvalidArgument("the scan needs at least two radii");
    Form omega = angle_form();
    LpScan out;
    out.p = p;
    std::vector<double> xs, ys, logs_inv;
    for (double eps : eps_list) {
        spec.inner = eps;
        LpScanRow row;
        row.epsilon = eps;
        row.integral = annulus_lp_power(omega, p, spec);
        row.log_epsilon = std::log(eps);
        row.log_integral = std::log(row.integral);
        xs.push_back(row.log_epsilon);
        ys.push_back(row.log_integral);
        out.rows.push_back(row);
    }
    const bool is_two = std::abs(p - 2.0) < 1e-12;
    out.expected_slope = is_two ? 0.0 : std::min(0.0, -(p - 2.0));
    if (is_two) {
        out.regime = "divergent-log";
        out.slope = std::numeric_limits<double>::quiet_NaN();
        out.tail_slope = std::numeric_limits<double>::quiet_NaN();
        std::vector<double> ls, is;
        for (const auto& row : out.rows) {
            ls.push_back(-row.log_epsilon);
            is.push_back(row.integral);
        }
        out.log_rate = fit_slope(ls, is);
        return out;
    }
    out.regime = p > 2.0 ? "divergent-power" : "convergent";
    out.slope = fit_slope(xs, ys);
    // Two smallest radii, wherever they sit in the list.
    std::vector<size_t> order(out.rows.size());
    for (size_t k = 0; k < order.size(); ++k)
        order[k] = k;
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return out.rows[a].epsilon < out.rows[b].epsilon; });
    const auto& r0 = out.rows[order[0]];
    const auto& r1 = out.rows[order[1]];
    out.tail_slope = (r0.log_integral - r1.log_integral) / (r0.log_epsilon - r1.log_epsilon);
    return out;
}

double circle_period(const Form& omega, double radius, int order, int panels)
{
    if (omega.dim() != 2 || omega.degree() != 1)
        throw DimensionMismatch("circle periods need a 1-form on R^2");
    const auto& g = gauss_legendre_01(order);
    const double h = 2.0 * std::numbers::pi / panels;
    std::vector<double> terms;
    double x[2];
    double v[2];
    for (int pnl = 0; pnl < panels; ++pnl)
        for (size_t a = 0; a < g.weights.size(); ++a) {
            double th = (pnl + g.nodes[a]) * h;
            x[0] = radius * std::cos(th);
            x[1] = radius * std::sin(th);
            omega.evaluate(x, v);
            double tangent = v[0] * (-radius * std::sin(th)) + v[1] * (radius * std::cos(th));
            terms.push_back(g.weights[a] * h * tangent);
        }
    return pairwise_sum(terms);
}

double angle_form_closedness(const Form& omega, int count, double min_radius)
{
    Form d = omega.d();
    auto unit = probe_points_unit(2, count, 0x1f2e3d);
    double worst = 0.0;
    double x[2];
    double v[1];
    for (int k = 0; k < count; ++k) {
        double r = min_radius + (1.0 - min_radius) * unit[2 * k];
        double th = 2.0 * std::numbers::pi * unit[2 * k + 1];
        x[0] = r * std::cos(th);
        x[1] = r * std::sin(th);
        d.evaluate(x, v);
        worst = std::max(worst, std::abs(v[0]));
    }
    return worst;
}

} // namespace pf
