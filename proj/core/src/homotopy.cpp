#include "pf/homotopy.hpp"

#include "pf/constants.hpp"
#include "pf/error.hpp"
#include "pf/pullback.hpp"

#include <cmath>
#include <sstream>

namespace pf {

namespace {

void check_base_point(const ConvexDomain& domain, std::span<const double> y)
{
    if (static_cast<int>(y.size()) != domain.dim())
        throw DimensionMismatch("base point dimension differs from domain dimension");
    if (!domain.contains(y, 1e-12)) {
        std::ostringstream os;
        os << "base point (";
        for (std::size_t i = 0; i < y.size(); ++i)
            os << (i ? "," : "") << y[i];
        os << ") lies outside " << domain.describe();
        throw DomainError(os.str());
    }
}

Form polynomial_cone(std::span<const double> y, const Form& omega)
{
    const int n = omega.dim();
    auto split = pullback_split(omega, y);
    std::vector<ScalarField> coeffs;
    for (const auto& f : *split.alpha1.terms())
        coeffs.emplace_back(f.polynomial()->integrate_unit(n));
    // alpha1 has no dt, so its coefficients line up with the n-variable table.
    const auto& src = IndexTable::get(n + 1, omega.degree() - 1);
    const auto& dst = IndexTable::get(n, omega.degree() - 1);
    std::vector<ScalarField> out(dst.size(), ScalarField::zero(n));
    for (int rank = 0; rank < src.size(); ++rank) {
        IndexMask m = src.mask(rank);
        if (m >> n)
            continue;
        out[dst.rank(m)] = coeffs[rank];
    }
    return Form::from_dense(n, omega.degree() - 1, std::move(out));
}

} // namespace

Form cone_operator(std::span<const double> y, const Form& omega, int t_order)
{
    const int n = omega.dim();
    const int r = omega.degree();
    if (r == 0)
        throw InvalidArgument("homotopy operator needs a form of degree at least 1");
    if (static_cast<int>(y.size()) != n)
        throw DimensionMismatch("base point dimension differs from the form's chart");
    if (omega.is_zero() || r > n)
        return Form::zero(n, r - 1);
    if (omega.is_polynomial())
        return polynomial_cone(y, omega);

    const auto& rule = gauss_legendre_01(t_order);
    const auto& contraction = contraction_table(n, r);
    std::vector<double> base(y.begin(), y.end());
    const int out_size = binomial(n, r - 1);
    auto eval = [omega, base, &rule, &contraction, n, r, out_size](std::span<const double> x,
                                                                   std::span<double> out) {
        for (int i = 0; i < out_size; ++i)
            out[i] = 0.0;
        PointBuffer z;
        CoeffBuffer v;
        double radial[kMaxDim];
        for (int i = 0; i < n; ++i)
            radial[i] = x[i] - base[i];
        for (std::size_t g = 0; g < rule.size(); ++g) {
            const double t = rule.nodes[g];
            for (int i = 0; i < n; ++i)
                z[i] = base[i] + t * radial[i];
            omega.evaluate({z.data(), static_cast<std::size_t>(n)}, v);
            double w = rule.weights[g];
            for (int k = 1; k < r; ++k)
                w *= t;
            for (const auto& e : contraction)
                out[e.target_rank] += w * e.sign * radial[e.axis] * v[e.source_rank];
        }
    };
    auto derivative = [omega, base, t_order]() {
        Form d_omega = omega.d();
        return omega - cone_operator(base, d_omega, t_order);
    };
    return Form::from_evaluator(n, r - 1, eval, derivative, "K(" + omega.label() + ")");
}

Form homotopy_operator(const ConvexDomain& domain, std::span<const double> y, const Form& omega,
                       int t_order)
{
    if (domain.dim() != omega.dim())
        throw DimensionMismatch("form and domain dimensions differ");
    if (omega.degree() == 0)
        throw InvalidArgument("homotopy operator needs a form of degree at least 1");
    check_base_point(domain, y);
    return cone_operator(y, omega, t_order);
}

Form averaged_homotopy(const ConvexDomain& domain, const Form& omega, const QuadratureSpec& quad,
                       int t_order)
{
    if (domain.dim() != omega.dim())
        throw DimensionMismatch("form and domain dimensions differ");
    if (omega.degree() == 0)
        throw InvalidArgument("averaged homotopy needs a form of degree at least 1");
    const int n = omega.dim();
    const int r = omega.degree();
    if (omega.is_zero())
        return Form::zero(n, r - 1);
    auto rule = domain.quadrature(quad);
    const double vol = domain.volume();
    for (std::size_t g = 0; g < rule.size(); ++g)
        check_base_point(domain, rule.node(g));

    if (omega.is_polynomial()) {
        std::vector<std::pair<double, Form>> terms;
        for (std::size_t g = 0; g < rule.size(); ++g)
            terms.emplace_back(rule.weights[g] / vol, cone_operator(rule.node(g), omega, t_order));
        return linear_combination(terms);
    }

    std::vector<Form> cones;
    std::vector<double> weights;
    for (std::size_t g = 0; g < rule.size(); ++g) {
        cones.push_back(cone_operator(rule.node(g), omega, t_order));
        weights.push_back(rule.weights[g] / vol);
    }
    const int out_size = binomial(n, r - 1);
    auto eval = [cones, weights, out_size](std::span<const double> x, std::span<double> out) {
        std::vector<double> column(cones.size());
        std::vector<CoeffBuffer> all(cones.size());
        for (std::size_t g = 0; g < cones.size(); ++g)
            cones[g].evaluate(x, all[g]);
        for (int i = 0; i < out_size; ++i) {
            for (std::size_t g = 0; g < cones.size(); ++g)
                column[g] = weights[g] * all[g][i];
            out[i] = pairwise_sum(column);
        }
    };
    auto derivative = [domain, omega, quad, t_order]() {
        return omega - averaged_homotopy(domain, omega.d(), quad, t_order);
    };
    return Form::from_evaluator(n, r - 1, eval, derivative, "A(" + omega.label() + ")");
}

double lp_power_integral(const Form& omega, const ConvexDomain& domain, double p, const QuadratureSpec& quad)
{
    if (!(p >= 1.0))
        throw InvalidArgument("L^p norm needs p >= 1");
    if (domain.dim() != omega.dim())
        throw DimensionMismatch("form and domain dimensions differ");
    if (omega.is_zero())
        return 0.0;
    auto rule = domain.quadrature(quad);
    std::vector<double> terms(rule.size());
    for (std::size_t g = 0; g < rule.size(); ++g) {
        double a = omega.pointwise_norm(rule.node(g));
        terms[g] = rule.weights[g] * (p == 2.0 ? a * a : std::pow(a, p));
    }
    return std::max(0.0, pairwise_sum(terms));
}

double lp_norm(const Form& omega, const ConvexDomain& domain, double p, const QuadratureSpec& quad)
{
    double s = lp_power_integral(omega, domain, p, quad);
    return p == 2.0 ? std::sqrt(s) : std::pow(s, 1.0 / p);
}

double closedness_residual(const Form& omega, const ConvexDomain& domain, int count, std::uint64_t seed)
{
    if (omega.degree() >= omega.dim())
        return 0.0;
    Form d = omega.d();
    auto pts = domain.probes(count, seed);
    return max_abs_difference(d, Form::zero(d.dim(), d.degree()), pts);
}

LocalPrimitive local_primitive(const ConvexDomain& domain, const Form& omega, double p, double q,
                               const QuadratureSpec& quad)
{
    auto pair = admissible_exponents(p, q, domain.dim());
    if (pair.kind == ExponentCase::Inadmissible)
        throw InvalidArgument("inadmissible exponents: " + pair.violated);
    LocalPrimitive out;
    out.cert.p = p;
    out.cert.q = q;
    out.cert.closed_residual = closedness_residual(omega, domain);
    if (out.cert.closed_residual > kClosednessTol)
        throw VerificationFailure("input form is not closed", out.cert.closed_residual);
    out.xi = averaged_homotopy(domain, omega, quad);
    auto probes = domain.probes(256, kProbeSeed);
    out.cert.primitive_residual = max_abs_difference(out.xi.d(), omega, probes);
    out.cert.norm_xi = lp_norm(out.xi, domain, p, quad);
    out.cert.norm_omega = lp_norm(omega, domain, q, quad);
    out.cert.ratio = out.cert.norm_omega > 0.0 ? out.cert.norm_xi / out.cert.norm_omega : 0.0;
    out.cert.bound = theorem_constant_c(p, q, omega.degree() - 1, domain);
    out.cert.bound_holds = out.cert.ratio <= out.cert.bound;
    return out;
}

} // namespace pf
