#pragma once

#include "pf/domain.hpp"
#include "pf/form.hpp"
#include "pf/quadrature.hpp"

#include <span>

namespace pf {

inline constexpr int kDefaultTimeOrder = 16;

/// K_y ω = ∫_0^1 α_1(x,t) dt. Polynomial inputs are integrated in t exactly;
/// others use Gauss–Legendre of order `t_order`. For non-polynomial input the
/// derivative of the result is ω - K_y(dω).
Form homotopy_operator(const ConvexDomain& domain, std::span<const double> y, const Form& omega,
                       int t_order = kDefaultTimeOrder);

/// Same, without the membership check on y (callers that choose y themselves).
Form cone_operator(std::span<const double> y, const Form& omega, int t_order = kDefaultTimeOrder);

/// Aω = (1/Vol D) ∫_D K_y ω dy over the nodes of `quad` on D.
Form averaged_homotopy(const ConvexDomain& domain, const Form& omega, const QuadratureSpec& quad = {},
                       int t_order = kDefaultTimeOrder);

/// ∫_D |ω|^p (without the final root).
double lp_power_integral(const Form& omega, const ConvexDomain& domain, double p,
                         const QuadratureSpec& quad = {});

/// (∫_D |ω|^p)^{1/p}.
double lp_norm(const Form& omega, const ConvexDomain& domain, double p, const QuadratureSpec& quad = {});

/// max |dω| over `count` deterministic probes of D.
double closedness_residual(const Form& omega, const ConvexDomain& domain, int count = 256,
                           std::uint64_t seed = kProbeSeed);

struct LocalCert {
    double p = 2.0;
    double q = 2.0;
    double norm_xi = 0.0;
    double norm_omega = 0.0;
    double ratio = 0.0;
    double bound = 0.0;
    double closed_residual = 0.0;
    double primitive_residual = 0.0;
    bool bound_holds = true;
};

struct LocalPrimitive {
    Form xi;
    LocalCert cert;
};

inline constexpr double kClosednessTol = 1e-8;

/// ξ = Aω for a closed ω, with ‖ξ‖_p, ‖ω‖_q and the bound Vol^{1/p-1/q} C diam.
/// Throws VerificationFailure when ω is not closed.
LocalPrimitive local_primitive(const ConvexDomain& domain, const Form& omega, double p, double q,
                               const QuadratureSpec& quad = {});

} // namespace pf
