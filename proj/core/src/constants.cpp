#include "pf/constants.hpp"

#include "pf/error.hpp"
#include "pf/quadrature.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace pf {

std::string to_string(ExponentCase c)
{
    switch (c) {
    case ExponentCase::I:
        return "i";
    case ExponentCase::II:
        return "ii";
    case ExponentCase::Inadmissible:
        return "inadmissible";
    }
    return "unknown";
}

ExponentPair admissible_exponents(double p, double q, int n)
{
    if (!(p >= 1.0) || !(q >= 1.0))
        throw InvalidArgument("exponents must satisfy p, q >= 1");
    if (n < 1)
        throw InvalidArgument("dimension must be positive");
    ExponentPair e;
    e.p = p;
    e.q = q;
    e.n = n;
    e.p_conjugate = p == 1.0 ? std::numeric_limits<double>::infinity() : p / (p - 1.0);
    if (p < q) {
        e.kind = ExponentCase::II;
    } else if (1.0 / q - 1.0 / p < 1.0 / n) {
        e.kind = ExponentCase::I;
    } else {
        e.kind = ExponentCase::Inadmissible;
        std::ostringstream os;
        os << "1/q - 1/p < 1/n fails: 1/" << q << " - 1/" << p << " = " << (1.0 / q - 1.0 / p)
           << " >= " << 1.0 / n;
        e.violated = os.str();
    }
    return e;
}

double poincare_constant_C(double p, double q, int r, int n, const ConstantOptions& opts)
{
    auto pair = admissible_exponents(p, q, n);
    if (pair.kind == ExponentCase::Inadmissible)
        throw InvalidArgument("inadmissible exponents: " + pair.violated);
    if (r < 0 || r > n)
        throw InvalidArgument("form degree must satisfy 0 <= r <= n");
    // On [0,1/2] the min picks t^a, on [1/2,1] it picks (1-t)^a.
    const double a = pair.kind == ExponentCase::I ? n / p : n / q;
    const double c = n / q;
    // Integrand: min(t^a,(1-t)^a) t^{r-a} (1-t)^{-c}.
    const double right_e = a - c;
    const double right_t = r - a;

    auto left = [&](double t) { return std::pow(t, r) * std::pow(1.0 - t, -c); };
    auto lres = adaptive_gauss_kronrod(left, 0.0, 0.5, opts.abs_tol, opts.rel_tol, opts.max_intervals);

    // Right half: t = 1 - u^m makes (1-t)^e dt = m u^{m(e+1)-1} du with a
    // nonnegative power once m >= 1/(1+e).
    const int m = std::max(1, static_cast<int>(std::ceil(2.0 / (1.0 + right_e))));
    auto right = [&](double u) {
        if (u <= 0.0)
            return 0.0;
        double um = std::pow(u, m);
        return m * std::pow(u, m * (right_e + 1.0) - 1.0) * std::pow(1.0 - um, right_t);
    };
    const double upper = std::pow(0.5, 1.0 / m);
    auto rres = adaptive_gauss_kronrod(right, 0.0, upper, opts.abs_tol, opts.rel_tol, opts.max_intervals);
    return lres.value + rres.value;
}

double theorem_constant_c(double p, double q, int r, const ConvexDomain& domain,
                          const ConstantOptions& opts)
{
    const double C = poincare_constant_C(p, q, r, domain.dim(), opts);
    const double e = 1.0 / p - 1.0 / q;
    const double vol_factor = e == 0.0 ? 1.0 : std::pow(domain.volume(), e);
    return vol_factor * C * domain.diameter();
}

} // namespace pf
