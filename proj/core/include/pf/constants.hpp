#pragma once

#include "pf/domain.hpp"

#include <string>

namespace pf {

enum class ExponentCase { I, II, Inadmissible };

std::string to_string(ExponentCase c);

struct ExponentPair {
    double p = 0.0;
    double q = 0.0;
    int n = 0;
    ExponentCase kind = ExponentCase::Inadmissible;
    /// Hölder conjugate of p (infinity when p = 1).
    double p_conjugate = 0.0;
    /// Human-readable failed condition when inadmissible.
    std::string violated;
};

/// Case i: p >= q and 1/q - 1/p < 1/n. Case ii: p < q.
ExponentPair admissible_exponents(double p, double q, int n);

struct ConstantOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_intervals = 2000;
};

/// C(p,q,r,n): the one-dimensional integral of the local inequality.
double poincare_constant_C(double p, double q, int r, int n, const ConstantOptions& opts = {});

/// Vol(D)^{1/p-1/q} · C(p,q,r,n) · diam(D).
double theorem_constant_c(double p, double q, int r, const ConvexDomain& domain,
                          const ConstantOptions& opts = {});

} // namespace pf
