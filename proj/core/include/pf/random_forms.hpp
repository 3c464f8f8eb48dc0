#pragma once

#include "pf/bicomplex.hpp"
#include "pf/form.hpp"

#include <cstdint>
#include <random>

namespace pf {

/// Polynomial with uniform(-1,1) coefficients on every monomial of total
/// degree <= max_degree.
Polynomial random_polynomial(int vars, int max_degree, std::mt19937_64& rng);

/// Degree-r form with random polynomial coefficients.
Form random_polynomial_form(int dim, int degree, int max_degree, std::mt19937_64& rng);

/// d of a random polynomial (r-1)-form; r >= 1.
Form random_exact_form(int dim, int degree, int max_degree, std::mt19937_64& rng);

/// Random element of K^{degree,cech} with polynomial components.
BicomplexElement random_element(std::shared_ptr<const CoverContext> ctx, int degree, int cech,
                                int max_degree, std::mt19937_64& rng);

} // namespace pf
