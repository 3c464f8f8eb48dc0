#include "pf/random_forms.hpp"

#include "pf/error.hpp"

namespace pf {

namespace {

void monomials(int vars, int max_degree, std::vector<int>& e, int k, int left,
               std::vector<std::vector<int>>& out)
{
    if (k == vars) {
        out.push_back(e);
        return;
    }
    for (int a = 0; a <= left; ++a) {
        e[k] = a;
        monomials(vars, max_degree, e, k + 1, left - a, out);
    }
    e[k] = 0;
}

} // namespace

Polynomial random_polynomial(int vars, int max_degree, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<std::vector<int>> all;
    std::vector<int> e(vars, 0);
    monomials(vars, max_degree, e, 0, max_degree, all);
    Polynomial p(vars);
    for (const auto& m : all)
        p.add_term(u(rng), m);
    return p;
}

Form random_polynomial_form(int dim, int degree, int max_degree, std::mt19937_64& rng)
{
    std::vector<ScalarField> coeffs;
    for (int k = 0; k < binomial(dim, degree); ++k)
        coeffs.emplace_back(random_polynomial(dim, max_degree, rng));
    return Form::from_dense(dim, degree, std::move(coeffs));
}

Form random_exact_form(int dim, int degree, int max_degree, std::mt19937_64& rng)
{
    if (degree < 1)
        throw InvalidArgument("exact forms have degree at least 1");
    return random_polynomial_form(dim, degree - 1, max_degree + 1, rng).d();
}

BicomplexElement random_element(std::shared_ptr<const CoverContext> ctx, int degree, int cech,
                                int max_degree, std::mt19937_64& rng)
{
    const int n = ctx->cover.dim();
    std::vector<Form> comps;
    const int count = BicomplexElement::zero(ctx, degree, cech).size();
    for (int k = 0; k < count; ++k)
        comps.push_back(random_polynomial_form(n, degree, max_degree, rng));
    return BicomplexElement(ctx, degree, cech, std::move(comps));
}

} // namespace pf
