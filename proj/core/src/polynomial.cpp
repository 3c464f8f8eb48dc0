#include "pf/polynomial.hpp"

#include "pf/error.hpp"

#include <cmath>

namespace pf {

Polynomial Polynomial::constant(int vars, double c)
{
    Polynomial p(vars);
    p.add_term(c, Exponents(vars, 0));
    return p;
}

Polynomial Polynomial::variable(int vars, int k)
{
    Polynomial p(vars);
    Exponents e(vars, 0);
    e[k] = 1;
    p.add_term(1.0, e);
    return p;
}

Polynomial Polynomial::monomial(double c, Exponents e)
{
    Polynomial p(static_cast<int>(e.size()));
    p.add_term(c, e);
    return p;
}

int Polynomial::total_degree() const
{
    int deg = 0;
    for (const auto& [e, c] : terms_) {
        int d = 0;
        for (int v : e)
            d += v;
        deg = std::max(deg, d);
    }
    return deg;
}

void Polynomial::add_term(double c, const Exponents& e)
{
    if (static_cast<int>(e.size()) != vars_)
        throw DimensionMismatch("polynomial term has wrong number of exponents");
    if (c == 0.0)
        return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0.0)
            terms_.erase(it);
    }
}

double Polynomial::evaluate(std::span<const double> x) const
{
    double sum = 0.0;
    for (const auto& [e, c] : terms_) {
        double v = c;
        for (int k = 0; k < vars_; ++k)
            for (int j = 0; j < e[k]; ++j)
                v *= x[k];
        sum += v;
    }
    return sum;
}

Polynomial Polynomial::partial(int k) const
{
    Polynomial out(vars_);
    for (const auto& [e, c] : terms_) {
        if (e[k] == 0)
            continue;
        Exponents f = e;
        --f[k];
        out.add_term(c * e[k], f);
    }
    return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& o)
{
    if (terms_.empty() && vars_ == 0)
        vars_ = o.vars_;
    for (const auto& [e, c] : o.terms_)
        add_term(c, e);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o)
{
    if (terms_.empty() && vars_ == 0)
        vars_ = o.vars_;
    for (const auto& [e, c] : o.terms_)
        add_term(-c, e);
    return *this;
}

Polynomial& Polynomial::operator*=(double s)
{
    if (s == 0.0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, c] : terms_)
        c *= s;
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b)
{
    if (a.vars_ != b.vars_)
        throw DimensionMismatch("polynomial product of different variable counts");
    Polynomial out(a.vars_);
    Polynomial::Exponents e(a.vars_);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            for (int k = 0; k < a.vars_; ++k)
                e[k] = ea[k] + eb[k];
            out.add_term(ca * cb, e);
        }
    return out;
}

Polynomial Polynomial::pow(int k) const
{
    Polynomial result = constant(vars_, 1.0);
    Polynomial base = *this;
    while (k > 0) {
        if (k & 1)
            result = result * base;
        k >>= 1;
        if (k > 0)
            base = base * base;
    }
    return result;
}

Polynomial Polynomial::compose(std::span<const Polynomial> images) const
{
    if (static_cast<int>(images.size()) != vars_)
        throw DimensionMismatch("compose: need one image per variable");
    const int out_vars = images.empty() ? 0 : images[0].vars();
    Polynomial out(out_vars);
    // Cache powers of each image.
    std::vector<std::vector<Polynomial>> powers(vars_);
    for (const auto& [e, c] : terms_) {
        Polynomial term = constant(out_vars, c);
        for (int k = 0; k < vars_; ++k) {
            if (e[k] == 0)
                continue;
            auto& pk = powers[k];
            if (pk.empty())
                pk.push_back(constant(out_vars, 1.0));
            while (static_cast<int>(pk.size()) <= e[k])
                pk.push_back(pk.back() * images[k]);
            term = term * pk[e[k]];
        }
        out += term;
    }
    return out;
}

Polynomial Polynomial::integrate_unit(int k) const
{
    Polynomial out(vars_ - 1);
    Exponents f(vars_ - 1);
    for (const auto& [e, c] : terms_) {
        for (int j = 0, m = 0; j < vars_; ++j)
            if (j != k)
                f[m++] = e[j];
        out.add_term(c / (e[k] + 1), f);
    }
    return out;
}

Polynomial Polynomial::with_vars(int vars) const
{
    Polynomial out(vars);
    for (const auto& [e, c] : terms_) {
        Exponents f(vars, 0);
        for (int k = 0; k < vars_; ++k) {
            if (k < vars)
                f[k] = e[k];
            else if (e[k] != 0)
                throw InvalidArgument("with_vars would drop an occurring variable");
        }
        out.add_term(c, f);
    }
    return out;
}

} // namespace pf
