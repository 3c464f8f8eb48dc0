#pragma once

#include <map>
#include <span>
#include <vector>

namespace pf {

/// Sparse real multivariate polynomial. Terms are kept collected (one entry
/// per exponent vector) and exact zeros are dropped.
class Polynomial {
public:
    using Exponents = std::vector<int>;

    Polynomial() = default;
    explicit Polynomial(int vars) : vars_(vars) {}

    static Polynomial constant(int vars, double c);
    /// The coordinate function x_k.
    static Polynomial variable(int vars, int k);
    static Polynomial monomial(double c, Exponents e);

    int vars() const { return vars_; }
    const std::map<Exponents, double>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int total_degree() const;

    void add_term(double c, const Exponents& e);

    double evaluate(std::span<const double> x) const;
    Polynomial partial(int k) const;

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(double s);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, double s) { return a *= s; }
    friend Polynomial operator*(double s, Polynomial a) { return a *= s; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

    Polynomial pow(int k) const;

    /// Substitute x_i -> images[i] (each a polynomial in `images[i].vars()` variables).
    Polynomial compose(std::span<const Polynomial> images) const;

    /// ∫_0^1 dx_k, removing variable k (the remaining variables keep their order).
    Polynomial integrate_unit(int k) const;

    /// Drop trailing variables known not to occur (used after integration).
    Polynomial with_vars(int vars) const;

private:
    int vars_ = 0;
    std::map<Exponents, double> terms_;
};

} // namespace pf
