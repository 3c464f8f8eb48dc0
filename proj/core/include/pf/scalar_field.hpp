#pragma once

#include "pf/polynomial.hpp"

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace pf {

/// Finite sum of c·cos(2π k·x) and c·sin(2π k·x) with integer frequency
/// vectors k; periodic on the unit torus. Terms are collected with k
/// canonicalized (first nonzero entry positive).
class TrigPolynomial {
public:
    enum class Phase { Cos, Sin };
    struct Key {
        std::vector<int> freq;
        Phase phase;
        auto operator<=>(const Key&) const = default;
    };

    TrigPolynomial() = default;
    explicit TrigPolynomial(int dim) : dim_(dim) {}

    static TrigPolynomial constant(int dim, double c);

    int dim() const { return dim_; }
    const std::map<Key, double>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(double c, std::vector<int> freq, Phase phase);

    double evaluate(std::span<const double> x) const;
    TrigPolynomial partial(int k) const;

    TrigPolynomial& operator+=(const TrigPolynomial& o);
    TrigPolynomial& operator*=(double s);
    friend TrigPolynomial operator*(const TrigPolynomial& a, const TrigPolynomial& b);

private:
    int dim_ = 0;
    std::map<Key, double> terms_;
};

/// Smoothstep 1 - 10u^3 + 15u^4 - 6u^5 (C^2, equals 1 at u=0 and 0 at u=1).
double quintic_profile(double u);
double quintic_profile_derivative(double u);

/// Tensor-product bump: 1 on the core box, decaying with the quintic profile
/// to 0 on the boundary of the outer box, 0 outside it. A side where the core
/// and outer faces coincide has no decay (value 1 up to that face).
struct Bump {
    std::vector<double> core_lo, core_hi, outer_lo, outer_hi;

    int dim() const { return static_cast<int>(core_lo.size()); }
    double evaluate(std::span<const double> x) const;
    void gradient(std::span<const double> x, std::span<double> g) const;
};

/// Opaque scalar field given by evaluators. The gradient is optional; fields
/// without one cannot be differentiated.
struct Closure {
    using Value = std::function<double(std::span<const double>)>;
    using Gradient = std::function<void(std::span<const double>, std::span<double>)>;

    int dim = 0;
    std::shared_ptr<const Value> value;
    std::shared_ptr<const Gradient> gradient;
    std::string label;
};

class ScalarField {
public:
    enum class Kind { Polynomial, Trig, Bump, Closure };

    ScalarField() : data_(Polynomial(0)) {}
    ScalarField(Polynomial p) : data_(std::move(p)) {}
    ScalarField(TrigPolynomial t) : data_(std::move(t)) {}
    ScalarField(Bump b) : data_(std::move(b)) {}
    ScalarField(Closure c) : data_(std::move(c)) {}

    static ScalarField zero(int dim) { return Polynomial(dim); }
    static ScalarField constant(int dim, double c) { return Polynomial::constant(dim, c); }
    static ScalarField closure(int dim, Closure::Value value, Closure::Gradient gradient = {},
                               std::string label = "closure");

    Kind kind() const { return static_cast<Kind>(data_.index()); }
    int dim() const;
    bool is_zero() const;
    /// Polynomial and trig kinds: closed under sum, product, differentiation.
    bool is_symbolic() const { return kind() == Kind::Polynomial || kind() == Kind::Trig; }
    bool has_gradient() const;

    double evaluate(std::span<const double> x) const;
    void gradient(std::span<const double> x, std::span<double> g) const;
    ScalarField partial(int k) const;

    const Polynomial* polynomial() const { return std::get_if<Polynomial>(&data_); }
    const TrigPolynomial* trig() const { return std::get_if<TrigPolynomial>(&data_); }
    const Bump* bump() const { return std::get_if<Bump>(&data_); }
    const Closure* closure_data() const { return std::get_if<Closure>(&data_); }

    friend ScalarField operator+(const ScalarField& a, const ScalarField& b);
    friend ScalarField operator*(const ScalarField& a, const ScalarField& b);
    friend ScalarField operator*(double s, const ScalarField& a);

private:
    std::variant<Polynomial, TrigPolynomial, Bump, Closure> data_;
};

std::string to_string(ScalarField::Kind kind);

} // namespace pf
