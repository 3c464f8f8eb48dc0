#include "pf/scalar_field.hpp"

#include "pf/error.hpp"
#include "pf/multi_index.hpp"

#include <cmath>
#include <numbers>

namespace pf {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Canonical frequency: first nonzero entry positive. Returns the sign flip.
int canonical_freq(std::vector<int>& k)
{
    for (int v : k) {
        if (v == 0)
            continue;
        if (v > 0)
            return 1;
        for (int& w : k)
            w = -w;
        return -1;
    }
    return 1;
}

bool all_zero(const std::vector<int>& k)
{
    for (int v : k)
        if (v != 0)
            return false;
    return true;
}

} // namespace

TrigPolynomial TrigPolynomial::constant(int dim, double c)
{
    TrigPolynomial t(dim);
    t.add_term(c, std::vector<int>(dim, 0), Phase::Cos);
    return t;
}

void TrigPolynomial::add_term(double c, std::vector<int> freq, Phase phase)
{
    if (static_cast<int>(freq.size()) != dim_)
        throw DimensionMismatch("trig term has wrong frequency dimension");
    int flip = canonical_freq(freq);
    if (phase == Phase::Sin) {
        if (all_zero(freq))
            return;
        c *= flip;
    }
    if (c == 0.0)
        return;
    Key key{std::move(freq), phase};
    auto [it, inserted] = terms_.emplace(key, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0.0)
            terms_.erase(it);
    }
}

double TrigPolynomial::evaluate(std::span<const double> x) const
{
    double sum = 0.0;
    for (const auto& [key, c] : terms_) {
        double arg = 0.0;
        for (int k = 0; k < dim_; ++k)
            arg += key.freq[k] * x[k];
        arg *= kTwoPi;
        sum += c * (key.phase == Phase::Cos ? std::cos(arg) : std::sin(arg));
    }
    return sum;
}

TrigPolynomial TrigPolynomial::partial(int k) const
{
    TrigPolynomial out(dim_);
    for (const auto& [key, c] : terms_) {
        double f = kTwoPi * key.freq[k];
        if (f == 0.0)
            continue;
        if (key.phase == Phase::Cos)
            out.add_term(-c * f, key.freq, Phase::Sin);
        else
            out.add_term(c * f, key.freq, Phase::Cos);
    }
    return out;
}

TrigPolynomial& TrigPolynomial::operator+=(const TrigPolynomial& o)
{
    if (terms_.empty() && dim_ == 0)
        dim_ = o.dim_;
    for (const auto& [key, c] : o.terms_)
        add_term(c, key.freq, key.phase);
    return *this;
}

TrigPolynomial& TrigPolynomial::operator*=(double s)
{
    if (s == 0.0) {
        terms_.clear();
        return *this;
    }
    for (auto& [key, c] : terms_)
        c *= s;
    return *this;
}

TrigPolynomial operator*(const TrigPolynomial& a, const TrigPolynomial& b)
{
    if (a.dim_ != b.dim_)
        throw DimensionMismatch("trig product of different dimensions");
    using Phase = TrigPolynomial::Phase;
    TrigPolynomial out(a.dim_);
    for (const auto& [ka, ca] : a.terms_)
        for (const auto& [kb, cb] : b.terms_) {
            std::vector<int> sum(a.dim_), diff(a.dim_);
            for (int i = 0; i < a.dim_; ++i) {
                sum[i] = ka.freq[i] + kb.freq[i];
                diff[i] = ka.freq[i] - kb.freq[i];
            }
            double h = 0.5 * ca * cb;
            if (ka.phase == Phase::Cos && kb.phase == Phase::Cos) {
                out.add_term(h, diff, Phase::Cos);
                out.add_term(h, sum, Phase::Cos);
            } else if (ka.phase == Phase::Sin && kb.phase == Phase::Sin) {
                out.add_term(h, diff, Phase::Cos);
                out.add_term(-h, sum, Phase::Cos);
            } else if (ka.phase == Phase::Sin) { // sin a cos b
                out.add_term(h, sum, Phase::Sin);
                out.add_term(h, diff, Phase::Sin);
            } else { // cos a sin b
                out.add_term(h, sum, Phase::Sin);
                out.add_term(-h, diff, Phase::Sin);
            }
        }
    return out;
}

double quintic_profile(double u)
{
    if (u <= 0.0)
        return 1.0;
    if (u >= 1.0)
        return 0.0;
    double u3 = u * u * u;
    return 1.0 - u3 * (10.0 - 15.0 * u + 6.0 * u * u);
}

double quintic_profile_derivative(double u)
{
    if (u <= 0.0 || u >= 1.0)
        return 0.0;
    double v = u * (1.0 - u);
    return -30.0 * v * v;
}

namespace {

// One axis of the bump: value and derivative.
void bump_axis(double x, double core_lo, double core_hi, double outer_lo, double outer_hi,
               double& value, double& deriv)
{
    value = 0.0;
    deriv = 0.0;
    if (x >= core_lo && x <= core_hi) {
        value = 1.0;
        return;
    }
    if (x < core_lo) {
        double width = core_lo - outer_lo;
        if (width <= 0.0 || x <= outer_lo)
            return;
        double u = (core_lo - x) / width;
        value = quintic_profile(u);
        deriv = -quintic_profile_derivative(u) / width;
        return;
    }
    double width = outer_hi - core_hi;
    if (width <= 0.0 || x >= outer_hi)
        return;
    double u = (x - core_hi) / width;
    value = quintic_profile(u);
    deriv = quintic_profile_derivative(u) / width;
}

} // namespace

double Bump::evaluate(std::span<const double> x) const
{
    double v = 1.0;
    for (int k = 0; k < dim() && v != 0.0; ++k) {
        double hv, hd;
        bump_axis(x[k], core_lo[k], core_hi[k], outer_lo[k], outer_hi[k], hv, hd);
        v *= hv;
    }
    return v;
}

void Bump::gradient(std::span<const double> x, std::span<double> g) const
{
    const int n = dim();
    double vals[kMaxDim], ders[kMaxDim];
    for (int k = 0; k < n; ++k)
        bump_axis(x[k], core_lo[k], core_hi[k], outer_lo[k], outer_hi[k], vals[k], ders[k]);
    for (int k = 0; k < n; ++k) {
        double p = ders[k];
        for (int j = 0; j < n; ++j)
            if (j != k)
                p *= vals[j];
        g[k] = p;
    }
}

ScalarField ScalarField::closure(int dim, Closure::Value value, Closure::Gradient gradient,
                                 std::string label)
{
    Closure c;
    c.dim = dim;
    c.value = std::make_shared<const Closure::Value>(std::move(value));
    if (gradient)
        c.gradient = std::make_shared<const Closure::Gradient>(std::move(gradient));
    c.label = std::move(label);
    return ScalarField(std::move(c));
}

int ScalarField::dim() const
{
    return std::visit(
        [](const auto& d) -> int {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Polynomial>)
                return d.vars();
            else if constexpr (std::is_same_v<T, Closure>)
                return d.dim;
            else
                return d.dim();
        },
        data_);
}

bool ScalarField::is_zero() const
{
    if (auto p = polynomial())
        return p->is_zero();
    if (auto t = trig())
        return t->is_zero();
    return false;
}

bool ScalarField::has_gradient() const
{
    if (auto c = closure_data())
        return static_cast<bool>(c->gradient);
    return true;
}

double ScalarField::evaluate(std::span<const double> x) const
{
    switch (kind()) {
    case Kind::Polynomial:
        return std::get<Polynomial>(data_).evaluate(x);
    case Kind::Trig:
        return std::get<TrigPolynomial>(data_).evaluate(x);
    case Kind::Bump:
        return std::get<Bump>(data_).evaluate(x);
    case Kind::Closure:
        return (*std::get<Closure>(data_).value)(x);
    }
    return 0.0;
}

void ScalarField::gradient(std::span<const double> x, std::span<double> g) const
{
    const int n = dim();
    switch (kind()) {
    case Kind::Polynomial: {
        const auto& p = std::get<Polynomial>(data_);
        for (int k = 0; k < n; ++k)
            g[k] = p.partial(k).evaluate(x);
        return;
    }
    case Kind::Trig: {
        const auto& t = std::get<TrigPolynomial>(data_);
        for (int k = 0; k < n; ++k)
            g[k] = t.partial(k).evaluate(x);
        return;
    }
    case Kind::Bump:
        std::get<Bump>(data_).gradient(x, g);
        return;
    case Kind::Closure: {
        const auto& c = std::get<Closure>(data_);
        if (!c.gradient)
            throw UnsupportedOperation("closure field '" + c.label + "' has no gradient evaluator");
        (*c.gradient)(x, g);
        return;
    }
    }
}

ScalarField ScalarField::partial(int k) const
{
    const int n = dim();
    if (k < 0 || k >= n)
        throw DimensionMismatch("partial derivative axis out of range");
    switch (kind()) {
    case Kind::Polynomial:
        return std::get<Polynomial>(data_).partial(k);
    case Kind::Trig:
        return std::get<TrigPolynomial>(data_).partial(k);
    case Kind::Bump: {
        auto b = std::make_shared<const Bump>(std::get<Bump>(data_));
        return closure(
            n,
            [b, k](std::span<const double> x) {
                double g[kMaxDim];
                b->gradient(x, {g, static_cast<std::size_t>(b->dim())});
                return g[k];
            },
            {}, "bump-partial");
    }
    case Kind::Closure: {
        const auto& c = std::get<Closure>(data_);
        if (!c.gradient)
            throw UnsupportedOperation("closure field '" + c.label + "' has no gradient evaluator");
        auto grad = c.gradient;
        return closure(
            n,
            [grad, k, n](std::span<const double> x) {
                double g[kMaxDim];
                (*grad)(x, {g, static_cast<std::size_t>(n)});
                return g[k];
            },
            {}, c.label + "-partial");
    }
    }
    return {};
}

ScalarField operator+(const ScalarField& a, const ScalarField& b)
{
    if (a.dim() != b.dim())
        throw DimensionMismatch("sum of scalar fields of different dimension");
    if (a.is_zero())
        return b;
    if (b.is_zero())
        return a;
    if (auto pa = a.polynomial(); pa && b.polynomial())
        return *pa + *b.polynomial();
    if (auto ta = a.trig(); ta && b.trig()) {
        TrigPolynomial t = *ta;
        t += *b.trig();
        return t;
    }
    const int n = a.dim();
    auto fa = std::make_shared<const ScalarField>(a);
    auto fb = std::make_shared<const ScalarField>(b);
    Closure::Gradient grad;
    if (a.has_gradient() && b.has_gradient())
        grad = [fa, fb, n](std::span<const double> x, std::span<double> g) {
            double gb[kMaxDim];
            fa->gradient(x, g);
            fb->gradient(x, {gb, static_cast<std::size_t>(n)});
            for (int k = 0; k < n; ++k)
                g[k] += gb[k];
        };
    return ScalarField::closure(
        n, [fa, fb](std::span<const double> x) { return fa->evaluate(x) + fb->evaluate(x); },
        std::move(grad), "sum");
}

ScalarField operator*(const ScalarField& a, const ScalarField& b)
{
    if (a.dim() != b.dim())
        throw DimensionMismatch("product of scalar fields of different dimension");
    if (a.is_zero())
        return a;
    if (b.is_zero())
        return b;
    if (auto pa = a.polynomial(); pa && b.polynomial())
        return *pa * *b.polynomial();
    if (auto ta = a.trig(); ta && b.trig())
        return *ta * *b.trig();
    const int n = a.dim();
    auto fa = std::make_shared<const ScalarField>(a);
    auto fb = std::make_shared<const ScalarField>(b);
    Closure::Gradient grad;
    if (a.has_gradient() && b.has_gradient())
        grad = [fa, fb, n](std::span<const double> x, std::span<double> g) {
            double ga[kMaxDim], gb[kMaxDim];
            fa->gradient(x, {ga, static_cast<std::size_t>(n)});
            fb->gradient(x, {gb, static_cast<std::size_t>(n)});
            double va = fa->evaluate(x), vb = fb->evaluate(x);
            for (int k = 0; k < n; ++k)
                g[k] = ga[k] * vb + va * gb[k];
        };
    return ScalarField::closure(
        n, [fa, fb](std::span<const double> x) { return fa->evaluate(x) * fb->evaluate(x); },
        std::move(grad), "product");
}

ScalarField operator*(double s, const ScalarField& a)
{
    if (auto p = a.polynomial())
        return *p * s;
    if (auto t = a.trig()) {
        TrigPolynomial r = *t;
        r *= s;
        return r;
    }
    return ScalarField::constant(a.dim(), s) * a;
}

std::string to_string(ScalarField::Kind kind)
{
    switch (kind) {
    case ScalarField::Kind::Polynomial:
        return "polynomial";
    case ScalarField::Kind::Trig:
        return "trig";
    case ScalarField::Kind::Bump:
        return "bump";
    case ScalarField::Kind::Closure:
        return "closure";
    }
    return "unknown";
}

} // namespace pf
