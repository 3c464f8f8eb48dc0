#include "pf/form.hpp"

#include "pf/error.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace pf {

namespace {

bool all_fields(const std::vector<ScalarField>& f, bool (*pred)(const ScalarField&))
{
    for (const auto& s : f)
        if (!pred(s))
            return false;
    return true;
}

bool is_poly_field(const ScalarField& s) { return s.kind() == ScalarField::Kind::Polynomial; }
bool is_trig_or_zero(const ScalarField& s)
{
    return s.kind() == ScalarField::Kind::Trig || s.is_zero();
}
bool is_symbolic_field(const ScalarField& s) { return s.is_symbolic(); }

// Flattened polynomial/trig terms for fast evaluation of symbolic coefficients.
struct CompiledTerm {
    int rank;
    double coef;
    std::array<int, kMaxDim> exps;
    bool trig;
    bool cosine;
};

// Dense symbolic coefficients.
class TermsNode final : public FormNode {
public:
    TermsNode(int dim, int degree, std::vector<ScalarField> coeffs)
        : FormNode(dim, degree), coeffs_(std::move(coeffs))
    {
        if (static_cast<int>(coeffs_.size()) != size())
            throw DimensionMismatch("form coefficient count does not match C(n,r)");
        zero_ = true;
        for (int rank = 0; rank < size(); ++rank) {
            const auto& f = coeffs_[rank];
            if (f.dim() != dim && !(f.is_zero()))
                throw DimensionMismatch("coefficient field dimension differs from form dimension");
            if (!f.is_zero())
                zero_ = false;
            if (auto p = f.polynomial()) {
                for (const auto& [e, c] : p->terms()) {
                    CompiledTerm t{rank, c, {}, false, false};
                    for (int k = 0; k < dim; ++k) {
                        t.exps[k] = e[k];
                        max_exp_ = std::max(max_exp_, e[k]);
                    }
                    compiled_.push_back(t);
                }
            } else if (auto tr = f.trig()) {
                for (const auto& [key, c] : tr->terms()) {
                    CompiledTerm t{rank, c, {}, true, key.phase == TrigPolynomial::Phase::Cos};
                    for (int k = 0; k < dim; ++k)
                        t.exps[k] = key.freq[k];
                    compiled_.push_back(t);
                }
            } else {
                generic_.push_back(rank);
            }
        }
    }

    void evaluate(std::span<const double> x, std::span<double> out) const override
    {
        const int n = dim();
        const int m = size();
        for (int i = 0; i < m; ++i)
            out[i] = 0.0;
        if (!compiled_.empty()) {
            // Power table x_k^e for polynomial terms.
            double powers[kMaxDim][32];
            const int max_e = std::min(max_exp_, 31);
            for (int k = 0; k < n; ++k) {
                powers[k][0] = 1.0;
                for (int e = 1; e <= max_e; ++e)
                    powers[k][e] = powers[k][e - 1] * x[k];
            }
            for (const auto& t : compiled_) {
                if (t.trig) {
                    double arg = 0.0;
                    for (int k = 0; k < n; ++k)
                        arg += t.exps[k] * x[k];
                    arg *= 2.0 * std::numbers::pi;
                    out[t.rank] += t.coef * (t.cosine ? std::cos(arg) : std::sin(arg));
                } else {
                    double v = t.coef;
                    for (int k = 0; k < n; ++k) {
                        int e = t.exps[k];
                        if (e == 0)
                            continue;
                        if (e <= max_e)
                            v *= powers[k][e];
                        else
                            v *= std::pow(x[k], e);
                    }
                    out[t.rank] += v;
                }
            }
        }
        for (int rank : generic_)
            out[rank] = coeffs_[rank].evaluate(x);
    }

    std::string label() const override { return "terms"; }
    bool is_zero() const override { return zero_; }
    const std::vector<ScalarField>* terms() const override { return &coeffs_; }

protected:
    Form make_derivative() const override
    {
        const int n = dim();
        const int r = degree();
        if (r >= n || zero_)
            return Form::zero(n, r + 1);
        const auto& src = IndexTable::get(n, r);
        const auto& dst = IndexTable::get(n, r + 1);
        std::vector<ScalarField> out(dst.size(), ScalarField::zero(n));
        for (int rank = 0; rank < src.size(); ++rank) {
            const auto& f = coeffs_[rank];
            if (f.is_zero())
                continue;
            if (!f.has_gradient())
                throw UnsupportedOperation("exterior derivative of a closure coefficient without gradient");
            IndexMask m = src.mask(rank);
            for (int k = 0; k < n; ++k) {
                IndexMask bit = IndexMask{1} << k;
                if (m & bit)
                    continue;
                int sign = wedge_sign(bit, m);
                int target = dst.rank(m | bit);
                out[target] = out[target] + static_cast<double>(sign) * f.partial(k);
            }
        }
        return Form::from_dense(n, r + 1, std::move(out));
    }

private:
    std::vector<ScalarField> coeffs_;
    std::vector<CompiledTerm> compiled_;
    std::vector<int> generic_;
    int max_exp_ = 0;
    bool zero_ = true;
};

class LinearNode final : public FormNode {
public:
    explicit LinearNode(std::vector<std::pair<double, Form>> terms)
        : FormNode(terms.front().second.dim(), terms.front().second.degree()), terms_(std::move(terms))
    {
    }

    void evaluate(std::span<const double> x, std::span<double> out) const override
    {
        const int m = size();
        for (int i = 0; i < m; ++i)
            out[i] = 0.0;
        CoeffBuffer buf;
        for (const auto& [c, f] : terms_) {
            f.evaluate(x, buf);
            for (int i = 0; i < m; ++i)
                out[i] += c * buf[i];
        }
    }

    std::string label() const override
    {
        std::ostringstream os;
        os << "sum(";
        for (std::size_t i = 0; i < terms_.size(); ++i)
            os << (i ? "," : "") << terms_[i].second.label();
        os << ")";
        return os.str();
    }

protected:
    Form make_derivative() const override
    {
        std::vector<std::pair<double, Form>> d;
        for (const auto& [c, f] : terms_)
            d.emplace_back(c, f.d());
        return linear_combination(d);
    }

private:
    std::vector<std::pair<double, Form>> terms_;
};

class ClosedNode final : public FormNode {
public:
    explicit ClosedNode(Form inner) : FormNode(inner.dim(), inner.degree()), inner_(std::move(inner)) {}

    void evaluate(std::span<const double> x, std::span<double> out) const override
    {
        inner_.evaluate(x, out);
    }
    std::string label() const override { return "closed(" + inner_.label() + ")"; }
    bool is_zero() const override { return inner_.is_zero(); }

protected:
    Form make_derivative() const override { return Form::zero(dim(), degree() + 1); }

private:
    Form inner_;
};

class EvaluatorNode final : public FormNode {
public:
    EvaluatorNode(int dim, int degree,
                  std::function<void(std::span<const double>, std::span<double>)> eval,
                  std::function<Form()> derivative, std::string label)
        : FormNode(dim, degree), eval_(std::move(eval)), derivative_(std::move(derivative)),
          label_(std::move(label))
    {
    }

    void evaluate(std::span<const double> x, std::span<double> out) const override { eval_(x, out); }
    std::string label() const override { return label_; }

protected:
    Form make_derivative() const override
    {
        if (!derivative_)
            throw UnsupportedOperation("form '" + label_ + "' has no derivative evaluator");
        return derivative_();
    }

private:
    std::function<void(std::span<const double>, std::span<double>)> eval_;
    std::function<Form()> derivative_;
    std::string label_;
};

class TranslateNode final : public FormNode {
public:
    TranslateNode(Form inner, std::vector<double> shift)
        : FormNode(inner.dim(), inner.degree()), inner_(std::move(inner)), shift_(std::move(shift))
    {
    }

    void evaluate(std::span<const double> x, std::span<double> out) const override
    {
        PointBuffer y;
        for (int k = 0; k < dim(); ++k)
            y[k] = x[k] + shift_[k];
        inner_.evaluate({y.data(), static_cast<std::size_t>(dim())}, out);
    }
    std::string label() const override { return "translate(" + inner_.label() + ")"; }

protected:
    Form make_derivative() const override { return inner_.d().translated(shift_); }

private:
    Form inner_;
    std::vector<double> shift_;
};

class ScaleNode final : public FormNode {
public:
    ScaleNode(ScalarField f, Form inner)
        : FormNode(inner.dim(), inner.degree()), f_(std::move(f)), inner_(std::move(inner))
    {
    }

    void evaluate(std::span<const double> x, std::span<double> out) const override
    {
        const int m = size();
        double s = f_.evaluate(x);
        if (s == 0.0) {
            for (int i = 0; i < m; ++i)
                out[i] = 0.0;
            return;
        }
        inner_.evaluate(x, out);
        for (int i = 0; i < m; ++i)
            out[i] *= s;
    }
    std::string label() const override { return to_string(f_.kind()) + "*" + inner_.label(); }

protected:
    Form make_derivative() const override
    {
        return wedge(differential(f_), inner_) + multiply(f_, inner_.d());
    }

private:
    ScalarField f_;
    Form inner_;
};

class WedgeNode final : public FormNode {
public:
    WedgeNode(Form a, Form b)
        : FormNode(a.dim(), a.degree() + b.degree()), a_(std::move(a)), b_(std::move(b))
    {
    }

    void evaluate(std::span<const double> x, std::span<double> out) const override
    {
        const int n = dim();
        const int m = size();
        for (int i = 0; i < m; ++i)
            out[i] = 0.0;
        CoeffBuffer va, vb;
        a_.evaluate(x, va);
        b_.evaluate(x, vb);
        const auto& ta = IndexTable::get(n, a_.degree());
        const auto& tb = IndexTable::get(n, b_.degree());
        const auto& tc = IndexTable::get(n, degree());
        for (int i = 0; i < ta.size(); ++i) {
            if (va[i] == 0.0)
                continue;
            for (int j = 0; j < tb.size(); ++j) {
                int sign = wedge_sign(ta.mask(i), tb.mask(j));
                if (sign == 0)
                    continue;
                out[tc.rank(ta.mask(i) | tb.mask(j))] += sign * va[i] * vb[j];
            }
        }
    }
    std::string label() const override { return "wedge(" + a_.label() + "," + b_.label() + ")"; }

protected:
    Form make_derivative() const override
    {
        double sign = (a_.degree() % 2 == 0) ? 1.0 : -1.0;
        return wedge(a_.d(), b_) + sign * wedge(a_, b_.d());
    }

private:
    Form a_, b_;
};

bool symbolic_node(const Form& f)
{
    auto t = f.terms();
    return t && all_fields(*t, is_symbolic_field);
}

} // namespace

// ---------------------------------------------------------------------------

Form FormNode::derivative() const
{
    std::call_once(d_once_, [this] {
        Form d = make_derivative();
        // Anything but symbolic coefficients gets d∘d = 0 by construction.
        if (!d.is_zero() && !symbolic_node(d))
            d = closed_form(d);
        d_ = d.node();
    });
    return Form(d_);
}

Form::Form() : Form(zero(0, 0)) {}

Form::Form(std::shared_ptr<const FormNode> node) : node_(std::move(node))
{
    if (!node_)
        throw InvalidArgument("null form node");
}

Form Form::zero(int dim, int degree)
{
    if (dim < 0 || dim > kMaxDim)
        throw DimensionMismatch("form dimension out of range: " + std::to_string(dim));
    if (degree < 0)
        throw InvalidArgument("negative form degree");
    return Form(std::make_shared<TermsNode>(dim, degree,
                                            std::vector<ScalarField>(binomial(dim, degree),
                                                                     ScalarField::zero(dim))));
}

Form Form::constant(int dim, double c) { return scalar(ScalarField::constant(dim, c)); }

Form Form::scalar(ScalarField f)
{
    int n = f.dim();
    return from_dense(n, 0, {std::move(f)});
}

Form Form::from_dense(int dim, int degree, std::vector<ScalarField> coeffs)
{
    if (dim < 0 || dim > kMaxDim)
        throw DimensionMismatch("form dimension out of range: " + std::to_string(dim));
    return Form(std::make_shared<TermsNode>(dim, degree, std::move(coeffs)));
}

Form Form::from_terms(int dim, int degree,
                      const std::vector<std::pair<std::vector<int>, ScalarField>>& terms)
{
    if (degree > dim)
        return zero(dim, degree);
    const auto& table = IndexTable::get(dim, degree);
    std::vector<ScalarField> coeffs(table.size(), ScalarField::zero(dim));
    std::vector<int> sorted;
    for (const auto& [index, field] : terms) {
        if (static_cast<int>(index.size()) != degree)
            throw InvalidArgument("multi-index length differs from form degree");
        for (int i : index)
            if (i < 0 || i >= dim)
                throw DimensionMismatch("multi-index entry out of range");
        int sign = canonicalize(index, sorted);
        if (sign == 0)
            continue;
        int rank = table.rank(to_mask(sorted));
        coeffs[rank] = coeffs[rank] + static_cast<double>(sign) * field;
    }
    return from_dense(dim, degree, std::move(coeffs));
}

Form Form::basis(int dim, std::vector<int> index)
{
    int r = static_cast<int>(index.size());
    return from_terms(dim, r, {{std::move(index), ScalarField::constant(dim, 1.0)}});
}

Form Form::from_evaluator(int dim, int degree,
                          std::function<void(std::span<const double>, std::span<double>)> eval,
                          std::function<Form()> derivative, std::string label)
{
    return Form(std::make_shared<EvaluatorNode>(dim, degree, std::move(eval), std::move(derivative),
                                                std::move(label)));
}

bool Form::is_polynomial() const
{
    auto t = terms();
    return t && all_fields(*t, is_poly_field);
}

bool Form::is_trig() const
{
    auto t = terms();
    return t && all_fields(*t, is_trig_or_zero);
}

void Form::evaluate(std::span<const double> x, std::span<double> out) const
{
    if (static_cast<int>(x.size()) < dim())
        throw DimensionMismatch("evaluation point has " + std::to_string(x.size()) +
                                " coordinates, form lives in dimension " + std::to_string(dim()));
    node_->evaluate(x, out);
}

std::vector<double> Form::values(std::span<const double> x) const
{
    CoeffBuffer buf;
    evaluate(x, buf);
    return std::vector<double>(buf.begin(), buf.begin() + size());
}

double Form::component(std::span<const double> x, std::span<const int> index) const
{
    if (static_cast<int>(index.size()) != degree())
        throw InvalidArgument("multi-index length differs from form degree");
    for (int i : index)
        if (i < 0 || i >= dim())
            throw DimensionMismatch("multi-index entry out of range");
    std::vector<int> sorted;
    int sign = canonicalize(index, sorted);
    if (sign == 0)
        return 0.0;
    CoeffBuffer buf;
    evaluate(x, buf);
    return sign * buf[IndexTable::get(dim(), degree()).rank(to_mask(sorted))];
}

double Form::pointwise_norm(std::span<const double> x) const
{
    CoeffBuffer buf;
    evaluate(x, buf);
    double s = 0.0;
    for (int i = 0; i < size(); ++i)
        s += buf[i] * buf[i];
    return std::sqrt(s);
}

namespace {

TrigPolynomial translate_trig(const TrigPolynomial& t, std::span<const double> shift)
{
    using Phase = TrigPolynomial::Phase;
    TrigPolynomial out(t.dim());
    for (const auto& [key, c] : t.terms()) {
        double ks = 0.0;
        for (int k = 0; k < t.dim(); ++k)
            ks += key.freq[k] * shift[k];
        ks -= std::round(ks);
        if (std::abs(ks) < 1e-15) {
            out.add_term(c, key.freq, key.phase);
            continue;
        }
        double phi = 2.0 * std::numbers::pi * ks;
        double cp = std::cos(phi), sp = std::sin(phi);
        if (key.phase == Phase::Cos) {
            out.add_term(c * cp, key.freq, Phase::Cos);
            out.add_term(-c * sp, key.freq, Phase::Sin);
        } else {
            out.add_term(c * cp, key.freq, Phase::Sin);
            out.add_term(c * sp, key.freq, Phase::Cos);
        }
    }
    return out;
}

} // namespace

Form Form::translated(std::span<const double> shift) const
{
    const int n = dim();
    if (static_cast<int>(shift.size()) != n)
        throw DimensionMismatch("translation vector has wrong dimension");
    bool zero_shift = true;
    for (double s : shift)
        if (s != 0.0)
            zero_shift = false;
    if (zero_shift || is_zero())
        return *this;
    if (is_polynomial()) {
        std::vector<Polynomial> images;
        for (int k = 0; k < n; ++k)
            images.push_back(Polynomial::variable(n, k) + Polynomial::constant(n, shift[k]));
        std::vector<ScalarField> out;
        for (const auto& f : *terms())
            out.emplace_back(f.polynomial()->compose(images));
        return from_dense(n, degree(), std::move(out));
    }
    if (is_trig()) {
        std::vector<ScalarField> out;
        for (const auto& f : *terms())
            out.emplace_back(f.is_zero() ? f : ScalarField(translate_trig(*f.trig(), shift)));
        return from_dense(n, degree(), std::move(out));
    }
    return Form(std::make_shared<TranslateNode>(*this, std::vector<double>(shift.begin(), shift.end())));
}

Form linear_combination(const std::vector<std::pair<double, Form>>& terms)
{
    if (terms.empty())
        throw InvalidArgument("linear_combination of no forms");
    const int n = terms.front().second.dim();
    const int r = terms.front().second.degree();
    std::vector<std::pair<double, Form>> kept;
    for (const auto& [c, f] : terms) {
        if (f.dim() != n || f.degree() != r)
            throw DimensionMismatch("linear combination of forms of different shape");
        if (c != 0.0 && !f.is_zero())
            kept.emplace_back(c, f);
    }
    if (kept.empty())
        return Form::zero(n, r);
    bool all_poly = true, all_trig = true;
    for (const auto& [c, f] : kept) {
        all_poly = all_poly && f.is_polynomial();
        all_trig = all_trig && f.is_trig();
    }
    if (all_poly || all_trig) {
        std::vector<ScalarField> sum(binomial(n, r), ScalarField::zero(n));
        for (const auto& [c, f] : kept)
            for (std::size_t i = 0; i < sum.size(); ++i)
                sum[i] = sum[i] + c * (*f.terms())[i];
        return Form::from_dense(n, r, std::move(sum));
    }
    if (kept.size() == 1 && kept.front().first == 1.0)
        return kept.front().second;
    return Form(std::make_shared<LinearNode>(std::move(kept)));
}

Form operator+(const Form& a, const Form& b) { return linear_combination({{1.0, a}, {1.0, b}}); }
Form operator-(const Form& a, const Form& b) { return linear_combination({{1.0, a}, {-1.0, b}}); }
Form operator*(double s, const Form& a) { return linear_combination({{s, a}}); }

Form exterior_derivative(const Form& form) { return form.d(); }

Form wedge(const Form& a, const Form& b)
{
    if (a.dim() != b.dim())
        throw DimensionMismatch("wedge of forms on different charts");
    const int n = a.dim();
    const int r = a.degree() + b.degree();
    if (r > n || a.is_zero() || b.is_zero())
        return Form::zero(n, r);
    if ((a.is_polynomial() && b.is_polynomial()) || (a.is_trig() && b.is_trig())) {
        const auto& ta = IndexTable::get(n, a.degree());
        const auto& tb = IndexTable::get(n, b.degree());
        const auto& tc = IndexTable::get(n, r);
        std::vector<ScalarField> out(tc.size(), ScalarField::zero(n));
        for (int i = 0; i < ta.size(); ++i) {
            const auto& fa = (*a.terms())[i];
            if (fa.is_zero())
                continue;
            for (int j = 0; j < tb.size(); ++j) {
                int sign = wedge_sign(ta.mask(i), tb.mask(j));
                const auto& fb = (*b.terms())[j];
                if (sign == 0 || fb.is_zero())
                    continue;
                int target = tc.rank(ta.mask(i) | tb.mask(j));
                out[target] = out[target] + static_cast<double>(sign) * (fa * fb);
            }
        }
        return Form::from_dense(n, r, std::move(out));
    }
    return Form(std::make_shared<WedgeNode>(a, b));
}

Form multiply(const ScalarField& f, const Form& form)
{
    if (f.dim() != form.dim() && !f.is_zero())
        throw DimensionMismatch("scalar field and form live on different charts");
    if (f.is_zero() || form.is_zero())
        return Form::zero(form.dim(), form.degree());
    bool poly = f.kind() == ScalarField::Kind::Polynomial && form.is_polynomial();
    bool trig = f.kind() == ScalarField::Kind::Trig && form.is_trig();
    if (poly || trig) {
        std::vector<ScalarField> out;
        for (const auto& c : *form.terms())
            out.push_back(c.is_zero() ? c : f * c);
        return Form::from_dense(form.dim(), form.degree(), std::move(out));
    }
    return Form(std::make_shared<ScaleNode>(f, form));
}

Form differential(const ScalarField& f)
{
    return Form::scalar(f).d();
}

Form closed_form(const Form& inner)
{
    if (inner.is_zero())
        return inner;
    if (dynamic_cast<const ClosedNode*>(inner.node().get()))
        return inner;
    return Form(std::make_shared<ClosedNode>(inner));
}

} // namespace pf

namespace pf {

double max_abs_difference(const Form& a, const Form& b, std::span<const double> points)
{
    if (a.dim() != b.dim() || a.degree() != b.degree())
        throw DimensionMismatch("comparing forms of different shape");
    const int n = a.dim();
    const int m = a.size();
    double worst = 0.0;
    CoeffBuffer va, vb;
    for (std::size_t k = 0; k + n <= points.size() && n > 0; k += n) {
        auto x = points.subspan(k, n);
        a.evaluate(x, va);
        b.evaluate(x, vb);
        for (int i = 0; i < m; ++i)
            worst = std::max(worst, std::abs(va[i] - vb[i]));
    }
    return worst;
}

} // namespace pf
