#pragma once

#include "pf/multi_index.hpp"
#include "pf/scalar_field.hpp"

#include <functional>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace pf {

class Form;

/// Evaluation node behind a Form. Subclasses provide pointwise coefficient
/// evaluation and (compositionally) the exterior derivative. Nodes are
/// immutable; the derivative is built once and cached.
class FormNode {
public:
    FormNode(int dim, int degree) : dim_(dim), degree_(degree) {}
    virtual ~FormNode() = default;

    int dim() const { return dim_; }
    int degree() const { return degree_; }
    int size() const { return binomial(dim_, degree_); }

    /// Writes the canonical coefficient vector at x into out[0..size()).
    virtual void evaluate(std::span<const double> x, std::span<double> out) const = 0;
    virtual std::string label() const = 0;
    virtual bool is_zero() const { return false; }
    /// Dense symbolic coefficients, when this node has them.
    virtual const std::vector<ScalarField>* terms() const { return nullptr; }

    Form derivative() const;

protected:
    virtual Form make_derivative() const = 0;

private:
    int dim_;
    int degree_;
    mutable std::once_flag d_once_;
    mutable std::shared_ptr<const FormNode> d_;
};

/// A degree-r differential form on an n-dimensional flat chart: coefficients
/// over strictly increasing multi-indices plus a compositional exterior
/// derivative. Cheap to copy (shared immutable node).
class Form {
public:
    Form();
    explicit Form(std::shared_ptr<const FormNode> node);

    static Form zero(int dim, int degree);
    static Form constant(int dim, double c);
    static Form scalar(ScalarField f);
    /// Σ coeffs[rank] dx_I in canonical order.
    static Form from_dense(int dim, int degree, std::vector<ScalarField> coeffs);
    /// Terms with arbitrary index order; permuted indices pick up the
    /// permutation sign, repeated indices drop the term.
    static Form from_terms(int dim, int degree,
                           const std::vector<std::pair<std::vector<int>, ScalarField>>& terms);
    /// The basis form dx_{i_1} ∧ ... ∧ dx_{i_r}.
    static Form basis(int dim, std::vector<int> index);
    /// Evaluator-backed form; `derivative` is invoked lazily at most once.
    static Form from_evaluator(int dim, int degree,
                               std::function<void(std::span<const double>, std::span<double>)> eval,
                               std::function<Form()> derivative, std::string label);

    int dim() const { return node_->dim(); }
    int degree() const { return node_->degree(); }
    int size() const { return node_->size(); }
    bool is_zero() const { return node_->is_zero(); }
    const std::vector<ScalarField>* terms() const { return node_->terms(); }
    /// All coefficients polynomial (resp. all trig or zero).
    bool is_polynomial() const;
    bool is_trig() const;
    std::string label() const { return node_->label(); }
    const std::shared_ptr<const FormNode>& node() const { return node_; }

    void evaluate(std::span<const double> x, std::span<double> out) const;
    std::vector<double> values(std::span<const double> x) const;
    /// Coefficient of dx_I at x, with the antisymmetry sign for unsorted I.
    double component(std::span<const double> x, std::span<const int> index) const;
    double pointwise_norm(std::span<const double> x) const;

    Form d() const { return node_->derivative(); }

    /// (x) ↦ ω(x + shift): pullback by a translation.
    Form translated(std::span<const double> shift) const;

    friend Form operator+(const Form& a, const Form& b);
    friend Form operator-(const Form& a, const Form& b);
    friend Form operator*(double s, const Form& a);

private:
    std::shared_ptr<const FormNode> node_;
};

Form linear_combination(const std::vector<std::pair<double, Form>>& terms);
Form exterior_derivative(const Form& form);
Form wedge(const Form& a, const Form& b);
/// f·ω with d(fω) = df∧ω + f dω.
Form multiply(const ScalarField& f, const Form& form);
/// The 1-form df (requires a gradient).
Form differential(const ScalarField& f);
/// A form equal to `inner` whose derivative is declared zero (used for forms
/// that are themselves exterior derivatives).
Form closed_form(const Form& inner);

/// max over points (row-major, `dim` each) and coefficients of |a - b|.
double max_abs_difference(const Form& a, const Form& b, std::span<const double> points);

/// Convenience: coefficient of dx_I at x (eval_form).
inline double eval_form(const Form& form, std::span<const double> x, std::span<const int> index)
{
    return form.component(x, index);
}
inline double pointwise_norm(const Form& form, std::span<const double> x)
{
    return form.pointwise_norm(x);
}

} // namespace pf
