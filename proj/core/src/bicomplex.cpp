#include "pf/bicomplex.hpp"

#include "pf/error.hpp"
#include "pf/homotopy.hpp"

#include <cmath>
#include <sstream>

namespace pf {

namespace {

std::string tuple_string(const Tuple& I)
{
    std::ostringstream os;
    os << "(";
    for (std::size_t k = 0; k < I.size(); ++k)
        os << (k ? "," : "") << I[k];
    os << ")";
    return os.str();
}

struct GlueTerm {
    ScalarField rho;
    Form beta;
    double sign;
    int chart;
};

using GlueTerms = std::shared_ptr<const std::vector<GlueTerm>>;

Form glue_derivative(std::shared_ptr<const CoverContext> ctx, GlueTerms terms, int n, int r)
{
    std::vector<Form> dbeta;
    for (const auto& t : *terms)
        dbeta.push_back(t.beta.d());
    const int size = binomial(n, r + 1);
    auto eval = [ctx, terms, dbeta, n, r, size](std::span<const double> x, std::span<double> out) {
        for (int i = 0; i < size; ++i)
            out[i] = 0.0;
        if (r + 1 > n)
            return;
        const auto& src = IndexTable::get(n, r);
        const auto& dst = IndexTable::get(n, r + 1);
        double g[kMaxDim];
        CoeffBuffer vb, vd;
        for (std::size_t k = 0; k < terms->size(); ++k) {
            const auto& t = (*terms)[k];
            double rho = t.rho.evaluate(x);
            t.rho.gradient(x, {g, static_cast<std::size_t>(n)});
            bool flat = true;
            for (int i = 0; i < n; ++i)
                flat = flat && g[i] == 0.0;
            if (rho == 0.0 && flat)
                continue;
            auto y = ctx->cover.lift(x, t.chart);
            t.beta.evaluate(y, vb);
            if (rho != 0.0) {
                dbeta[k].evaluate(y, vd);
                for (int i = 0; i < size; ++i)
                    out[i] += t.sign * rho * vd[i];
            }
            for (int rank = 0; rank < src.size(); ++rank) {
                if (vb[rank] == 0.0)
                    continue;
                IndexMask m = src.mask(rank);
                for (int axis = 0; axis < n; ++axis) {
                    IndexMask bit = IndexMask{1} << axis;
                    if (g[axis] == 0.0 || (m & bit))
                        continue;
                    out[dst.rank(m | bit)] += t.sign * wedge_sign(bit, m) * g[axis] * vb[rank];
                }
            }
        }
    };
    return Form::from_evaluator(n, r + 1, eval, nullptr, "d(glue)");
}

Form glue_form(std::shared_ptr<const CoverContext> ctx, GlueTerms terms, int n, int r)
{
    if (terms->empty())
        return Form::zero(n, r);
    const int size = binomial(n, r);
    auto eval = [ctx, terms, size](std::span<const double> x, std::span<double> out) {
        for (int i = 0; i < size; ++i)
            out[i] = 0.0;
        CoeffBuffer vb;
        for (const auto& t : *terms) {
            double rho = t.rho.evaluate(x);
            if (rho == 0.0)
                continue;
            auto y = ctx->cover.lift(x, t.chart);
            t.beta.evaluate(y, vb);
            for (int i = 0; i < size; ++i)
                out[i] += t.sign * rho * vb[i];
        }
    };
    auto derivative = [ctx, terms, n, r]() { return glue_derivative(ctx, terms, n, r); };
    return Form::from_evaluator(n, r, eval, derivative, "glue");
}

} // namespace

std::shared_ptr<const CoverContext> make_context(Cover cover, int max_length)
{
    auto nc = nerve(cover, max_length);
    return std::make_shared<const CoverContext>(CoverContext{std::move(cover), std::move(nc)});
}

BicomplexElement::BicomplexElement(std::shared_ptr<const CoverContext> ctx, int degree, int cech,
                                   std::vector<Form> components)
    : ctx_(std::move(ctx)), degree_(degree), cech_(cech), components_(std::move(components))
{
    if (!ctx_)
        throw InvalidArgument("bicomplex element needs a cover");
    if (cech_ < 0)
        throw InvalidArgument("negative Čech degree");
    if (cech_ > 0 && !ctx_->nerve.knows_length(cech_))
        throw InvalidArgument("nerve was not enumerated up to tuples of length " + std::to_string(cech_));
    if (components_.size() != tuples().size())
        throw DimensionMismatch("component count differs from the number of nerve tuples");
    for (const auto& f : components_)
        if (f.dim() != ctx_->cover.dim() || f.degree() != degree_)
            throw DimensionMismatch("bicomplex component has the wrong shape");
}

BicomplexElement BicomplexElement::zero(std::shared_ptr<const CoverContext> ctx, int degree, int cech)
{
    std::size_t count = cech == 0 ? 1 : ctx->nerve.simplices(cech - 1).size();
    int n = ctx->cover.dim();
    return BicomplexElement(ctx, degree, cech, std::vector<Form>(count, Form::zero(n, degree)));
}

BicomplexElement BicomplexElement::constants(std::shared_ptr<const CoverContext> ctx, int cech,
                                             const std::vector<double>& values)
{
    std::vector<Form> comps;
    int n = ctx->cover.dim();
    for (double v : values)
        comps.push_back(Form::constant(n, v));
    return BicomplexElement(ctx, 0, cech, std::move(comps));
}

const std::vector<Tuple>& BicomplexElement::tuples() const
{
    static const std::vector<Tuple> global{Tuple{}};
    if (cech_ == 0)
        return global;
    return ctx_->nerve.simplices(cech_ - 1);
}

ConvexDomain BicomplexElement::domain(int k) const
{
    if (cech_ == 0)
        return ctx_->cover.geometry().fundamental_domain();
    auto d = ctx_->cover.intersection(tuples().at(k));
    if (!d)
        throw Error("internal", "nerve tuple with empty intersection");
    return *d;
}

Form BicomplexElement::component(const Tuple& I) const
{
    const int n = ctx_->cover.dim();
    if (static_cast<int>(I.size()) != cech_)
        throw InvalidArgument("tuple length differs from the Čech degree");
    if (cech_ == 0)
        return components_.front();
    std::vector<int> sorted;
    int sign = canonicalize(I, sorted);
    if (sign == 0)
        return Form::zero(n, degree_);
    int k = ctx_->nerve.index(sorted);
    if (k < 0)
        return Form::zero(n, degree_);
    return sign == 1 ? components_[k] : -1.0 * components_[k];
}

Form BicomplexElement::restricted(const Tuple& K, const Tuple& J) const
{
    Form f = component(K);
    if (cech_ == 0 || f.is_zero())
        return f;
    std::vector<int> sorted;
    canonicalize(K, sorted);
    return f.translated(ctx_->cover.chart_shift(J, sorted.front()));
}

BicomplexElement BicomplexElement::d() const
{
    std::vector<Form> out;
    for (const auto& f : components_)
        out.push_back(f.d());
    return BicomplexElement(ctx_, degree_ + 1, cech_, std::move(out));
}

namespace {

BicomplexElement combine(double a, const BicomplexElement& x, double b, const BicomplexElement& y)
{
    if (x.context() != y.context() || x.degree() != y.degree() || x.cech() != y.cech())
        throw DimensionMismatch("combining bicomplex elements of different type");
    std::vector<Form> out;
    for (int k = 0; k < x.size(); ++k)
        out.push_back(linear_combination({{a, x.component(k)}, {b, y.component(k)}}));
    return BicomplexElement(x.context(), x.degree(), x.cech(), std::move(out));
}

} // namespace

BicomplexElement operator+(const BicomplexElement& a, const BicomplexElement& b) { return combine(1.0, a, 1.0, b); }
BicomplexElement operator-(const BicomplexElement& a, const BicomplexElement& b) { return combine(1.0, a, -1.0, b); }
BicomplexElement operator*(double s, const BicomplexElement& a)
{
    std::vector<Form> out;
    for (const auto& f : a.components())
        out.push_back(s * f);
    return BicomplexElement(a.context(), a.degree(), a.cech(), std::move(out));
}

BicomplexElement restrict_global(const Form& omega, std::shared_ptr<const CoverContext> ctx)
{
    if (omega.dim() != ctx->cover.dim())
        throw DimensionMismatch("form and cover dimensions differ");
    return cech_delta(BicomplexElement(ctx, omega.degree(), 0, {omega}));
}

BicomplexElement cech_delta(const BicomplexElement& alpha)
{
    const auto& ctx = alpha.context();
    const int s = alpha.cech();
    if (s == 0) {
        std::vector<Form> out(ctx->cover.size(), alpha.component(0));
        return BicomplexElement(ctx, alpha.degree(), 1, std::move(out));
    }
    const auto& level = ctx->nerve.simplices(s);
    std::vector<Form> out;
    for (const auto& J : level) {
        std::vector<std::pair<double, Form>> terms;
        for (std::size_t t = 0; t < J.size(); ++t) {
            Tuple K;
            for (std::size_t k = 0; k < J.size(); ++k)
                if (k != t)
                    K.push_back(J[k]);
            terms.emplace_back(t % 2 == 0 ? 1.0 : -1.0, alpha.restricted(K, J));
        }
        out.push_back(linear_combination(terms));
    }
    return BicomplexElement(ctx, alpha.degree(), s + 1, std::move(out));
}

double cover_lp_norm(const Form& omega, const ConvexDomain& domain, const Cover& cover, double p,
                     const QuadratureSpec& quad)
{
    if (cover.is_star() || domain.kind() != ConvexDomain::Kind::Box)
        return lp_norm(omega, domain, p, quad);
    if (omega.is_zero())
        return 0.0;
    const int n = domain.dim();
    const bool torus = cover.geometry().kind() == Geometry::Kind::Torus;
    std::vector<std::vector<double>> breaks(n);
    for (int i = 0; i < n; ++i) {
        auto& b = breaks[i];
        b = {domain.lo()[i], domain.hi()[i]};
        auto add = [&](double v) {
            for (int k = torus ? -2 : 0; k <= (torus ? 2 : 0); ++k)
                if (v + k > domain.lo()[i] + 1e-14 && v + k < domain.hi()[i] - 1e-14)
                    b.push_back(v + k);
        };
        for (int j = 0; j < cover.size(); ++j) {
            add(cover.piece(j).lo()[i]);
            add(cover.piece(j).hi()[i]);
            add(cover.core(j).lo()[i]);
            add(cover.core(j).hi()[i]);
        }
        std::sort(b.begin(), b.end());
        b.erase(std::unique(b.begin(), b.end(), [](double x, double y) { return std::abs(x - y) < 1e-14; }),
                b.end());
    }
    QuadratureSpec sub = quad;
    sub.panels = 1;
    std::vector<double> parts;
    std::vector<int> cell(n, 0);
    while (true) {
        std::vector<double> lo(n), hi(n);
        for (int i = 0; i < n; ++i) {
            lo[i] = breaks[i][cell[i]];
            hi[i] = breaks[i][cell[i] + 1];
        }
        parts.push_back(lp_power_integral(omega, ConvexDomain::box(lo, hi), p, sub));
        int i = n - 1;
        while (i >= 0 && ++cell[i] == static_cast<int>(breaks[i].size()) - 1) {
            cell[i] = 0;
            --i;
        }
        if (i < 0)
            break;
    }
    double s = pairwise_sum(parts);
    return std::pow(s, 1.0 / p);
}

double bicomplex_lp_norm(const BicomplexElement& alpha, double p, const QuadratureSpec& quad)
{
    std::vector<double> parts;
    for (int k = 0; k < alpha.size(); ++k)
        parts.push_back(cover_lp_norm(alpha.component(k), alpha.domain(k), alpha.cover(), p, quad));
    return pairwise_sum(parts);
}

double bicomplex_max_abs(const BicomplexElement& alpha, int per_tuple, std::uint64_t seed)
{
    double worst = 0.0;
    for (int k = 0; k < alpha.size(); ++k) {
        const auto& f = alpha.component(k);
        if (f.is_zero())
            continue;
        auto pts = alpha.domain(k).probes(per_tuple, seed);
        worst = std::max(worst, max_abs_difference(f, Form::zero(f.dim(), f.degree()), pts));
    }
    return worst;
}

PartitionOfUnity partition_of_unity(const Cover& cover, int grid_per_axis)
{
    PartitionOfUnity pou;
    const int n = cover.dim();
    const int N = cover.size();
    if (cover.is_star()) {
        const auto& simplex = cover.geometry().fundamental_domain();
        std::vector<double> origin(n, 0.0);
        auto l0 = simplex.barycentric(origin);
        std::vector<std::vector<double>> le;
        for (int k = 0; k < n; ++k) {
            std::vector<double> e(n, 0.0);
            e[k] = 1.0;
            le.push_back(simplex.barycentric(e));
        }
        for (int i = 0; i < N; ++i) {
            Polynomial p = Polynomial::constant(n, l0[i]);
            for (int k = 0; k < n; ++k)
                p += (le[k][i] - l0[i]) * Polynomial::variable(n, k);
            pou.rho.emplace_back(p);
        }
    } else {
        auto shared = std::make_shared<const Cover>(cover);
        std::vector<Bump> bumps;
        for (int j = 0; j < N; ++j) {
            const auto& core = cover.core(j);
            const auto& piece = cover.piece(j);
            bumps.push_back(Bump{core.lo(), core.hi(), piece.lo(), piece.hi()});
        }
        auto all = std::make_shared<const std::vector<Bump>>(std::move(bumps));
        for (int j = 0; j < N; ++j) {
            auto value = [shared, all, j, N](std::span<const double> x) {
                double own = (*all)[j].evaluate(shared->lift(x, j));
                if (own == 0.0)
                    return 0.0;
                double sum = 0.0;
                for (int k = 0; k < N; ++k)
                    sum += k == j ? own : (*all)[k].evaluate(shared->lift(x, k));
                return own / sum;
            };
            auto gradient = [shared, all, j, N, n](std::span<const double> x, std::span<double> g) {
                auto xj = shared->lift(x, j);
                double own = (*all)[j].evaluate(xj);
                double gown[kMaxDim], gk[kMaxDim], gsum[kMaxDim] = {};
                (*all)[j].gradient(xj, {gown, static_cast<std::size_t>(n)});
                bool flat = own == 0.0;
                for (int i = 0; i < n; ++i)
                    flat = flat && gown[i] == 0.0;
                if (flat) {
                    for (int i = 0; i < n; ++i)
                        g[i] = 0.0;
                    return;
                }
                double sum = 0.0;
                for (int k = 0; k < N; ++k) {
                    auto xk = shared->lift(x, k);
                    sum += (*all)[k].evaluate(xk);
                    (*all)[k].gradient(xk, {gk, static_cast<std::size_t>(n)});
                    for (int i = 0; i < n; ++i)
                        gsum[i] += gk[i];
                }
                for (int i = 0; i < n; ++i)
                    g[i] = (gown[i] * sum - own * gsum[i]) / (sum * sum);
            };
            pou.rho.push_back(ScalarField::closure(n, value, gradient, "rho" + std::to_string(j)));
        }
    }
    // Positivity of the normalizer and sup |dρ| on a grid of the fundamental domain.
    auto fundamental = cover.geometry().fundamental_domain();
    std::vector<double> pts;
    if (cover.is_star()) {
        pts = fundamental.probes(grid_per_axis * grid_per_axis, kProbeSeed);
    } else {
        long total = 1;
        for (int i = 0; i < n; ++i)
            total *= grid_per_axis;
        pts.resize(total * n);
        for (long idx = 0; idx < total; ++idx) {
            long rest = idx;
            for (int i = n - 1; i >= 0; --i) {
                long k = rest % grid_per_axis;
                rest /= grid_per_axis;
                pts[idx * n + i] = fundamental.lo()[i] +
                                   (k + 0.5) / grid_per_axis * (fundamental.hi()[i] - fundamental.lo()[i]);
            }
        }
    }
    double g[kMaxDim];
    for (std::size_t k = 0; k < pts.size(); k += n) {
        std::span<const double> x(pts.data() + k, n);
        double sum = 0.0;
        for (int j = 0; j < N; ++j) {
            sum += pou.rho[j].evaluate(x);
            pou.rho[j].gradient(x, {g, static_cast<std::size_t>(n)});
            double s = 0.0;
            for (int i = 0; i < n; ++i)
                s += g[i] * g[i];
            pou.max_gradient = std::max(pou.max_gradient, std::sqrt(s));
        }
        if (!(std::abs(sum - 1.0) < 1e-9)) {
            std::ostringstream os;
            os << "partition of unity fails at (";
            for (int i = 0; i < n; ++i)
                os << (i ? "," : "") << x[i];
            os << "): sum " << sum << " (coverage hole)";
            throw DomainError(os.str());
        }
    }
    return pou;
}

BicomplexElement glue(const BicomplexElement& beta, const PartitionOfUnity& pou, const GlueOptions& opts)
{
    const auto& ctx = beta.context();
    const int s = beta.cech();
    const int n = ctx->cover.dim();
    const int N = ctx->cover.size();
    if (s < 1)
        throw InvalidArgument("glue needs Čech degree at least 1");
    if (static_cast<int>(pou.rho.size()) != N)
        throw DimensionMismatch("partition of unity does not match the cover");
    if (opts.check_closed && ctx->nerve.knows_length(s + 1)) {
        auto db = cech_delta(beta);
        for (int k = 0; k < db.size(); ++k) {
            const auto& f = db.component(k);
            if (f.is_zero())
                continue;
            auto pts = db.domain(k).probes(opts.probes_per_tuple, kProbeSeed);
            double res = max_abs_difference(f, Form::zero(n, f.degree()), pts);
            if (res > opts.tol)
                throw VerificationFailure("δβ ≠ 0 on " + tuple_string(db.tuples()[k]) + " (residual " +
                                              std::to_string(res) + ")",
                                          res);
        }
    }
    BicomplexElement target = BicomplexElement::zero(ctx, beta.degree(), s - 1);
    std::vector<Form> out;
    for (const auto& I : target.tuples()) {
        auto terms = std::make_shared<std::vector<GlueTerm>>();
        for (int j = 0; j < N; ++j) {
            Tuple J{j};
            J.insert(J.end(), I.begin(), I.end());
            std::vector<int> sorted;
            int sign = canonicalize(J, sorted);
            if (sign == 0 || !ctx->nerve.contains(sorted))
                continue;
            Form b = beta.component(sorted);
            if (b.is_zero())
                continue;
            terms->push_back(GlueTerm{pou.rho[j], b, static_cast<double>(sign), sorted.front()});
        }
        out.push_back(glue_form(ctx, terms, n, beta.degree()));
    }
    return BicomplexElement(ctx, beta.degree(), s - 1, std::move(out));
}

GlueReport glue_report(const BicomplexElement& alpha, const BicomplexElement& beta,
                       const PartitionOfUnity& pou, double p, const QuadratureSpec& quad)
{
    GlueReport r;
    r.norm_alpha = bicomplex_lp_norm(alpha, p, quad);
    r.norm_beta = bicomplex_lp_norm(beta, p, quad);
    r.norm_dalpha = bicomplex_lp_norm(alpha.d(), p, quad);
    r.norm_dbeta = bicomplex_lp_norm(beta.d(), p, quad);
    r.ratio = r.norm_beta > 0.0 ? r.norm_alpha / r.norm_beta : 0.0;
    double denom = r.norm_beta + r.norm_dbeta;
    r.derivative_ratio = denom > 0.0 ? r.norm_dalpha / denom : 0.0;
    r.c_pou = pou.c_pou();
    return r;
}

} // namespace pf
