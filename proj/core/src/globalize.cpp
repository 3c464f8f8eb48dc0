#include "pf/globalize.hpp"

#include "pf/constants.hpp"
#include "pf/error.hpp"
#include "pf/homotopy.hpp"

#include <Eigen/Dense>

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

double grid_norm(const Form& f, const std::vector<double>& grid, int n, double p, double volume)
{
    std::vector<double> terms;
    for (std::size_t k = 0; k < grid.size(); k += n) {
        double a = f.pointwise_norm({grid.data() + k, static_cast<std::size_t>(n)});
        terms.push_back(std::pow(a, p));
    }
    double mean = pairwise_sum(terms) / static_cast<double>(terms.size());
    return std::pow(mean * volume, 1.0 / p);
}

} // namespace

int int_sign(int r) { return ((r + 1) / 2) % 2 == 0 ? 1 : -1; }
int int_sign_unshifted(int r) { return (r / 2) % 2 == 0 ? 1 : -1; }

std::vector<double> geometry_probe_grid(const Geometry& geometry, int count)
{
    auto dom = geometry.fundamental_domain();
    const int n = geometry.dim();
    if (geometry.kind() == Geometry::Kind::Simplex)
        return dom.probes(count, kProbeSeed);
    int per_axis = std::max(1, static_cast<int>(std::lround(std::pow(count, 1.0 / n))));
    long total = 1;
    for (int i = 0; i < n; ++i)
        total *= per_axis;
    std::vector<double> pts(total * n);
    for (long idx = 0; idx < total; ++idx) {
        long rest = idx;
        for (int i = n - 1; i >= 0; --i) {
            long k = rest % per_axis;
            rest /= per_axis;
            pts[idx * n + i] = dom.lo()[i] + (k + 0.5) / per_axis * (dom.hi()[i] - dom.lo()[i]);
        }
    }
    return pts;
}

XiCascade xi_cascade(const Form& omega, std::shared_ptr<const CoverContext> ctx, const GlobalizeOptions& opts)
{
    const auto& cover = ctx->cover;
    const int n = cover.dim();
    const int r = omega.degree();
    if (omega.dim() != n)
        throw DimensionMismatch("form and cover dimensions differ");
    if (r < 1)
        throw InvalidArgument("the cascade needs a form of degree at least 1");
    auto pair = admissible_exponents(opts.p, opts.q, n);
    if (pair.kind == ExponentCase::Inadmissible)
        throw InvalidArgument("inadmissible exponents: " + pair.violated);
    auto fundamental = cover.geometry().fundamental_domain();
    double closed = closedness_residual(omega, fundamental);
    if (closed > kClosednessTol)
        throw VerificationFailure("input form is not closed", closed);
    if (!ctx->nerve.knows_length(r + 1))
        throw InvalidArgument("nerve not enumerated up to tuples of length " + std::to_string(r + 1));

    XiCascade out;
    out.omega_norm = cover_lp_norm(omega, fundamental, cover, opts.q, opts.quad);
    BicomplexElement target = restrict_global(omega, ctx);
    double prev_norm = out.omega_norm;
    for (int s = 0; s < r; ++s) {
        if (s > 0)
            target = cech_delta(out.xi.back());
        std::vector<Form> comps;
        for (int k = 0; k < target.size(); ++k) {
            auto dom = target.domain(k);
            const Form& f = target.component(k);
            if (opts.average)
                comps.push_back(averaged_homotopy(dom, f, opts.quad, opts.t_order));
            else
                comps.push_back(cone_operator(dom.distinguished_point(), f, opts.t_order));
        }
        BicomplexElement xi(ctx, r - s - 1, s + 1, std::move(comps));
        CascadeLevel level;
        level.s = s;
        level.form_degree = r - s - 1;
        // Level 0 is measured in L^p against ‖ω‖_q; deeper levels chain L^p.
        level.norm = bicomplex_lp_norm(xi, opts.p, opts.quad);
        level.ratio = prev_norm > 0.0 ? level.norm / prev_norm : 0.0;
        for (int k = 0; k < xi.size(); ++k) {
            auto pts = xi.domain(k).probes(opts.cascade_probes, kProbeSeed);
            level.identity_residual =
                std::max(level.identity_residual, max_abs_difference(xi.component(k).d(), target.component(k), pts));
        }
        if (level.identity_residual > opts.cascade_tol)
            throw VerificationFailure("cascade identity dξ^" + std::to_string(s) + " = δξ^" + std::to_string(s - 1) +
                                          " fails",
                                      level.identity_residual);
        out.levels.push_back(level);
        out.xi.push_back(std::move(xi));
        if (s + 1 < r)
            prev_norm = bicomplex_lp_norm(cech_delta(out.xi.back()), opts.p, opts.quad);
    }
    return out;
}

IntCocycle int_cocycle(const XiCascade& cascade, const GlobalizeOptions& opts)
{
    if (cascade.xi.empty())
        throw InvalidArgument("empty cascade");
    const auto& last = cascade.xi.back();
    const int r = static_cast<int>(cascade.xi.size());
    auto top = cech_delta(last);
    IntCocycle out;
    out.r = r;
    out.sign = int_sign(r);
    out.tuples = top.tuples();
    for (int k = 0; k < top.size(); ++k) {
        auto dom = top.domain(k);
        const Form& f = top.component(k);
        double v = f.values(dom.distinguished_point())[0];
        auto pts = dom.probes(16, kProbeSeed);
        double spread = 0.0;
        for (std::size_t i = 0; i < pts.size(); i += f.dim())
            spread = std::max(spread, std::abs(f.values({pts.data() + i, static_cast<std::size_t>(f.dim())})[0] - v));
        out.spread = std::max(out.spread, spread);
        if (spread > opts.constancy_tol * std::max(1.0, std::abs(v)))
            throw VerificationFailure("(δξ^{r-1}) is not constant on " + tuple_string(out.tuples[k]), spread);
        out.raw.push_back(v);
        out.values.push_back(out.sign * v);
    }
    return out;
}

std::vector<CyclePairing> pair_with_cycles(const NerveComplex& nerve, int r, const std::vector<double>& cochain,
                                           const std::vector<std::vector<long>>& cycles)
{
    std::vector<CyclePairing> out;
    const auto& tuples = nerve.simplices(r);
    for (const auto& z : cycles) {
        CyclePairing p;
        std::vector<double> terms;
        for (std::size_t k = 0; k < z.size(); ++k) {
            if (z[k] == 0)
                continue;
            p.tuples.push_back(tuples[k]);
            p.coefficients.push_back(z[k]);
            terms.push_back(static_cast<double>(z[k]) * cochain[k]);
        }
        p.value = pairwise_sum(terms);
        out.push_back(std::move(p));
    }
    return out;
}

CocycleConstants cocycle_constants(const XiCascade& cascade, const IntCocycle& cocycle, const GlobalizeOptions& opts)
{
    const auto& ctx = cascade.xi.back().context();
    const auto& nerve = ctx->nerve;
    const int r = cocycle.r;
    CocycleConstants out;
    out.tuples = nerve.simplices(r - 1);
    const int cols = static_cast<int>(out.tuples.size());
    const int rows = static_cast<int>(cocycle.raw.size());
    out.c.assign(cols, 0.0);
    Eigen::VectorXd b(rows);
    for (int i = 0; i < rows; ++i)
        b(i) = cocycle.raw[i];
    out.rhs_norm = b.norm();
    if (rows == 0 || cols == 0)
        return out;
    // (δc)_J = Σ_t (-1)^t c_{J \ j_t}: the transpose of ∂_r.
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(rows, cols);
    for (const auto& e : nerve.boundary(r))
        A(e.col, e.row) = e.value;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    double cutoff = sv.size() ? opts.svd_cutoff * sv(0) : 0.0;
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(sv.size());
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > cutoff) {
            inv(i) = 1.0 / sv(i);
            ++out.rank;
        }
    Eigen::MatrixXd pinv = svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
    Eigen::VectorXd c = pinv * b;
    for (int j = 0; j < cols; ++j)
        out.c[j] = c(j);
    out.residual = (A * c - b).norm();
    out.obstructed = out.residual > opts.obstruction_rel_tol * out.rhs_norm;
    if (opts.materialize_b)
        for (int j = 0; j < cols; ++j) {
            std::vector<double> row(rows);
            for (int i = 0; i < rows; ++i)
                row[i] = pinv(j, i);
            out.b_rows.push_back(std::move(row));
        }
    if (out.obstructed)
        out.pairings = pair_with_cycles(nerve, r, cocycle.values, nerve.homology_basis(r));
    return out;
}

Descent x_descent(const XiCascade& cascade, const CocycleConstants& constants, const PartitionOfUnity& pou,
                  const GlobalizeOptions& opts)
{
    if (constants.obstructed)
        throw InvalidArgument("descent needs solvable cocycle constants");
    const int r = static_cast<int>(cascade.xi.size());
    const auto& ctx = cascade.xi.back().context();
    Descent out;
    GlueOptions gopts;
    gopts.tol = opts.cascade_tol;
    for (int t = 1; t <= r; ++t) {
        const auto& xi = cascade.xi[r - t];
        BicomplexElement beta = t == 1 ? xi - BicomplexElement::constants(ctx, r, constants.c)
                                       : xi - out.x.back().d();
        BicomplexElement x = [&] {
            try {
                return glue(beta, pou, gopts);
            } catch (const VerificationFailure& e) {
                throw VerificationFailure("descent step x^" + std::to_string(r - t) + ": " + e.what(), e.residual());
            }
        }();
        DescentStep step;
        step.level = r - t;
        step.glue = glue_report(x, beta, pou, opts.p, opts.quad);
        step.norm_input = step.glue.norm_beta;
        step.norm_x = step.glue.norm_alpha;
        step.norm_dx = step.glue.norm_dalpha;
        out.steps.push_back(step);
        out.inputs.push_back(std::move(beta));
        out.x.push_back(std::move(x));
    }
    return out;
}

GlobalResult global_primitive(const Form& omega, std::shared_ptr<const CoverContext> ctx, const GlobalizeOptions& opts)
{
    const auto& cover = ctx->cover;
    const int n = cover.dim();
    const int r = omega.degree();
    GlobalResult result;
    auto& rep = result.report;
    rep.r = r;
    rep.cover_pieces = cover.size();
    rep.multiplicity = ctx->nerve.levels();
    auto cascade = xi_cascade(omega, ctx, opts);
    rep.C_local = poincare_constant_C(opts.p, opts.q, r - 1, n);
    for (const auto& piece : cover.pieces())
        rep.max_piece_constant = std::max(rep.max_piece_constant, theorem_constant_c(opts.p, opts.q, r - 1, piece));
    for (const auto& L : ctx->nerve.simplices(r)) {
        auto vl = cover.intersection(L)->volume();
        for (std::size_t t = 0; t < L.size(); ++t) {
            Tuple I;
            for (std::size_t k = 0; k < L.size(); ++k)
                if (k != t)
                    I.push_back(L[k]);
            rep.max_volume_ratio = std::max(rep.max_volume_ratio, cover.intersection(I)->volume() / vl);
        }
    }

    rep.cascade = cascade.levels;
    rep.norm_omega = cascade.omega_norm;
    auto cocycle = int_cocycle(cascade, opts);
    rep.int_values = cocycle.values;
    auto constants = cocycle_constants(cascade, cocycle, opts);
    rep.c_residual = constants.residual;
    {
        double s = 0.0;
        for (double v : constants.c)
            s += v * v;
        rep.c_norm = std::sqrt(s);
    }
    if (constants.obstructed) {
        rep.status = "obstructed";
        rep.pairings = constants.pairings;
        result.cascade = std::move(cascade);
        return result;
    }

    auto pou = partition_of_unity(cover);
    rep.c_pou = pou.c_pou();
    auto descent = x_descent(cascade, constants, pou, opts);
    rep.descent = descent.steps;
    Form xi = descent.x.back().component(0);

    auto fundamental = cover.geometry().fundamental_domain();
    auto grid = geometry_probe_grid(cover.geometry(), opts.residual_probes);
    rep.residual_probes = static_cast<int>(grid.size() / n);
    rep.residual = max_abs_difference(xi.d(), omega, grid);
    rep.status = "exact-solved";
    if (rep.residual > opts.residual_tol)
        throw VerificationFailure("final residual max|dξ-ω| exceeds tolerance", rep.residual);

    rep.norm_xi = descent.steps.back().norm_x;
    rep.ratio = rep.norm_omega > 0.0 ? rep.norm_xi / rep.norm_omega : 0.0;
    double vol = fundamental.volume();
    double grid_omega = grid_norm(omega, grid, n, opts.q, vol);
    rep.measured_ratio = grid_omega > 0.0 ? grid_norm(xi, grid, n, opts.p, vol) / grid_omega : 0.0;

    // Telescoping factors: ξ^0 against ω, the last glue input against ξ^0,
    // and the glued ξ against that input.
    double xi0 = cascade.levels.front().norm;
    double last_in = descent.steps.back().norm_input;
    rep.ledger.push_back({"xi0_over_omega", rep.norm_omega > 0.0 ? xi0 / rep.norm_omega : 0.0});
    rep.ledger.push_back({"glue_input_over_xi0", xi0 > 0.0 ? last_in / xi0 : 0.0});
    rep.ledger.push_back({"xi_over_glue_input", last_in > 0.0 ? rep.norm_xi / last_in : 0.0});
    rep.ledger_product = 1.0;
    for (const auto& f : rep.ledger)
        rep.ledger_product *= f.value;

    result.xi = xi;
    result.cascade = std::move(cascade);
    return result;
}

} // namespace pf
