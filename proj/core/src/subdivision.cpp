#include "pf/subdivision.hpp"

#include "pf/error.hpp"
#include "pf/multi_index.hpp"
#include "pf/quadrature.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace pf {

namespace {

std::vector<std::vector<double>> to_double(const std::vector<std::vector<Rational>>& pts)
{
    std::vector<std::vector<double>> out;
    out.reserve(pts.size());
    for (const auto& p : pts) {
        std::vector<double> q;
        for (const auto& c : p)
            q.push_back(static_cast<double>(c));
        out.push_back(std::move(q));
    }
    return out;
}

std::vector<int> iota_vec(int n)
{
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

// Determinant by Gaussian elimination with partial pivoting (k <= 6).
double small_det(std::vector<double> a, int k)
{
    double det = 1.0;
    for (int c = 0; c < k; ++c) {
        int piv = c;
        for (int r = c + 1; r < k; ++r)
            if (std::abs(a[r * k + c]) > std::abs(a[piv * k + c]))
                piv = r;
        if (a[piv * k + c] == 0.0)
            return 0.0;
        if (piv != c) {
            for (int j = 0; j < k; ++j)
                std::swap(a[c * k + j], a[piv * k + j]);
            det = -det;
        }
        det *= a[c * k + c];
        for (int r = c + 1; r < k; ++r) {
            double f = a[r * k + c] / a[c * k + c];
            for (int j = c; j < k; ++j)
                a[r * k + j] -= f * a[c * k + j];
        }
    }
    return det;
}

Tuple tuple_of(const ParentSimplex& sigma, const std::vector<int>& sel)
{
    Tuple t;
    for (int s : sel)
        t.push_back(sigma.ids.at(s));
    return t;
}

} // namespace

std::vector<std::vector<double>> OrderedSimplex::points_double() const { return to_double(points); }

SubdivisionChain SubdivisionChain::canonical() const
{
    // Key: sorted vertex list; value: accumulated coefficient relative to it.
    std::map<std::vector<std::vector<Rational>>, std::pair<long, OrderedSimplex>> acc;
    for (const auto& [c, s] : terms) {
        std::vector<int> order = iota_vec(static_cast<int>(s.points.size()));
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return s.points[a] < s.points[b]; });
        OrderedSimplex sorted;
        for (int k : order) {
            sorted.points.push_back(s.points[k]);
            sorted.faces.push_back(s.faces[k]);
        }
        long sgn = permutation_sign(order);
        auto [it, fresh] = acc.try_emplace(sorted.points, 0L, sorted);
        it->second.first += sgn * c;
    }
    SubdivisionChain out;
    for (auto& [key, val] : acc)
        if (val.first != 0)
            out.terms.push_back(val);
    return out;
}

bool SubdivisionChain::operator==(const SubdivisionChain& o) const
{
    auto a = canonical();
    auto b = o.canonical();
    if (a.terms.size() != b.terms.size())
        return false;
    for (size_t k = 0; k < a.terms.size(); ++k)
        if (a.terms[k].first != b.terms[k].first || !(a.terms[k].second == b.terms[k].second))
            return false;
    return true;
}

SubdivisionChain SubdivisionChain::operator-() const
{
    SubdivisionChain out = *this;
    for (auto& t : out.terms)
        t.first = -t.first;
    return out;
}

ParentSimplex ParentSimplex::standard(int r)
{
    if (r < 1 || r > kMaxDim)
        throw InvalidArgument("simplex dimension out of range");
    ParentSimplex s;
    s.ids = iota_vec(r + 1);
    for (int i = 0; i <= r; ++i) {
        std::vector<Rational> p(r, Rational(0));
        if (i > 0)
            p[i - 1] = 1;
        s.positions.push_back(std::move(p));
    }
    return s;
}

ParentSimplex ParentSimplex::from_points(const std::vector<std::vector<double>>& points)
{
    if (points.size() < 2)
        throw InvalidArgument("a simplex needs at least two vertices");
    ParentSimplex s;
    s.ids = iota_vec(static_cast<int>(points.size()));
    for (const auto& p : points) {
        if (p.size() + 1 != points.size())
            throw DimensionMismatch("simplex vertices must lie in R^r");
        std::vector<Rational> q;
        for (double c : p)
            q.push_back(to_rational(c));
        s.positions.push_back(std::move(q));
    }
    return s;
}

std::vector<std::vector<double>> ParentSimplex::positions_double() const { return to_double(positions); }

std::vector<Rational> barycenter(const ParentSimplex& sigma, const std::vector<int>& sel)
{
    if (sel.empty())
        throw InvalidArgument("empty face");
    std::vector<Rational> b(sigma.positions.at(0).size(), Rational(0));
    for (int s : sel)
        for (size_t c = 0; c < b.size(); ++c)
            b[c] += sigma.positions.at(s)[c];
    for (auto& c : b)
        c /= static_cast<int>(sel.size());
    return b;
}

OrderedSimplex sd_simplex(const ParentSimplex& sigma, const std::vector<int>& seq, int t)
{
    const int len = static_cast<int>(seq.size());
    if (t < 1 || t > len)
        throw InvalidArgument("Sd_t: t out of range");
    OrderedSimplex out;
    for (int l = t; l <= len; ++l) {
        std::vector<int> prefix(seq.begin(), seq.begin() + l);
        out.points.push_back(barycenter(sigma, prefix));
        out.faces.push_back(tuple_of(sigma, prefix));
    }
    return out;
}

OrderedSimplex sd_chain(const ParentSimplex& sigma, const Permutation& J, int t)
{
    const int r = sigma.r();
    if (static_cast<int>(J.size()) != r + 1)
        throw InvalidArgument("Sd_t: J must be a permutation of {0..r}");
    if (t < 1 || t > r + 1)
        throw InvalidArgument("Sd_t: t must lie in 1..r");
    return sd_simplex(sigma, J, t);
}

int sign_of(const Permutation& J) { return permutation_sign(J); }

std::vector<Permutation> permutations_increasing_prefix(int r, int k)
{
    std::vector<Permutation> out;
    Permutation J = iota_vec(r + 1);
    do {
        bool ok = true;
        for (int a = 0; a < k && ok; ++a)
            ok = J[a] < J[a + 1];
        if (ok)
            out.push_back(J);
    } while (std::next_permutation(J.begin(), J.end()));
    return out;
}

BoundaryRepresentation boundary_representation(const ParentSimplex& sigma)
{
    const int r = sigma.r();
    BoundaryRepresentation rep;
    for (const auto& J : permutations_increasing_prefix(r, r - 1)) {
        std::vector<int> face(J.begin(), J.begin() + r);
        OrderedSimplex s;
        for (int v : face) {
            s.points.push_back(sigma.positions[v]);
            s.faces.push_back({sigma.ids[v]});
        }
        rep.lemma_chain.terms.emplace_back(sign_of(J), std::move(s));
    }
    for (int k = 0; k <= r; ++k) {
        OrderedSimplex s;
        for (int v = 0; v <= r; ++v) {
            if (v == k)
                continue;
            s.points.push_back(sigma.positions[v]);
            s.faces.push_back({sigma.ids[v]});
        }
        rep.standard_boundary.terms.emplace_back(k % 2 == 0 ? 1 : -1, std::move(s));
    }
    rep.equals_standard = rep.lemma_chain == rep.standard_boundary;
    rep.equals_negated = rep.lemma_chain == -rep.standard_boundary;
    rep.factor = rep.equals_standard ? 1 : (rep.equals_negated ? -1 : 0);
    return rep;
}

double boundary_cochain_residual(const BicomplexElement& xi, int factor, int probes)
{
    const auto& ctx = xi.context();
    const int r = xi.cech();
    Tuple full = iota_vec(r + 1);
    auto dom = ctx->cover.intersection(full);
    if (!dom)
        throw InvalidArgument("top tuple has empty intersection");
    BicomplexElement delta = cech_delta(xi);
    Form lhs = delta.component(full);
    std::vector<std::pair<double, Form>> acc;
    for (const auto& J : permutations_increasing_prefix(r, r - 1))
        acc.emplace_back(static_cast<double>(factor * sign_of(J)),
                         xi.component(Tuple(J.begin(), J.begin() + r)));
    Form rhs = linear_combination(acc);
    auto pts = dom->probes(probes, 0x5eed);
    return max_abs_difference(lhs, rhs, pts);
}

double integrate_over_simplex(const Form& omega, const std::vector<std::vector<double>>& points, int gm_s)
{
    const int k = static_cast<int>(points.size()) - 1;
    const int n = omega.dim();
    if (k < 0)
        throw InvalidArgument("empty simplex");
    if (omega.degree() != k)
        throw DimensionMismatch("form degree " + std::to_string(omega.degree()) +
                                " does not match simplex dimension " + std::to_string(k));
    for (const auto& p : points)
        if (static_cast<int>(p.size()) != n)
            throw DimensionMismatch("simplex vertex dimension differs from the form's chart");
    if (k == 0)
        return omega.values(points[0])[0];

    // Minors of the edge matrix, one per canonical multi-index.
    const auto& table = IndexTable::get(n, k);
    std::vector<double> minors(table.size());
    for (int rank = 0; rank < table.size(); ++rank) {
        const auto& idx = table.indices(rank);
        std::vector<double> m(k * k);
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b)
                m[a * k + b] = points[b + 1][idx[a]] - points[0][idx[a]];
        minors[rank] = small_det(std::move(m), k);
    }

    std::vector<double> ref((k + 1) * k, 0.0);
    for (int i = 1; i <= k; ++i)
        ref[i * k + (i - 1)] = 1.0;
    auto rule = grundmann_moller(ref, k, gm_s);
    std::vector<double> x(n);
    std::vector<double> vals(table.size());
    double total = 0.0;
    for (size_t q = 0; q < rule.weights.size(); ++q) {
        for (int c = 0; c < n; ++c) {
            x[c] = points[0][c];
            for (int b = 0; b < k; ++b)
                x[c] += rule.nodes[q * k + b] * (points[b + 1][c] - points[0][c]);
        }
        omega.evaluate(x, vals);
        double v = 0.0;
        for (int rank = 0; rank < table.size(); ++rank)
            v += vals[rank] * minors[rank];
        total += rule.weights[q] * v;
    }
    return total;
}

double integrate_over_boundary(const Form& omega, const std::vector<std::vector<double>>& points, int gm_s)
{
    double total = 0.0;
    for (size_t i = 0; i < points.size(); ++i) {
        auto face = points;
        face.erase(face.begin() + static_cast<long>(i));
        total += (i % 2 == 0 ? 1.0 : -1.0) * integrate_over_simplex(omega, face, gm_s);
    }
    return total;
}

namespace {

int floor_half_sign(int t) { return (t / 2) % 2 == 0 ? 1 : -1; }

double psi_impl(const Permutation& J, const ParentSimplex& sigma, const XiCascade& cascade, int gm_s,
                std::vector<FormulaTerm>* terms)
{
    const int r = sigma.r();
    if (static_cast<int>(cascade.xi.size()) < r)
        throw InvalidArgument("psi needs cascade levels 0..r-1");
    double total = 0.0;
    for (int t = 0; t <= r - 1; ++t) {
        double inner = 0.0;
        for (const auto& K : permutations_increasing_prefix(r - 1, t)) {
            std::vector<int> seq;
            for (int k : K)
                seq.push_back(J[k]);
            auto sd = sd_simplex(sigma, seq, t + 1);
            Tuple idx(seq.begin(), seq.begin() + t + 1);
            Form xi = cascade.xi[t].component(tuple_of(sigma, idx));
            double v = sign_of(K) * integrate_over_simplex(xi, sd.points_double(), gm_s);
            if (terms)
                terms->push_back({"psi", J, K, t, v});
            inner += v;
        }
        total += floor_half_sign(t) * inner;
    }
    return (r % 2 == 0 ? 1.0 : -1.0) * total;
}

} // namespace

double psi_term(const Permutation& J, const ParentSimplex& sigma, const XiCascade& cascade, int gm_s)
{
    return psi_impl(J, sigma, cascade, gm_s, nullptr);
}

XiCascade star_cascade(const Form& omega, const ParentSimplex& sigma)
{
    auto geom = Geometry::simplex(sigma.positions_double());
    auto ctx = make_context(Cover::star(geom), sigma.r() + 1);
    GlobalizeOptions opts;
    opts.quad.rule = "grundmann-moller";
    opts.quad.order = 4;
    return xi_cascade(omega, ctx, opts);
}

FormulaReport formula_identity_check(const Form& omega, const ParentSimplex& sigma, int m,
                                     const XiCascade& cascade, int gm_s)
{
    const int r = sigma.r();
    if (omega.degree() != r)
        throw DimensionMismatch("the form degree must equal the simplex dimension");
    if (m < 0 || m > r - 1)
        throw InvalidArgument("m must lie in 0..r-1");
    if (static_cast<int>(cascade.xi.size()) < r)
        throw InvalidArgument("cascade has fewer than r levels");
    if (cascade.xi[0].context()->cover.size() != r + 1)
        throw InvalidArgument("cascade was not built on the star cover of this simplex");

    FormulaReport rep;
    rep.m = m;
    rep.r = r;
    auto verts = sigma.positions_double();
    rep.lhs = integrate_over_simplex(omega, verts, gm_s);

    double first = 0.0;
    for (const auto& J : permutations_increasing_prefix(r, m)) {
        auto sd = sd_chain(sigma, J, m + 1);
        Tuple idx(J.begin(), J.begin() + m + 1);
        Form xi = cascade.xi[m].component(tuple_of(sigma, idx));
        double v = sign_of(J) * integrate_over_boundary(xi, sd.points_double(), gm_s);
        rep.terms.push_back({"boundary", J, {}, m, v});
        first += v;
    }
    double second = 0.0;
    for (const auto& J : permutations_increasing_prefix(r, r - 1)) {
        double inner = 0.0;
        for (int t = 0; t <= m - 1; ++t) {
            for (const auto& K : permutations_increasing_prefix(r - 1, t)) {
                std::vector<int> seq;
                for (int k : K)
                    seq.push_back(J[k]);
                auto sd = sd_simplex(sigma, seq, t + 1);
                Tuple idx(seq.begin(), seq.begin() + t + 1);
                Form xi = cascade.xi[t].component(tuple_of(sigma, idx));
                double v = sign_of(K) * integrate_over_simplex(xi, sd.points_double(), gm_s);
                rep.terms.push_back({"psi", J, K, t, v});
                inner += floor_half_sign(t) * v;
            }
        }
        second += sign_of(J) * inner;
    }
    rep.rhs = floor_half_sign(m + 1) * first + (r % 2 == 0 ? 1.0 : -1.0) * second;
    rep.gap = std::abs(rep.lhs - rep.rhs);

    // Closed-form version: top cascade level paired with σ at its barycenter.
    Tuple full = tuple_of(sigma, iota_vec(r + 1));
    BicomplexElement delta = cech_delta(cascade.xi[r - 1]);
    auto bary = to_double({barycenter(sigma, iota_vec(r + 1))})[0];
    rep.delta_xi = delta.component(full).values(bary)[0];
    double psi_sum = 0.0;
    for (const auto& J : permutations_increasing_prefix(r, r - 1))
        psi_sum += sign_of(J) * psi_impl(J, sigma, cascade, gm_s, nullptr);
    rep.period_gap_unshifted = std::abs(rep.lhs - (int_sign_unshifted(r) * rep.delta_xi + psi_sum));
    rep.period_gap = std::abs(rep.lhs - (int_sign(r) * rep.delta_xi + psi_sum));
    return rep;
}

namespace {

Permutation apply_Js(const Permutation& J, int t, int s)
{
    Permutation out = J;
    for (int l = s; l <= t; ++l)
        out[l] = J[l + 1];
    out[t + 1] = J[s];
    return out;
}

std::set<std::vector<Rational>> as_set(const OrderedSimplex& s)
{
    return {s.points.begin(), s.points.end()};
}

} // namespace

BijectionCheck check_f_correspondence(int r, int t)
{
    if (t < 0 || t > r - 1)
        throw InvalidArgument("t must lie in 0..r-1");
    BijectionCheck out;
    out.r = r;
    out.t = t;
    auto sigma = ParentSimplex::standard(r);
    auto codomain = permutations_increasing_prefix(r, t);
    std::set<Permutation> hit;
    out.signs_ok = true;
    for (const auto& J : permutations_increasing_prefix(r, t + 1)) {
        for (int s = 0; s <= t + 1; ++s) {
            ++out.domain_size;
            Permutation Js = apply_Js(J, t, s);
            hit.insert(Js);
            int expected = ((t - s + 1) % 2 == 0 ? 1 : -1) * sign_of(J);
            if (sign_of(Js) != expected)
                out.signs_ok = false;
            if (as_set(sd_chain(sigma, J, t + 2)) != as_set(sd_chain(sigma, Js, t + 2)))
                out.sets_ok = false;
        }
    }
    out.codomain_size = static_cast<int>(codomain.size());
    std::set<Permutation> cod(codomain.begin(), codomain.end());
    out.bijective = static_cast<int>(hit.size()) == out.domain_size && hit == cod;
    return out;
}

BijectionCheck check_h_correspondence(int r, int t)
{
    if (t < 0 || t > r - 1)
        throw InvalidArgument("t must lie in 0..r-1");
    BijectionCheck out;
    out.r = r;
    out.t = t;
    auto codomain = permutations_increasing_prefix(r, t);
    std::set<Permutation> hit;
    out.signs_ok = true;
    for (const auto& J : permutations_increasing_prefix(r, r - 1)) {
        for (const auto& K : permutations_increasing_prefix(r - 1, t)) {
            ++out.domain_size;
            Permutation img;
            for (int k : K)
                img.push_back(J[k]);
            img.push_back(J[r]);
            hit.insert(img);
            if (sign_of(K) * sign_of(J) != sign_of(img))
                out.signs_ok = false;
        }
    }
    out.codomain_size = static_cast<int>(codomain.size());
    std::set<Permutation> cod(codomain.begin(), codomain.end());
    out.bijective = static_cast<int>(hit.size()) == out.domain_size && hit == cod;
    return out;
}

} // namespace pf
