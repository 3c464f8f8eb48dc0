#include "pf/pullback.hpp"

#include "pf/error.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace pf {

const std::vector<ContractionEntry>& contraction_table(int n, int r)
{
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::vector<ContractionEntry>> cache;
    std::lock_guard lock(mutex);
    auto key = std::make_pair(n, r);
    auto it = cache.find(key);
    if (it != cache.end())
        return it->second;
    std::vector<ContractionEntry> table;
    if (r >= 1 && r <= n) {
        const auto& src = IndexTable::get(n, r);
        const auto& dst = IndexTable::get(n, r - 1);
        for (int rank = 0; rank < src.size(); ++rank) {
            const auto& idx = src.indices(rank);
            for (int k = 0; k < r; ++k) {
                IndexMask rest = src.mask(rank) & ~(IndexMask{1} << idx[k]);
                table.push_back({rank, dst.rank(rest), idx[k], (k % 2 == 0) ? 1 : -1});
            }
        }
    }
    return cache.emplace(key, std::move(table)).first->second;
}

PullbackSplit pullback_split(const Form& omega, std::span<const double> y)
{
    const int n = omega.dim();
    const int r = omega.degree();
    if (static_cast<int>(y.size()) != n)
        throw DimensionMismatch("base point dimension differs from the form's chart");
    if (n + 1 > kMaxDim)
        throw DimensionMismatch("pullback needs one extra variable beyond the supported dimension");
    PullbackSplit out;
    out.dim = n;
    out.degree = r;
    out.y.assign(y.begin(), y.end());
    const int m = n + 1;
    const int r1 = std::max(r - 1, 0);

    if (omega.is_zero() || r > n) {
        out.alpha0 = Form::zero(m, r);
        out.alpha1 = Form::zero(m, r1);
        return out;
    }

    const auto& table = IndexTable::get(n, r);
    if (omega.is_polynomial()) {
        Polynomial t = Polynomial::variable(m, n);
        std::vector<Polynomial> images;
        std::vector<Polynomial> radial;
        for (int i = 0; i < n; ++i) {
            Polynomial xi = Polynomial::variable(m, i);
            Polynomial yi = Polynomial::constant(m, y[i]);
            images.push_back(yi + t * (xi - yi));
            radial.push_back(xi - yi);
        }
        Polynomial tr = t.pow(r);
        Polynomial tr1 = t.pow(r1);
        std::vector<std::pair<std::vector<int>, ScalarField>> a0, a1;
        std::vector<Polynomial> pulled(table.size());
        for (int rank = 0; rank < table.size(); ++rank) {
            pulled[rank] = omega.terms()->at(rank).polynomial()->compose(images);
            a0.emplace_back(table.indices(rank), ScalarField(tr * pulled[rank]));
        }
        out.alpha0 = Form::from_terms(m, r, a0);
        if (r == 0) {
            out.alpha1 = Form::zero(m, 0);
            return out;
        }
        const auto& dst = IndexTable::get(n, r - 1);
        for (const auto& e : contraction_table(n, r))
            a1.emplace_back(dst.indices(e.target_rank),
                            ScalarField(static_cast<double>(e.sign) * (tr1 * radial[e.axis] * pulled[e.source_rank])));
        out.alpha1 = Form::from_terms(m, r - 1, a1);
        return out;
    }

    std::vector<double> base(y.begin(), y.end());
    auto pull_point = [n, base](std::span<const double> xt, PointBuffer& z) {
        const double t = xt[n];
        for (int i = 0; i < n; ++i)
            z[i] = base[i] + t * (xt[i] - base[i]);
    };
    // Coefficient positions of dx_I inside the (n+1)-variable index table.
    const auto& table_m = IndexTable::get(m, r);
    std::vector<int> to_m(table.size());
    for (int rank = 0; rank < table.size(); ++rank)
        to_m[rank] = table_m.rank(table.mask(rank));
    out.alpha0 = Form::from_evaluator(
        m, r,
        [omega, pull_point, to_m, n, r, size_m = table_m.size()](std::span<const double> xt,
                                                                  std::span<double> res) {
            PointBuffer z;
            pull_point(xt, z);
            CoeffBuffer v;
            omega.evaluate({z.data(), static_cast<std::size_t>(n)}, v);
            double tr = std::pow(xt[n], r);
            for (int i = 0; i < size_m; ++i)
                res[i] = 0.0;
            for (std::size_t rank = 0; rank < to_m.size(); ++rank)
                res[to_m[rank]] = tr * v[rank];
        },
        nullptr, "pullback-alpha0(" + omega.label() + ")");
    if (r == 0) {
        out.alpha1 = Form::zero(m, 0);
        return out;
    }
    const auto& dst = IndexTable::get(n, r - 1);
    const auto& dst_m = IndexTable::get(m, r - 1);
    std::vector<int> dst_to_m(dst.size());
    for (int rank = 0; rank < dst.size(); ++rank)
        dst_to_m[rank] = dst_m.rank(dst.mask(rank));
    const auto& contraction = contraction_table(n, r);
    out.alpha1 = Form::from_evaluator(
        m, r - 1,
        [omega, pull_point, dst_to_m, contraction, base, n, r,
         size_m = dst_m.size()](std::span<const double> xt, std::span<double> res) {
            PointBuffer z;
            pull_point(xt, z);
            CoeffBuffer v;
            omega.evaluate({z.data(), static_cast<std::size_t>(n)}, v);
            double tr1 = std::pow(xt[n], r - 1);
            for (int i = 0; i < size_m; ++i)
                res[i] = 0.0;
            for (const auto& e : contraction)
                res[dst_to_m[e.target_rank]] += e.sign * tr1 * (xt[e.axis] - base[e.axis]) * v[e.source_rank];
        },
        nullptr, "pullback-alpha1(" + omega.label() + ")");
    return out;
}

Form PullbackSplit::reconstruct() const
{
    const int m = dim + 1;
    if (degree == 0)
        return alpha0;
    Form dt = Form::basis(m, {dim});
    return alpha0 + wedge(dt, alpha1);
}

} // namespace pf
