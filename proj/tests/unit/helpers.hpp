#pragma once

#include "pf/form.hpp"

#include <random>
#include <vector>

namespace pftest {

inline std::vector<double> random_points(int dim, int count, std::uint64_t seed, double lo = 0.0, double hi = 1.0)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> pts(static_cast<size_t>(dim) * count);
    for (auto& v : pts)
        v = u(rng);
    return pts;
}

inline pf::Polynomial poly(int vars, std::vector<std::pair<double, std::vector<int>>> terms)
{
    pf::Polynomial p(vars);
    for (auto& [c, e] : terms)
        p.add_term(c, e);
    return p;
}

inline double max_abs_value(const pf::Form& f, const std::vector<double>& pts)
{
    const int n = f.dim();
    double worst = 0.0;
    for (size_t at = 0; at < pts.size(); at += n) {
        auto v = f.values(std::span<const double>(pts.data() + at, n));
        for (double c : v)
            worst = std::max(worst, std::abs(c));
    }
    return worst;
}

} // namespace pftest
