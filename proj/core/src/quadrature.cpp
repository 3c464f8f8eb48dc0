#include "pf/quadrature.hpp"

#include "pf/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <queue>
#include <random>

namespace pf {

namespace {

QuadratureRule make_gauss_legendre(int order)
{
    QuadratureRule rule;
    rule.dim = 1;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    for (int i = 0; i < (order + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int k = 1; k <= order; ++k) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p2) / k;
            }
            dp = order * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        // Recompute derivative at the converged node.
        double p0 = 1.0, p1 = 0.0;
        for (int k = 1; k <= order; ++k) {
            double p2 = p1;
            p1 = p0;
            p0 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p2) / k;
        }
        dp = order * (x * p0 - p1) / (x * x - 1.0);
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        // Map [-1,1] -> [0,1]; store ascending.
        rule.nodes[i] = 0.5 * (1.0 - x);
        rule.nodes[order - 1 - i] = 0.5 * (1.0 + x);
        rule.weights[i] = 0.5 * w;
        rule.weights[order - 1 - i] = 0.5 * w;
    }
    return rule;
}

} // namespace

const QuadratureRule& gauss_legendre_01(int order)
{
    if (order < 1 || order > 512)
        throw InvalidArgument("Gauss-Legendre order out of range: " + std::to_string(order));
    static std::mutex mutex;
    static std::map<int, QuadratureRule> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(order);
    if (it == cache.end())
        it = cache.emplace(order, make_gauss_legendre(order)).first;
    return it->second;
}

QuadratureRule tensor_gauss(std::span<const double> lo, std::span<const double> hi, int order,
                            int panels)
{
    if (lo.size() != hi.size())
        throw DimensionMismatch("tensor_gauss: corner dimensions differ");
    if (panels < 1)
        throw InvalidArgument("tensor_gauss: panels must be >= 1");
    const auto& g = gauss_legendre_01(order);
    const int n = static_cast<int>(lo.size());
    const int per_axis = order * panels;

    std::vector<std::vector<double>> ax_nodes(n), ax_weights(n);
    for (int k = 0; k < n; ++k) {
        double h = (hi[k] - lo[k]) / panels;
        for (int p = 0; p < panels; ++p)
            for (int i = 0; i < order; ++i) {
                ax_nodes[k].push_back(lo[k] + h * (p + g.nodes[i]));
                ax_weights[k].push_back(h * g.weights[i]);
            }
    }

    QuadratureRule rule;
    rule.dim = n;
    std::size_t total = 1;
    for (int k = 0; k < n; ++k)
        total *= per_axis;
    rule.nodes.reserve(total * n);
    rule.weights.reserve(total);
    std::vector<int> idx(n, 0);
    for (std::size_t c = 0; c < total; ++c) {
        double w = 1.0;
        for (int k = 0; k < n; ++k) {
            rule.nodes.push_back(ax_nodes[k][idx[k]]);
            w *= ax_weights[k][idx[k]];
        }
        rule.weights.push_back(w);
        for (int k = n - 1; k >= 0; --k) {
            if (++idx[k] < per_axis)
                break;
            idx[k] = 0;
        }
    }
    return rule;
}

namespace {

// All compositions of `total` into `parts` nonnegative integers.
void compositions(int total, int parts, std::vector<int>& cur, std::vector<std::vector<int>>& out)
{
    if (parts == 1) {
        cur.push_back(total);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int v = total; v >= 0; --v) {
        cur.push_back(v);
        compositions(total - v, parts - 1, cur, out);
        cur.pop_back();
    }
}

double factorial(int k)
{
    double f = 1.0;
    for (int i = 2; i <= k; ++i)
        f *= i;
    return f;
}

} // namespace

QuadratureRule grundmann_moller(std::span<const double> vertices, int n, int s)
{
    if (n < 1)
        throw InvalidArgument("grundmann_moller: dimension must be >= 1");
    if (static_cast<int>(vertices.size()) != (n + 1) * n)
        throw DimensionMismatch("grundmann_moller: expected n+1 vertices in R^n");
    if (s < 0)
        throw InvalidArgument("grundmann_moller: index must be >= 0");

    // Volume of the simplex: |det(v_i - v_0)| / n!.
    std::vector<double> m(n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m[i * n + j] = vertices[(i + 1) * n + j] - vertices[j];
    double det = 1.0;
    for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int r = c + 1; r < n; ++r)
            if (std::abs(m[r * n + c]) > std::abs(m[piv * n + c]))
                piv = r;
        if (m[piv * n + c] == 0.0) {
            det = 0.0;
            break;
        }
        if (piv != c) {
            for (int j = 0; j < n; ++j)
                std::swap(m[c * n + j], m[piv * n + j]);
            det = -det;
        }
        det *= m[c * n + c];
        for (int r = c + 1; r < n; ++r) {
            double f = m[r * n + c] / m[c * n + c];
            for (int j = c; j < n; ++j)
                m[r * n + j] -= f * m[c * n + j];
        }
    }
    const double volume = std::abs(det) / factorial(n);

    QuadratureRule rule;
    rule.dim = n;
    const int d = 2 * s + 1;
    for (int i = 0; i <= s; ++i) {
        double w = ((i % 2 == 0) ? 1.0 : -1.0) * std::pow(2.0, -2 * s) *
                   std::pow(static_cast<double>(d + n - 2 * i), d) /
                   (factorial(i) * factorial(d + n - i));
        // Normalized so that weights sum to the simplex volume.
        w *= factorial(n) * volume;
        std::vector<std::vector<int>> betas;
        std::vector<int> cur;
        compositions(s - i, n + 1, cur, betas);
        const double denom = d + n - 2 * i;
        for (const auto& beta : betas) {
            for (int k = 0; k < n; ++k) {
                double x = 0.0;
                for (int v = 0; v <= n; ++v)
                    x += (2.0 * beta[v] + 1.0) / denom * vertices[v * n + k];
                rule.nodes.push_back(x);
            }
            rule.weights.push_back(w);
        }
    }
    return rule;
}

namespace {

constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const std::function<double(double)>& f, double a, double b)
{
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fc = f(c);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        double dx = h * kXgk[j];
        double s = f(c - dx) + f(c + dx);
        kronrod += kWgk[j] * s;
        if (j % 2 == 1)
            gauss += kWg[j / 2] * s;
    }
    return {a, b, kronrod * h, std::abs((kronrod - gauss) * h)};
}

} // namespace

AdaptiveResult adaptive_gauss_kronrod(const std::function<double(double)>& f, double a, double b,
                                      double abs_tol, double rel_tol, int max_intervals)
{
    std::priority_queue<Segment> heap;
    Segment first = gk15(f, a, b);
    heap.push(first);
    double value = first.value;
    double error = first.error;
    int intervals = 1;
    while (error > std::max(abs_tol, rel_tol * std::abs(value)) && intervals < max_intervals) {
        Segment worst = heap.top();
        heap.pop();
        double mid = 0.5 * (worst.a + worst.b);
        Segment left = gk15(f, worst.a, mid);
        Segment right = gk15(f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++intervals;
    }
    // Re-sum from the segments to shed accumulated update rounding.
    std::vector<Segment> segs;
    while (!heap.empty()) {
        segs.push_back(heap.top());
        heap.pop();
    }
    std::sort(segs.begin(), segs.end(), [](const Segment& x, const Segment& y) { return x.a < y.a; });
    std::vector<double> vals, errs;
    for (const auto& s : segs) {
        vals.push_back(s.value);
        errs.push_back(s.error);
    }
    return {pairwise_sum(vals), pairwise_sum(errs), intervals};
}

double pairwise_sum(std::span<const double> values)
{
    if (values.size() <= 8) {
        double s = 0.0;
        for (double v : values)
            s += v;
        return s;
    }
    std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

namespace {

double radical_inverse(std::uint64_t index, int base)
{
    double result = 0.0;
    double f = 1.0 / base;
    while (index > 0) {
        result += f * static_cast<double>(index % base);
        index /= base;
        f /= base;
    }
    return result;
}

} // namespace

std::vector<double> probe_points_unit(int dim, int count, std::uint64_t seed)
{
    static constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19};
    if (dim < 1 || dim > 8)
        throw InvalidArgument("probe_points_unit: dimension out of range");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<double> shift(dim);
    for (double& s : shift)
        s = uni(rng);
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(dim) * count);
    for (int i = 0; i < count; ++i)
        for (int k = 0; k < dim; ++k) {
            double v = radical_inverse(static_cast<std::uint64_t>(i) + 1, kPrimes[k]) + shift[k];
            v -= std::floor(v);
            // Keep strictly inside the open unit cube.
            v = std::clamp(v, 1e-6, 1.0 - 1e-6);
            out.push_back(v);
        }
    return out;
}

} // namespace pf
