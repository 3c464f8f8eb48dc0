#include "pf/nerve.hpp"

#include "pf/error.hpp"

#include <numeric>

namespace pf {

namespace {

using boost::multiprecision::cpp_int;
using Matrix = std::vector<std::vector<Rational>>;

Matrix dense(const std::vector<CooEntry>& coo, int rows, int cols)
{
    Matrix m(rows, std::vector<Rational>(cols, Rational(0)));
    for (const auto& e : coo)
        m[e.row][e.col] = e.value;
    return m;
}

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(Matrix& m)
{
    std::vector<int> pivots;
    const int rows = static_cast<int>(m.size());
    const int cols = rows ? static_cast<int>(m[0].size()) : 0;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = -1;
        for (int i = r; i < rows; ++i)
            if (m[i][c] != 0) {
                p = i;
                break;
            }
        if (p < 0)
            continue;
        std::swap(m[p], m[r]);
        Rational inv = 1 / m[r][c];
        for (int k = c; k < cols; ++k)
            m[r][k] *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0)
                continue;
            Rational f = m[i][c];
            for (int k = c; k < cols; ++k)
                if (m[r][k] != 0)
                    m[i][k] -= f * m[r][k];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::vector<long> integer_vector(const std::vector<Rational>& v)
{
    cpp_int l = 1;
    for (const auto& x : v)
        if (x != 0)
            l = boost::multiprecision::lcm(l, denominator(x));
    std::vector<cpp_int> ints(v.size());
    cpp_int g = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        ints[i] = numerator(v[i]) * (l / denominator(v[i]));
        g = boost::multiprecision::gcd(g, ints[i]);
    }
    std::vector<long> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out[i] = (g == 0 ? ints[i] : ints[i] / g).convert_to<long>();
    return out;
}

int matrix_rank(Matrix m) { return static_cast<int>(rref(m).size()); }

} // namespace

NerveComplex::NerveComplex(std::vector<std::vector<Tuple>> levels, bool truncated)
    : simplices_(std::move(levels)), truncated_(truncated)
{
    for (auto& level : simplices_) {
        std::sort(level.begin(), level.end());
        std::map<Tuple, int> idx;
        for (std::size_t k = 0; k < level.size(); ++k)
            idx.emplace(level[k], static_cast<int>(k));
        index_.push_back(std::move(idx));
    }
}

const std::vector<Tuple>& NerveComplex::simplices(int j) const
{
    static const std::vector<Tuple> empty;
    if (j < 0 || j >= levels())
        return empty;
    return simplices_[j];
}

int NerveComplex::index(const Tuple& I) const
{
    int j = static_cast<int>(I.size()) - 1;
    if (j < 0 || j >= levels())
        return -1;
    auto it = index_[j].find(I);
    return it == index_[j].end() ? -1 : it->second;
}

std::vector<CooEntry> NerveComplex::boundary(int j) const
{
    std::vector<CooEntry> out;
    if (j <= 0 || j >= levels())
        return out;
    const auto& level = simplices_[j];
    for (std::size_t col = 0; col < level.size(); ++col) {
        const auto& I = level[col];
        for (std::size_t t = 0; t < I.size(); ++t) {
            Tuple face;
            for (std::size_t k = 0; k < I.size(); ++k)
                if (k != t)
                    face.push_back(I[k]);
            int row = index(face);
            if (row < 0)
                throw Error("internal", "nerve is not closed under faces");
            out.push_back({row, static_cast<int>(col), t % 2 == 0 ? 1 : -1});
        }
    }
    return out;
}

int NerveComplex::boundary_rank(int j) const
{
    if (j <= 0 || j >= levels())
        return 0;
    return matrix_rank(dense(boundary(j), count(j - 1), count(j)));
}

std::vector<int> NerveComplex::betti_numbers(int top) const
{
    std::vector<int> b;
    for (int k = 0; k <= top; ++k)
        b.push_back(count(k) - boundary_rank(k) - boundary_rank(k + 1));
    return b;
}

std::vector<std::vector<long>> NerveComplex::cycle_basis(int j) const
{
    const int cols = count(j);
    std::vector<std::vector<long>> basis;
    if (cols == 0)
        return basis;
    if (j == 0) {
        for (int c = 0; c < cols; ++c) {
            std::vector<long> e(cols, 0);
            e[c] = 1;
            basis.push_back(e);
        }
        return basis;
    }
    Matrix m = dense(boundary(j), count(j - 1), cols);
    auto pivots = rref(m);
    std::vector<bool> is_pivot(cols, false);
    for (int p : pivots)
        is_pivot[p] = true;
    for (int f = 0; f < cols; ++f) {
        if (is_pivot[f])
            continue;
        std::vector<Rational> v(cols, Rational(0));
        v[f] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -m[r][f];
        basis.push_back(integer_vector(v));
    }
    return basis;
}

std::vector<std::vector<long>> NerveComplex::homology_basis(int j) const
{
    const int n = count(j);
    std::vector<std::vector<long>> out;
    // Rows: boundaries of (j+1)-simplices, then candidate cycles kept greedily.
    Matrix rows;
    for (int c = 0; c < count(j + 1); ++c)
        rows.emplace_back(n, Rational(0));
    for (const auto& e : boundary(j + 1))
        rows[e.col][e.row] = e.value;
    int rank = matrix_rank(rows);
    for (const auto& z : cycle_basis(j)) {
        Matrix trial = rows;
        std::vector<Rational> zr(z.begin(), z.end());
        trial.push_back(zr);
        int r2 = matrix_rank(trial);
        if (r2 > rank) {
            rows.push_back(zr);
            rank = r2;
            out.push_back(z);
        }
    }
    return out;
}

NerveComplex nerve(const Cover& cover, int max_length)
{
    if (max_length <= 0)
        max_length = cover.dim() + 2;
    std::vector<std::vector<Tuple>> levels;
    std::vector<Tuple> frontier;
    for (int i = 0; i < cover.size(); ++i)
        frontier.push_back({i});
    int length = 1;
    bool truncated = false;
    while (!frontier.empty()) {
        levels.push_back(frontier);
        if (length == max_length) {
            truncated = true;
            break;
        }
        std::vector<Tuple> next;
        for (const auto& I : frontier)
            for (int j = I.back() + 1; j < cover.size(); ++j) {
                Tuple J = I;
                J.push_back(j);
                if (cover.intersection(J))
                    next.push_back(J);
            }
        frontier = std::move(next);
        ++length;
    }
    return NerveComplex(std::move(levels), truncated);
}

std::vector<int> betti_numbers(const NerveComplex& nc, int top) { return nc.betti_numbers(top); }

} // namespace pf
