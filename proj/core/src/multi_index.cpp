#include "pf/multi_index.hpp"

#include "pf/error.hpp"

#include <algorithm>
#include <bit>
#include <memory>
#include <mutex>

namespace pf {

int binomial(int n, int k)
{
    if (k < 0 || k > n)
        return 0;
    int result = 1;
    for (int i = 1; i <= k; ++i)
        result = result * (n - k + i) / i;
    return result;
}

IndexTable::IndexTable(int n, int r) : n_(n), r_(r), rank_of_(std::size_t{1} << n, -1)
{
    // Lexicographic order on sorted index lists.
    std::vector<int> current(r);
    for (int i = 0; i < r; ++i)
        current[i] = i;
    if (r > n)
        return;
    while (true) {
        lists_.push_back(current);
        masks_.push_back(to_mask(current));
        rank_of_[masks_.back()] = static_cast<int>(masks_.size()) - 1;
        int pos = r - 1;
        while (pos >= 0 && current[pos] == n - r + pos)
            --pos;
        if (pos < 0)
            break;
        ++current[pos];
        for (int j = pos + 1; j < r; ++j)
            current[j] = current[j - 1] + 1;
    }
}

const IndexTable& IndexTable::get(int n, int r)
{
    static std::once_flag once;
    static std::vector<std::unique_ptr<IndexTable>> tables;
    std::call_once(once, [] {
        tables.resize((kMaxDim + 1) * (kMaxDim + 2));
        for (int nn = 0; nn <= kMaxDim; ++nn)
            for (int rr = 0; rr <= nn + 1; ++rr)
                tables[nn * (kMaxDim + 2) + rr].reset(new IndexTable(nn, rr));
    });
    if (n < 0 || n > kMaxDim || r < 0 || r > n + 1)
        throw InvalidArgument("index table request out of range: n=" + std::to_string(n) +
                              " r=" + std::to_string(r));
    return *tables[n * (kMaxDim + 2) + r];
}

IndexMask to_mask(std::span<const int> sorted_index)
{
    IndexMask m = 0;
    for (int i : sorted_index)
        m |= IndexMask{1} << i;
    return m;
}

std::vector<int> from_mask(IndexMask m)
{
    std::vector<int> out;
    for (int i = 0; m != 0; ++i, m >>= 1)
        if (m & 1u)
            out.push_back(i);
    return out;
}

int canonicalize(std::span<const int> index, std::vector<int>& sorted)
{
    sorted.assign(index.begin(), index.end());
    int sign = 1;
    // Insertion sort, counting transpositions.
    for (std::size_t i = 1; i < sorted.size(); ++i)
        for (std::size_t j = i; j > 0 && sorted[j - 1] > sorted[j]; --j) {
            std::swap(sorted[j - 1], sorted[j]);
            sign = -sign;
        }
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i] == sorted[i - 1])
            return 0;
    return sign;
}

int wedge_sign(IndexMask a, IndexMask b)
{
    if (a & b)
        return 0;
    // Count pairs (i in a, j in b) with i > j.
    int inversions = 0;
    for (IndexMask rest = a; rest != 0; rest &= rest - 1) {
        int i = std::countr_zero(rest);
        IndexMask below = (IndexMask{1} << i) - 1;
        inversions += std::popcount(b & below);
    }
    return (inversions % 2 == 0) ? 1 : -1;
}

int permutation_sign(std::span<const int> perm)
{
    int inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j])
                ++inversions;
    return (inversions % 2 == 0) ? 1 : -1;
}

} // namespace pf
