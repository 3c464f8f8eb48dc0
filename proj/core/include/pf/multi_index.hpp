#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace pf {

inline constexpr int kMaxDim = 6;
/// Largest binomial C(kMaxDim, r); the size of any coefficient buffer.
inline constexpr int kMaxCoeffs = 20;

using CoeffBuffer = std::array<double, kMaxCoeffs>;
using PointBuffer = std::array<double, kMaxDim>;

/// Strictly increasing multi-index I ⊂ {0..n-1}, stored as a bit mask.
using IndexMask = std::uint32_t;

int binomial(int n, int k);

/// Canonical (lexicographic) enumeration of the degree-r multi-indices of an
/// n-dimensional chart. Coefficient vectors of forms are laid out in this order.
class IndexTable {
public:
    static const IndexTable& get(int n, int r);

    int dim() const { return n_; }
    int degree() const { return r_; }
    int size() const { return static_cast<int>(masks_.size()); }
    IndexMask mask(int rank) const { return masks_[rank]; }
    /// Rank of a mask with exactly r bits; -1 if it is not a degree-r index.
    int rank(IndexMask m) const { return rank_of_[m]; }
    const std::vector<int>& indices(int rank) const { return lists_[rank]; }

private:
    IndexTable(int n, int r);

    int n_;
    int r_;
    std::vector<IndexMask> masks_;
    std::vector<std::vector<int>> lists_;
    std::vector<int> rank_of_;
};

IndexMask to_mask(std::span<const int> sorted_index);
std::vector<int> from_mask(IndexMask m);

/// Sort an arbitrary index sequence. Returns the sign of the sorting permutation
/// (0 if an index repeats) and writes the sorted sequence to `sorted`.
int canonicalize(std::span<const int> index, std::vector<int>& sorted);

/// Sign of dx_A ∧ dx_B relative to dx_{A∪B}; 0 when A and B intersect.
int wedge_sign(IndexMask a, IndexMask b);

/// Sign of a permutation given as a sequence of distinct integers.
int permutation_sign(std::span<const int> perm);

} // namespace pf
