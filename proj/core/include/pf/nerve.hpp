#pragma once

#include "pf/cover.hpp"

#include <map>
#include <vector>

namespace pf {

struct CooEntry {
    int row;
    int col;
    int value;
};

/// Nerve of a cover: level j holds the strictly increasing (j+1)-tuples with
/// nonempty intersection, in lexicographic order.
class NerveComplex {
public:
    NerveComplex() = default;
    NerveComplex(std::vector<std::vector<Tuple>> levels, bool truncated);

    int levels() const { return static_cast<int>(simplices_.size()); }
    /// True when enumeration stopped at the length cutoff; otherwise every
    /// level beyond levels() is known to be empty.
    bool truncated() const { return truncated_; }
    /// Whether tuples of this length are fully known (possibly none).
    bool knows_length(int length) const { return length <= levels() || !truncated_; }
    const std::vector<Tuple>& simplices(int j) const;
    int count(int j) const { return j < levels() ? static_cast<int>(simplices_[j].size()) : 0; }
    /// Position of I in its level, or -1.
    int index(const Tuple& I) const;
    bool contains(const Tuple& I) const { return index(I) >= 0; }

    /// ∂_j : C_j -> C_{j-1}, entries (-1)^t for removing position t.
    std::vector<CooEntry> boundary(int j) const;
    /// Dense rational rank of ∂_j.
    int boundary_rank(int j) const;
    /// b_0..b_{top}; requires level top+1 to be enumerated (or empty).
    std::vector<int> betti_numbers(int top) const;
    /// Integer basis of ker ∂_j (from exact rational elimination).
    std::vector<std::vector<long>> cycle_basis(int j) const;
    /// Cycles of the kernel basis that are independent modulo im ∂_{j+1}.
    std::vector<std::vector<long>> homology_basis(int j) const;

private:
    std::vector<std::vector<Tuple>> simplices_;
    std::vector<std::map<Tuple, int>> index_;
    bool truncated_ = false;
};

/// Enumerates nonempty intersections up to tuples of length
/// `max_length` (default: geometry dimension + 2).
NerveComplex nerve(const Cover& cover, int max_length = 0);

std::vector<int> betti_numbers(const NerveComplex& nc, int top);

} // namespace pf
