#pragma once

#include "linfty/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace linfty {

/// Thrown when an object violates one of its structural invariants.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown when a well-posed problem has no solution; carries the obstruction description.
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline int sign_of(long exponent) { return (exponent % 2 == 0) ? 1 : -1; }
inline bool is_odd(int d) { return (d % 2) != 0; }

struct BasisElement {
    std::string name;
    int degree = 0;
    int weight = 1;

    bool operator==(const BasisElement&) const = default;
};

/// Finite graded basis with per-element filtration weights. F_k is the span of
/// the basis elements of weight >= k. Basis order is declaration order.
class GradedSpace {
public:
    GradedSpace() = default;

    explicit GradedSpace(std::vector<BasisElement> basis) : basis_(std::move(basis))
    {
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            const auto& b = basis_[i];
            if (b.name.empty()) throw ValidationError("basis element with empty name");
            if (b.weight < 1)
                throw ValidationError("basis element '" + b.name + "' has weight " +
                                      std::to_string(b.weight) + " < 1");
            if (!index_.emplace(b.name, static_cast<int>(i)).second)
                throw ValidationError("duplicate basis name '" + b.name + "'");
        }
    }

    [[nodiscard]] int dim() const { return static_cast<int>(basis_.size()); }
    [[nodiscard]] const std::vector<BasisElement>& basis() const { return basis_; }
    [[nodiscard]] const BasisElement& operator[](int i) const { return basis_[static_cast<std::size_t>(i)]; }
    [[nodiscard]] int degree(int i) const { return basis_[static_cast<std::size_t>(i)].degree; }
    [[nodiscard]] int weight(int i) const { return basis_[static_cast<std::size_t>(i)].weight; }
    [[nodiscard]] const std::string& name(int i) const { return basis_[static_cast<std::size_t>(i)].name; }

    [[nodiscard]] std::optional<int> find(const std::string& name) const
    {
        auto it = index_.find(name);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    [[nodiscard]] int index_of(const std::string& name) const
    {
        auto i = find(name);
        if (!i) throw ValidationError("unknown basis element '" + name + "'");
        return *i;
    }

    [[nodiscard]] int max_weight() const
    {
        int w = 0;
        for (const auto& b : basis_) w = std::max(w, b.weight);
        return w;
    }

    /// Basis indices of the given degree, optionally restricted to weight >= min_weight.
    [[nodiscard]] std::vector<int> indices_of_degree(int degree, int min_weight = 1) const
    {
        std::vector<int> out;
        for (int i = 0; i < dim(); ++i)
            if (basis_[static_cast<std::size_t>(i)].degree == degree && weight(i) >= min_weight) out.push_back(i);
        return out;
    }

    [[nodiscard]] std::vector<int> degrees_present() const
    {
        std::vector<int> ds;
        for (const auto& b : basis_) ds.push_back(b.degree);
        std::sort(ds.begin(), ds.end());
        ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
        return ds;
    }

    /// The sub-basis of elements with weight < n, in declaration order (the basis of L / F_n L).
    [[nodiscard]] GradedSpace truncated(int n) const
    {
        std::vector<BasisElement> keep;
        for (const auto& b : basis_)
            if (b.weight < n) keep.push_back(b);
        return GradedSpace(std::move(keep));
    }

    bool operator==(const GradedSpace& o) const { return basis_ == o.basis_; }

private:
    std::vector<BasisElement> basis_;
    std::unordered_map<std::string, int> index_;
};

/// Sorted multi-index of basis positions; the key type for multilinear maps on S^m.
using MultiIndex = std::vector<int>;

/// Sparse vector: (basis index, coefficient), strictly increasing index, no zeros.
template <class C>
using SparseVec = std::vector<std::pair<int, C>>;

/// Sign of the permutation sorting `idx` ascending, counting only transpositions
/// of two odd-degree entries. Returns 0 when an odd element repeats (x.x = 0 in S(L)).
inline int koszul_sort(const GradedSpace& space, MultiIndex& idx)
{
    int sign = 1;
    // insertion sort, tracking odd/odd swaps
    for (std::size_t i = 1; i < idx.size(); ++i) {
        for (std::size_t j = i; j > 0 && idx[j - 1] > idx[j]; --j) {
            if (is_odd(space.degree(idx[j - 1])) && is_odd(space.degree(idx[j]))) sign = -sign;
            std::swap(idx[j - 1], idx[j]);
        }
    }
    for (std::size_t i = 1; i < idx.size(); ++i)
        if (idx[i] == idx[i - 1] && is_odd(space.degree(idx[i]))) return 0;
    return sign;
}

inline int total_degree(const GradedSpace& space, const MultiIndex& idx)
{
    int d = 0;
    for (int i : idx) d += space.degree(i);
    return d;
}

inline int total_weight(const GradedSpace& space, const MultiIndex& idx)
{
    int w = 0;
    for (int i : idx) w += space.weight(i);
    return w;
}

/// True when the sorted multi-index names a nonzero element of S^m (no repeated odd entry).
inline bool is_symmetric_word(const GradedSpace& space, const MultiIndex& idx)
{
    for (std::size_t i = 1; i < idx.size(); ++i) {
        if (idx[i] < idx[i - 1]) return false;
        if (idx[i] == idx[i - 1] && is_odd(space.degree(idx[i]))) return false;
    }
    return true;
}

/// All nonzero basis words of S^arity(space) with total weight < weight_bound
/// (weight_bound <= 0 disables the bound). Lexicographic order.
inline std::vector<MultiIndex> symmetric_words(const GradedSpace& space, int arity, int weight_bound = 0)
{
    std::vector<MultiIndex> out;
    if (arity <= 0) return out;
    MultiIndex cur;
    auto rec = [&](auto&& self, int start, int weight) -> void {
        if (static_cast<int>(cur.size()) == arity) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i < space.dim(); ++i) {
            if (!cur.empty() && cur.back() == i && is_odd(space.degree(i))) continue;
            int w = weight + space.weight(i);
            if (weight_bound > 0 && w >= weight_bound) continue;
            cur.push_back(i);
            self(self, i, w);
            cur.pop_back();
        }
    };
    rec(rec, 0, 0);
    return out;
}

inline std::string word_to_string(const GradedSpace& space, const MultiIndex& idx)
{
    std::string s = "(";
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (i) s += ",";
        s += space.name(idx[i]);
    }
    return s + ")";
}

} // namespace linfty
