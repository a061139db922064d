#pragma once

#include "linfty/graded_space.hpp"
#include "linfty/linear_solve.hpp"

#include <set>

namespace linfty {

/// Homogeneous linear map between graded spaces; entries keyed by (target index, source index).
class GradedMap {
public:
    GradedMap() = default;
    GradedMap(GradedSpace source, GradedSpace target, int degree)
        : source_(std::move(source)), target_(std::move(target)), degree_(degree)
    {
    }

    [[nodiscard]] const GradedSpace& source() const { return source_; }
    [[nodiscard]] const GradedSpace& target() const { return target_; }
    [[nodiscard]] int degree() const { return degree_; }
    [[nodiscard]] const std::map<std::pair<int, int>, Rational>& entries() const { return entries_; }

    void set(int target_index, int source_index, const Rational& v)
    {
        if (source_index < 0 || source_index >= source_.dim() || target_index < 0 || target_index >= target_.dim())
            throw ValidationError("graded map entry out of range");
        if (v != 0 && target_.degree(target_index) - source_.degree(source_index) != degree_)
            throw ValidationError("graded map entry " + source_.name(source_index) + " -> " +
                                  target_.name(target_index) + " does not have degree " + std::to_string(degree_));
        if (v == 0)
            entries_.erase({target_index, source_index});
        else
            entries_[{target_index, source_index}] = v;
    }

    [[nodiscard]] Rational at(int target_index, int source_index) const
    {
        auto it = entries_.find({target_index, source_index});
        return it == entries_.end() ? Rational(0) : it->second;
    }

    [[nodiscard]] std::vector<Rational> apply(const std::vector<Rational>& x) const
    {
        std::vector<Rational> y(static_cast<std::size_t>(target_.dim()));
        for (const auto& [ts, v] : entries_) y[static_cast<std::size_t>(ts.first)] += v * x[static_cast<std::size_t>(ts.second)];
        return y;
    }

    /// Matrix of the map restricted to the given source/target index lists.
    [[nodiscard]] SparseMatrix block(const std::vector<int>& target_indices, const std::vector<int>& source_indices) const
    {
        SparseMatrix m(static_cast<int>(target_indices.size()), static_cast<int>(source_indices.size()));
        std::map<int, int> tpos, spos;
        for (std::size_t i = 0; i < target_indices.size(); ++i) tpos[target_indices[i]] = static_cast<int>(i);
        for (std::size_t i = 0; i < source_indices.size(); ++i) spos[source_indices[i]] = static_cast<int>(i);
        for (const auto& [ts, v] : entries_) {
            auto ti = tpos.find(ts.first);
            auto si = spos.find(ts.second);
            if (ti != tpos.end() && si != spos.end()) m.add(ti->second, si->second, v);
        }
        return m;
    }

    /// True when every nonzero entry maps weight w to weight >= w (F_k into F_k).
    [[nodiscard]] bool preserves_filtration() const
    {
        for (const auto& [ts, v] : entries_)
            if (target_.weight(ts.first) < source_.weight(ts.second)) return false;
        return true;
    }

private:
    GradedSpace source_;
    GradedSpace target_;
    int degree_ = 0;
    std::map<std::pair<int, int>, Rational> entries_;
};

inline GradedMap compose(const GradedMap& g, const GradedMap& f)
{
    if (!(f.target() == g.source())) throw ValidationError("compose: spaces do not match");
    GradedMap h(f.source(), g.target(), f.degree() + g.degree());
    std::map<std::pair<int, int>, Rational> acc;
    for (const auto& [gk, gv] : g.entries())
        for (const auto& [fk, fv] : f.entries())
            if (fk.first == gk.second) acc[{gk.first, fk.second}] += gv * fv;
    for (const auto& [k, v] : acc)
        if (v != 0) h.set(k.first, k.second, v);
    return h;
}

inline GradedMap identity_map(const GradedSpace& s)
{
    GradedMap m(s, s, 0);
    for (int i = 0; i < s.dim(); ++i) m.set(i, i, 1);
    return m;
}

/// Cochain complex with a weight-preserving differential of degree +1.
class ChainComplex {
public:
    ChainComplex() = default;
    explicit ChainComplex(GradedMap differential) : differential_(std::move(differential)) { validate(); }

    static ChainComplex zero(const GradedSpace& space) { return ChainComplex(GradedMap(space, space, 1)); }

    [[nodiscard]] const GradedSpace& space() const { return differential_.source(); }
    [[nodiscard]] const GradedMap& differential() const { return differential_; }

private:
    void validate() const
    {
        if (!(differential_.source() == differential_.target()))
            throw ValidationError("differential must be an endomorphism");
        if (differential_.degree() != 1) throw ValidationError("differential must have degree 1");
        if (!differential_.preserves_filtration())
            throw ValidationError("differential does not preserve the weight filtration");
        auto sq = compose(differential_, differential_);
        if (!sq.entries().empty()) {
            const auto& [ts, v] = *sq.entries().begin();
            throw ValidationError("differential squares to nonzero on " + space().name(ts.second));
        }
    }

    GradedMap differential_;
};

struct Cohomology {
    int degree = 0;
    int dimension = 0;
    /// Cocycle representatives as full-space coordinate vectors.
    std::vector<std::vector<Rational>> representatives;
    /// dimension x space.dim() matrix: class coordinates of a degree-d cocycle; kills coboundaries.
    SparseMatrix projection;
};

namespace detail {

inline std::vector<int> indices_in(const GradedSpace& s, int degree, int min_weight)
{
    return s.indices_of_degree(degree, min_weight);
}

inline std::vector<Rational> normalize_leading(std::vector<Rational> v)
{
    for (const auto& x : v)
        if (x != 0) {
            Rational inv = 1 / x;
            for (auto& y : v) y *= inv;
            break;
        }
    return v;
}

} // namespace detail

/// H^d of the subcomplex F_{min_weight} of C.
inline Cohomology cohomology(const ChainComplex& C, int d, int min_weight = 1)
{
    const auto& s = C.space();
    auto prev = detail::indices_in(s, d - 1, min_weight);
    auto here = detail::indices_in(s, d, min_weight);
    auto next = detail::indices_in(s, d + 1, min_weight);
    const auto& D = C.differential();
    SparseMatrix dd = D.block(next, here);
    SparseMatrix dprev = D.block(here, prev);

    Cohomology h;
    h.degree = d;
    const int n = static_cast<int>(here.size());

    // coboundary basis (independent columns of dprev) then cocycles extending it
    std::vector<std::vector<Rational>> frame;
    auto rank_of = [&](const std::vector<std::vector<Rational>>& vs) {
        SparseMatrix m(static_cast<int>(vs.size()), n);
        for (std::size_t i = 0; i < vs.size(); ++i)
            for (int j = 0; j < n; ++j) m.add(static_cast<int>(i), j, vs[i][static_cast<std::size_t>(j)]);
        return rank(m);
    };
    for (int c = 0; c < dprev.cols(); ++c) {
        std::vector<Rational> col(static_cast<std::size_t>(n));
        for (int r = 0; r < n; ++r) col[static_cast<std::size_t>(r)] = dprev.at(r, c);
        frame.push_back(col);
        if (rank_of(frame) < static_cast<int>(frame.size())) frame.pop_back();
    }
    const std::size_t boundary_rank = frame.size();
    std::vector<std::vector<Rational>> local_reps;
    for (auto& z : nullspace(dd)) {
        frame.push_back(detail::normalize_leading(z));
        if (rank_of(frame) < static_cast<int>(frame.size()))
            frame.pop_back();
        else
            local_reps.push_back(frame.back());
    }
    h.dimension = static_cast<int>(local_reps.size());
    for (int j = 0; j < n; ++j) {
        std::vector<Rational> e(static_cast<std::size_t>(n));
        e[static_cast<std::size_t>(j)] = 1;
        frame.push_back(e);
        if (rank_of(frame) < static_cast<int>(frame.size())) frame.pop_back();
    }
    // Solve frame^T c = x for each unit x: coordinates in the adapted basis.
    SparseMatrix M(n, n);
    for (int col = 0; col < n; ++col)
        for (int row = 0; row < n; ++row) M.add(row, col, frame[static_cast<std::size_t>(col)][static_cast<std::size_t>(row)]);
    h.projection = SparseMatrix(h.dimension, s.dim());
    for (int j = 0; j < n; ++j) {
        std::vector<Rational> e(static_cast<std::size_t>(n));
        e[static_cast<std::size_t>(j)] = 1;
        auto sol = solve_linear(M, e);
        for (int k = 0; k < h.dimension; ++k)
            h.projection.add(k, here[static_cast<std::size_t>(j)], sol.solution[boundary_rank + static_cast<std::size_t>(k)]);
    }
    for (const auto& r : local_reps) {
        std::vector<Rational> full(static_cast<std::size_t>(s.dim()));
        for (int j = 0; j < n; ++j) full[static_cast<std::size_t>(here[static_cast<std::size_t>(j)])] = r[static_cast<std::size_t>(j)];
        h.representatives.push_back(std::move(full));
    }
    return h;
}

namespace detail {

inline void require_filtered_chain_map(const GradedMap& f, const ChainComplex& src, const ChainComplex& tgt)
{
    if (!(f.source() == src.space()) || !(f.target() == tgt.space()))
        throw ValidationError("map does not match the given complexes");
    if (f.degree() != 0) throw ValidationError("map must have degree 0");
    auto lhs = compose(f, src.differential());
    auto rhs = compose(tgt.differential(), f);
    if (lhs.entries() != rhs.entries()) throw ValidationError("map is not a chain map");
    if (!f.preserves_filtration()) throw ValidationError("map does not preserve the weight filtration");
}

inline std::vector<int> relevant_degrees(const GradedSpace& a, const GradedSpace& b)
{
    std::set<int> ds;
    for (int d : a.degrees_present()) {
        ds.insert(d);
        ds.insert(d - 1);
    }
    for (int d : b.degrees_present()) {
        ds.insert(d);
        ds.insert(d - 1);
    }
    return {ds.begin(), ds.end()};
}

} // namespace detail

/// Mapping-cone test: f restricted to F_n is a quasi-isomorphism for every n >= 1.
inline bool is_quasi_iso_on_filtration(const GradedMap& f, const ChainComplex& src, const ChainComplex& tgt)
{
    detail::require_filtered_chain_map(f, src, tgt);
    const int top = std::max({1, src.space().max_weight(), tgt.space().max_weight()});
    const auto degrees = detail::relevant_degrees(src.space(), tgt.space());
    for (int n = 1; n <= top; ++n) {
        // Cone^d = src^{d+1} (+) tgt^d,  D(a, b) = (-da, f a + db)
        auto cone_dim = [&](int d) {
            return static_cast<int>(src.space().indices_of_degree(d + 1, n).size() +
                                    tgt.space().indices_of_degree(d, n).size());
        };
        auto cone_rank = [&](int d) {
            auto a_in = src.space().indices_of_degree(d + 1, n);
            auto b_in = tgt.space().indices_of_degree(d, n);
            auto a_out = src.space().indices_of_degree(d + 2, n);
            auto b_out = tgt.space().indices_of_degree(d + 1, n);
            const int na = static_cast<int>(a_in.size());
            const int ma = static_cast<int>(a_out.size());
            SparseMatrix m(ma + static_cast<int>(b_out.size()), na + static_cast<int>(b_in.size()));
            auto da = src.differential().block(a_out, a_in);
            auto fa = f.block(b_out, a_in);
            auto db = tgt.differential().block(b_out, b_in);
            for (int r = 0; r < da.rows(); ++r)
                for (const auto& [c, v] : da.row(r)) m.add(r, c, -v);
            for (int r = 0; r < fa.rows(); ++r)
                for (const auto& [c, v] : fa.row(r)) m.add(ma + r, c, v);
            for (int r = 0; r < db.rows(); ++r)
                for (const auto& [c, v] : db.row(r)) m.add(ma + r, na + c, v);
            return rank(m);
        };
        for (int d : degrees)
            if (cone_rank(d) + cone_rank(d - 1) != cone_dim(d)) return false;
    }
    return true;
}

/// f restricted to F_n surjects onto F_n of the target, for every n >= 1 and every degree.
inline bool is_surjective_on_filtration(const GradedMap& f, const ChainComplex& src, const ChainComplex& tgt)
{
    detail::require_filtered_chain_map(f, src, tgt);
    const int top = std::max({1, src.space().max_weight(), tgt.space().max_weight()});
    for (int n = 1; n <= top; ++n)
        for (int d : tgt.space().degrees_present()) {
            auto t = tgt.space().indices_of_degree(d, n);
            auto s = src.space().indices_of_degree(d, n);
            if (rank(f.block(t, s)) != static_cast<int>(t.size())) return false;
        }
    return true;
}

} // namespace linfty
