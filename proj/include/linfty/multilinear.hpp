#pragma once

#include "linfty/graded_space.hpp"
#include "linfty/poly_form.hpp"

#include <functional>

namespace linfty {

/// Coefficient rings: Q itself, or Omega_n (polynomial forms) for L (x) Omega_n.
template <class C>
struct Coeff;

template <>
struct Coeff<Rational> {
    static int degree(const Rational&) { return 0; }
    static bool is_zero(const Rational& r) { return r == 0; }
    static Rational d(const Rational&) { return 0; }
    static Rational one() { return 1; }
    static Rational from(const Rational& q) { return q; }
};

template <>
struct Coeff<PolyForm> {
    static int degree(const PolyForm& f) { return f.form_degree(); }
    static bool is_zero(const PolyForm& f) { return f.is_zero(); }
    static PolyForm d(const PolyForm& f) { return f.d(); }
    static PolyForm one() { return PolyForm::constant(1); }
    static PolyForm from(const Rational& q) { return PolyForm::constant(q); }
    static PolyForm from(const PolyForm& f) { return f; }
};

/// Dense element of V (x) R over the basis of V, coefficients on the right.
template <class C>
using Vec = std::vector<C>;

template <class C>
Vec<C> zero_vec(const GradedSpace& s)
{
    return Vec<C>(static_cast<std::size_t>(s.dim()));
}

template <class C>
Vec<C> unit_vec(const GradedSpace& s, int i)
{
    Vec<C> v(static_cast<std::size_t>(s.dim()));
    v[static_cast<std::size_t>(i)] = Coeff<C>::one();
    return v;
}

template <class C>
bool is_zero_vec(const Vec<C>& v)
{
    for (const auto& c : v)
        if (!Coeff<C>::is_zero(c)) return false;
    return true;
}

template <class C>
Vec<C>& add_to(Vec<C>& a, const Vec<C>& b)
{
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

template <class C>
Vec<C>& sub_from(Vec<C>& a, const Vec<C>& b)
{
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}

template <class C>
Vec<C> scaled(Vec<C> a, const Rational& s)
{
    for (auto& c : a) c *= s;
    return a;
}

/// Coordinate-wise d on the coefficients: e (x) r -> (-1)^{|e|} e (x) dr.
template <class C>
Vec<C> coefficient_differential(const GradedSpace& s, const Vec<C>& v)
{
    Vec<C> out(v.size());
    for (int i = 0; i < s.dim(); ++i) {
        const auto& c = v[static_cast<std::size_t>(i)];
        if (Coeff<C>::is_zero(c)) continue;
        auto dc = Coeff<C>::d(c);
        if (is_odd(s.degree(i))) dc = -dc;
        out[static_cast<std::size_t>(i)] = dc;
    }
    return out;
}

/// Zeroes every coordinate of weight >= n (the strict projection L -> L / F_n).
template <class C>
Vec<C> truncate_weight(const GradedSpace& s, Vec<C> v, int n)
{
    for (int i = 0; i < s.dim(); ++i)
        if (s.weight(i) >= n) v[static_cast<std::size_t>(i)] = C();
    return v;
}

/// Graded-symmetric multilinear maps S^m(V) -> W for several arities m >= 1, stored on
/// sorted multi-indices. The value on an unsorted word is the stored value times the
/// Koszul sign of the sorting permutation (internal degrees).
template <class C>
class Multilinear {
public:
    using Image = std::map<int, C>;

    [[nodiscard]] const std::map<MultiIndex, Image>& terms() const { return terms_; }
    [[nodiscard]] bool empty() const { return terms_.empty(); }

    /// Adds coeff * target[out] to the value on `word` (any order; sorted with Koszul sign).
    void add(const GradedSpace& source, MultiIndex word, int out, C coeff)
    {
        int sign = koszul_sort(source, word);
        if (sign == 0 || Coeff<C>::is_zero(coeff)) return;
        if (sign < 0) coeff = -coeff;
        auto& img = terms_[word];
        auto [it, inserted] = img.emplace(out, coeff);
        if (!inserted) {
            it->second += coeff;
            if (Coeff<C>::is_zero(it->second)) img.erase(it);
        }
        if (img.empty()) terms_.erase(word);
    }

    /// Replaces the value on a sorted word.
    void set(const MultiIndex& sorted_word, const Vec<C>& value)
    {
        Image img;
        for (std::size_t i = 0; i < value.size(); ++i)
            if (!Coeff<C>::is_zero(value[i])) img.emplace(static_cast<int>(i), value[i]);
        if (img.empty())
            terms_.erase(sorted_word);
        else
            terms_[sorted_word] = std::move(img);
    }

    [[nodiscard]] const Image* find(const MultiIndex& sorted_word) const
    {
        auto it = terms_.find(sorted_word);
        return it == terms_.end() ? nullptr : &it->second;
    }

    [[nodiscard]] int max_arity() const
    {
        int m = 0;
        for (const auto& [w, img] : terms_) m = std::max(m, static_cast<int>(w.size()));
        return m;
    }

    /// Restriction to a single arity.
    [[nodiscard]] Multilinear arity_part(int m) const
    {
        Multilinear r;
        for (const auto& [w, img] : terms_)
            if (static_cast<int>(w.size()) == m) r.terms_.emplace(w, img);
        return r;
    }

    [[nodiscard]] Multilinear without_arity(int m) const
    {
        Multilinear r;
        for (const auto& [w, img] : terms_)
            if (static_cast<int>(w.size()) != m) r.terms_.emplace(w, img);
        return r;
    }

    void merge(const Multilinear& o)
    {
        for (const auto& [w, img] : o.terms_)
            for (const auto& [k, c] : img) {
                auto& dst = terms_[w];
                auto [it, inserted] = dst.emplace(k, c);
                if (!inserted) {
                    it->second += c;
                    if (Coeff<C>::is_zero(it->second)) dst.erase(it);
                }
                if (dst.empty()) terms_.erase(w);
            }
    }

    bool operator==(const Multilinear& o) const { return terms_ == o.terms_; }

private:
    std::map<MultiIndex, Image> terms_;
};

/// Evaluates f on the ordered argument list. Arguments are elements of V (x) R with
/// coefficients on the right; each term is rearranged to (e_1 ... e_m) (x) (r_1 ... r_m)
/// with the Koszul sign, sorted, and mapped. Structure constants (type S) sit to the
/// left of the argument coefficients in the product.
template <class S, class C>
Vec<C> apply(const GradedSpace& source, const GradedSpace& target, const Multilinear<S>& f,
             const std::vector<const Vec<C>*>& args)
{
    Vec<C> out(static_cast<std::size_t>(target.dim()));
    const std::size_t m = args.size();
    if (m == 0 || f.empty()) return out;

    struct Entry {
        int index;
        const C* coeff;
        int coeff_degree;
    };
    std::vector<std::vector<Entry>> support(m);
    for (std::size_t a = 0; a < m; ++a) {
        const auto& v = *args[a];
        for (int i = 0; i < source.dim(); ++i) {
            const auto& c = v[static_cast<std::size_t>(i)];
            if (!Coeff<C>::is_zero(c)) support[a].push_back({i, &c, Coeff<C>::degree(c)});
        }
        if (support[a].empty()) return out;
    }

    MultiIndex chosen(m);
    std::vector<const Entry*> picked(m);
    auto leaf = [&](long sign_exp) {
        MultiIndex sorted = chosen;
        int s = koszul_sort(source, sorted);
        if (s == 0) return;
        const auto* img = f.find(sorted);
        if (!img) return;
        C prod = *picked[0]->coeff;
        for (std::size_t a = 1; a < m; ++a) prod = prod * *picked[a]->coeff;
        if (sign_of(sign_exp) * s < 0) prod = -prod;
        for (const auto& [k, c] : *img) out[static_cast<std::size_t>(k)] += Coeff<C>::from(c) * prod;
    };
    auto rec = [&](auto&& self, std::size_t a, long sign_exp, int coeff_deg_so_far) -> void {
        if (a == m) {
            leaf(sign_exp);
            return;
        }
        for (const auto& e : support[a]) {
            chosen[a] = e.index;
            picked[a] = &e;
            long se = sign_exp + static_cast<long>(coeff_deg_so_far) * source.degree(e.index);
            self(self, a + 1, se, coeff_deg_so_far + e.coeff_degree);
        }
    };
    rec(rec, 0, 0, 0);
    return out;
}

/// f(x, x, ..., x) with m copies.
template <class S, class C>
Vec<C> apply_power(const GradedSpace& source, const GradedSpace& target, const Multilinear<S>& f, const Vec<C>& x, int m)
{
    std::vector<const Vec<C>*> args(static_cast<std::size_t>(m), &x);
    return apply(source, target, f, args);
}

/// Sign of moving the positions in `mask` (in order) in front of the others (in order).
inline int unshuffle_sign(const std::vector<int>& degrees, unsigned mask)
{
    long flips = 0;
    const int n = static_cast<int>(degrees.size());
    for (int b = 0; b < n; ++b) {
        if (!(mask & (1u << b)) || !is_odd(degrees[static_cast<std::size_t>(b)])) continue;
        for (int a = 0; a < b; ++a)
            if (!(mask & (1u << a)) && is_odd(degrees[static_cast<std::size_t>(a)])) ++flips;
    }
    return sign_of(flips);
}

/// Set partitions of {0..n-1}: blocks ordered by least element, each block increasing.
inline std::vector<std::vector<std::vector<int>>> set_partitions(int n)
{
    std::vector<std::vector<std::vector<int>>> out;
    std::vector<std::vector<int>> cur;
    auto rec = [&](auto&& self, int i) -> void {
        if (i == n) {
            out.push_back(cur);
            return;
        }
        for (std::size_t b = 0; b < cur.size(); ++b) {
            cur[b].push_back(i);
            self(self, i + 1);
            cur[b].pop_back();
        }
        cur.push_back({i});
        self(self, i + 1);
        cur.pop_back();
    };
    if (n > 0) rec(rec, 0);
    return out;
}

/// Koszul sign of the permutation listing the blocks one after another.
inline int partition_sign(const std::vector<int>& degrees, const std::vector<std::vector<int>>& blocks)
{
    std::vector<int> order;
    for (const auto& b : blocks) order.insert(order.end(), b.begin(), b.end());
    long flips = 0;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (std::size_t j = i + 1; j < order.size(); ++j)
            if (order[i] > order[j] && is_odd(degrees[static_cast<std::size_t>(order[i])]) &&
                is_odd(degrees[static_cast<std::size_t>(order[j])]))
                ++flips;
    return sign_of(flips);
}

/// pr Q^2 on a basis word: sum over unshuffles of Q(Q(x_T), x_rest), plus the coefficient
/// differential applied to Q(x). Zero for every word iff the structure is L-infinity.
template <class C>
Vec<C> linfty_relation(const GradedSpace& space, const Multilinear<C>& ops, const MultiIndex& word)
{
    const int n = static_cast<int>(word.size());
    std::vector<int> degrees;
    for (int i : word) degrees.push_back(space.degree(i));
    std::vector<Vec<C>> units;
    for (int i : word) units.push_back(unit_vec<C>(space, i));

    Vec<C> total = zero_vec<C>(space);
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<const Vec<C>*> inner_args, outer_rest;
        for (int p = 0; p < n; ++p) {
            if (mask & (1u << p))
                inner_args.push_back(&units[static_cast<std::size_t>(p)]);
            else
                outer_rest.push_back(&units[static_cast<std::size_t>(p)]);
        }
        Vec<C> inner = apply(space, space, ops, inner_args);
        if (is_zero_vec(inner)) continue;
        std::vector<const Vec<C>*> outer_args{&inner};
        outer_args.insert(outer_args.end(), outer_rest.begin(), outer_rest.end());
        Vec<C> term = apply(space, space, ops, outer_args);
        if (unshuffle_sign(degrees, mask) < 0)
            sub_from(total, term);
        else
            add_to(total, term);
    }
    std::vector<const Vec<C>*> all;
    for (auto& u : units) all.push_back(&u);
    add_to(total, coefficient_differential(space, apply(space, space, ops, all)));
    return total;
}

/// pr (F Q - Q~ F) on a basis word, including the coefficient differential term.
template <class C>
Vec<C> morphism_relation(const GradedSpace& src, const GradedSpace& tgt, const Multilinear<C>& src_ops,
                         const Multilinear<C>& tgt_ops, const Multilinear<C>& components, const MultiIndex& word)
{
    const int n = static_cast<int>(word.size());
    std::vector<int> degrees;
    for (int i : word) degrees.push_back(src.degree(i));
    std::vector<Vec<C>> units;
    for (int i : word) units.push_back(unit_vec<C>(src, i));

    Vec<C> total = zero_vec<C>(tgt);
    // F(Q(x_T), x_rest)
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<const Vec<C>*> inner_args, rest;
        for (int p = 0; p < n; ++p) {
            if (mask & (1u << p))
                inner_args.push_back(&units[static_cast<std::size_t>(p)]);
            else
                rest.push_back(&units[static_cast<std::size_t>(p)]);
        }
        Vec<C> inner = apply(src, src, src_ops, inner_args);
        if (is_zero_vec(inner)) continue;
        std::vector<const Vec<C>*> outer_args{&inner};
        outer_args.insert(outer_args.end(), rest.begin(), rest.end());
        Vec<C> term = apply(src, tgt, components, outer_args);
        if (unshuffle_sign(degrees, mask) < 0)
            sub_from(total, term);
        else
            add_to(total, term);
    }
    // - Q~(F(B_1), ..., F(B_k))
    for (const auto& blocks : set_partitions(n)) {
        std::vector<Vec<C>> images;
        bool zero = false;
        for (const auto& b : blocks) {
            std::vector<const Vec<C>*> args;
            for (int p : b) args.push_back(&units[static_cast<std::size_t>(p)]);
            images.push_back(apply(src, tgt, components, args));
            if (is_zero_vec(images.back())) {
                zero = true;
                break;
            }
        }
        if (zero) continue;
        std::vector<const Vec<C>*> args;
        for (auto& v : images) args.push_back(&v);
        Vec<C> term = apply(tgt, tgt, tgt_ops, args);
        if (partition_sign(degrees, blocks) < 0)
            add_to(total, term);
        else
            sub_from(total, term);
    }
    std::vector<const Vec<C>*> all;
    for (auto& u : units) all.push_back(&u);
    sub_from(total, coefficient_differential(tgt, apply(src, tgt, components, all)));
    return total;
}

/// Value of the composite coalgebra map (outer o inner)' on a basis word.
template <class C>
Vec<C> composite_on_word(const GradedSpace& src, const GradedSpace& mid, const GradedSpace& tgt,
                         const Multilinear<C>& inner, const Multilinear<C>& outer, const MultiIndex& word)
{
    const int n = static_cast<int>(word.size());
    std::vector<int> degrees;
    for (int i : word) degrees.push_back(src.degree(i));
    std::vector<Vec<C>> units;
    for (int i : word) units.push_back(unit_vec<C>(src, i));
    Vec<C> total = zero_vec<C>(tgt);
    for (const auto& blocks : set_partitions(n)) {
        std::vector<Vec<C>> images;
        bool zero = false;
        for (const auto& b : blocks) {
            std::vector<const Vec<C>*> args;
            for (int p : b) args.push_back(&units[static_cast<std::size_t>(p)]);
            images.push_back(apply(src, mid, inner, args));
            if (is_zero_vec(images.back())) {
                zero = true;
                break;
            }
        }
        if (zero) continue;
        std::vector<const Vec<C>*> args;
        for (auto& v : images) args.push_back(&v);
        Vec<C> term = apply(mid, tgt, outer, args);
        if (partition_sign(degrees, blocks) < 0)
            sub_from(total, term);
        else
            add_to(total, term);
    }
    return total;
}

/// curv(x) = sum_{m >= 1} (1/m!) Q_m(x, ..., x) + d_R x. The m = 1 term is the differential.
template <class S, class C>
Vec<C> curvature(const GradedSpace& space, const Multilinear<S>& ops, const Vec<C>& x)
{
    Vec<C> total = coefficient_differential(space, x);
    const int top = ops.max_arity();
    for (int m = 1; m <= top; ++m) add_to(total, scaled(apply_power(space, space, ops, x, m), 1 / factorial(m)));
    return total;
}

/// sum_{m >= 1} (1/m!) F_m(x, ..., x).
template <class S, class C>
Vec<C> pushforward_element(const GradedSpace& src, const GradedSpace& tgt, const Multilinear<S>& components, const Vec<C>& x)
{
    Vec<C> total = zero_vec<C>(tgt);
    const int top = components.max_arity();
    for (int m = 1; m <= top; ++m) add_to(total, scaled(apply_power(src, tgt, components, x, m), 1 / factorial(m)));
    return total;
}

/// Twisted differential d^x(v) = sum_{k >= 0} (1/k!) Q_{k+1}(x, ..., x, v) (structure part only).
template <class S, class C>
Vec<C> twisted_structure_apply(const GradedSpace& space, const Multilinear<S>& ops, const Vec<C>& x,
                               const std::vector<const Vec<C>*>& vs)
{
    Vec<C> total = zero_vec<C>(space);
    const int top = ops.max_arity();
    const int m = static_cast<int>(vs.size());
    for (int k = 0; k + m <= top; ++k) {
        std::vector<const Vec<C>*> args(static_cast<std::size_t>(k), &x);
        args.insert(args.end(), vs.begin(), vs.end());
        add_to(total, scaled(apply(space, space, ops, args), 1 / factorial(k)));
    }
    return total;
}

} // namespace linfty
