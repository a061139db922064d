#pragma once

#include "linfty/rational.hpp"

#include <array>
#include <bit>
#include <cctype>
#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace linfty {

/// Polynomial differential forms on the n-simplex with rational coefficients (Omega_n).
///
/// Coordinates: vertex i of the n-simplex is the point t_i = 1, t_j = 0 (j != i).
/// t_0 and dt_0 are eliminated through t_0 = 1 - sum t_i and dt_0 = -sum dt_i, so a
/// form is stored as a sum of c * t^e * dt_S with S a strictly increasing subset of
/// {1..n}. This canonical form makes equality of forms an exact structural test.
///
/// Forms on different simplices may be combined: a constant is a form on every
/// simplex, and the result of an operation lives on the larger of the two.
class PolyForm {
public:
    static constexpr int kSlots = 8;
    /// Highest supported simplex dimension; the top slot is scratch space for the homotopy.
    static constexpr int kMaxDim = kSlots - 2;

    struct Key {
        std::array<std::uint16_t, kSlots> exp{};
        std::uint16_t wedge = 0; // bit (i-1) <-> dt_i

        auto operator<=>(const Key&) const = default;
        [[nodiscard]] int form_degree() const { return std::popcount(wedge); }
        [[nodiscard]] int poly_degree() const
        {
            int d = 0;
            for (auto e : exp) d += e;
            return d;
        }
    };

    using Terms = std::map<Key, Rational>;

    PolyForm() = default;
    explicit PolyForm(int n) : n_(check_dim(n)) {}

    static PolyForm constant(const Rational& c, int n = 0)
    {
        PolyForm f(n);
        if (c != 0) f.terms_[Key{}] = c;
        return f;
    }
    /// The coordinate function t_i, 1 <= i <= n.
    static PolyForm t(int i, int n)
    {
        PolyForm f(n);
        check_var(i, n);
        Key k;
        k.exp[static_cast<std::size_t>(i - 1)] = 1;
        f.terms_[k] = 1;
        return f;
    }
    /// The one-form dt_i, 1 <= i <= n.
    static PolyForm dt(int i, int n)
    {
        PolyForm f(n);
        check_var(i, n);
        Key k;
        k.wedge = static_cast<std::uint16_t>(1u << (i - 1));
        f.terms_[k] = 1;
        return f;
    }
    static PolyForm monomial(const Rational& c, const Key& k, int n)
    {
        PolyForm f(n);
        if (c != 0) f.terms_[k] = c;
        return f;
    }

    [[nodiscard]] int n() const { return n_; }
    [[nodiscard]] const Terms& terms() const { return terms_; }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }

    /// Form degree of a homogeneous form (0 for the zero form).
    [[nodiscard]] int form_degree() const { return terms_.empty() ? 0 : terms_.begin()->first.form_degree(); }

    [[nodiscard]] bool is_homogeneous() const
    {
        for (const auto& [k, c] : terms_)
            if (k.form_degree() != form_degree()) return false;
        return true;
    }

    [[nodiscard]] int poly_degree() const
    {
        int d = 0;
        for (const auto& [k, c] : terms_) d = std::max(d, k.poly_degree());
        return d;
    }

    /// The same form regarded on the n-simplex.
    [[nodiscard]] PolyForm on(int n) const
    {
        for (const auto& [k, c] : terms_)
            for (int i = n; i < kSlots; ++i)
                if (k.exp[static_cast<std::size_t>(i)] || (k.wedge & (1u << i)))
                    throw std::out_of_range("form uses t" + std::to_string(i + 1) + " on a " + std::to_string(n) + "-simplex");
        PolyForm f = *this;
        f.n_ = check_dim(n);
        return f;
    }

    /// Part of the given form degree.
    [[nodiscard]] PolyForm part(int form_degree) const
    {
        PolyForm f(n_);
        for (const auto& [k, c] : terms_)
            if (k.form_degree() == form_degree) f.terms_.emplace(k, c);
        return f;
    }

    PolyForm& operator+=(const PolyForm& o)
    {
        n_ = std::max(n_, o.n_);
        for (const auto& [k, c] : o.terms_) accumulate(k, c);
        return *this;
    }
    PolyForm& operator-=(const PolyForm& o)
    {
        n_ = std::max(n_, o.n_);
        for (const auto& [k, c] : o.terms_) accumulate(k, -c);
        return *this;
    }
    PolyForm& operator*=(const Rational& s)
    {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [k, c] : terms_) c *= s;
        return *this;
    }

    friend PolyForm operator+(PolyForm a, const PolyForm& b) { return a += b; }
    friend PolyForm operator-(PolyForm a, const PolyForm& b) { return a -= b; }
    friend PolyForm operator-(PolyForm a)
    {
        for (auto& [k, c] : a.terms_) c = -c;
        return a;
    }
    friend PolyForm operator*(PolyForm a, const Rational& s) { return a *= s; }
    friend PolyForm operator*(const Rational& s, PolyForm a) { return a *= s; }

    /// Wedge product, graded commutative with Koszul sign on form degrees.
    friend PolyForm operator*(const PolyForm& a, const PolyForm& b) { return wedge(a, b); }

    friend PolyForm wedge(const PolyForm& a, const PolyForm& b)
    {
        PolyForm r(std::max(a.n_, b.n_));
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_) {
                if (ka.wedge & kb.wedge) continue;
                Key k;
                for (int i = 0; i < kSlots; ++i)
                    k.exp[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>(ka.exp[static_cast<std::size_t>(i)] + kb.exp[static_cast<std::size_t>(i)]);
                k.wedge = static_cast<std::uint16_t>(ka.wedge | kb.wedge);
                // moving each dt of b left past the larger dt's of a
                int inversions = 0;
                for (int bit = 0; bit < kSlots; ++bit)
                    if (kb.wedge & (1u << bit)) inversions += std::popcount(static_cast<unsigned>(ka.wedge >> (bit + 1)));
                Rational c = ca * cb;
                if (inversions % 2) c = -c;
                r.accumulate(k, c);
            }
        return r;
    }

    bool operator==(const PolyForm& o) const { return terms_ == o.terms_; }

    /// Exterior derivative.
    [[nodiscard]] PolyForm d() const
    {
        PolyForm r(n_);
        for (const auto& [k, c] : terms_)
            for (int i = 0; i < kSlots; ++i) {
                auto e = k.exp[static_cast<std::size_t>(i)];
                if (e == 0 || (k.wedge & (1u << i))) continue;
                Key nk = k;
                nk.exp[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>(e - 1);
                nk.wedge = static_cast<std::uint16_t>(k.wedge | (1u << i));
                int below = std::popcount(static_cast<unsigned>(k.wedge & ((1u << i) - 1)));
                Rational v = c * e;
                if (below % 2) v = -v;
                r.accumulate(nk, v);
            }
        return r;
    }

    /// Value of the degree-0 part at vertex v (0 <= v <= n); higher form degrees evaluate to 0.
    [[nodiscard]] Rational eval_vertex(int v) const
    {
        if (v < 0 || v > std::max(n_, 0)) throw std::out_of_range("vertex index out of range");
        Rational s = 0;
        for (const auto& [k, c] : terms_) {
            if (k.wedge) continue;
            bool one = true;
            for (int i = 0; i < kSlots && one; ++i) {
                auto e = k.exp[static_cast<std::size_t>(i)];
                if (e && i + 1 != v) one = false;
            }
            if (one) s += c;
        }
        return s;
    }

    /// Pullback along the coface map omitting vertex i: a form on the (n-1)-simplex.
    [[nodiscard]] PolyForm face(int i) const
    {
        if (n_ < 1 || i < 0 || i > n_) throw std::out_of_range("face index out of range");
        const int m = n_ - 1;
        std::vector<PolyForm> img(static_cast<std::size_t>(n_ + 1));
        for (int j = 1; j <= n_; ++j) {
            if (i == 0) {
                if (j == 1) {
                    PolyForm u = constant(1, m);
                    for (int l = 1; l <= m; ++l) u -= t(l, m);
                    img[static_cast<std::size_t>(j)] = u;
                } else {
                    img[static_cast<std::size_t>(j)] = t(j - 1, m);
                }
            } else if (j < i) {
                img[static_cast<std::size_t>(j)] = t(j, m);
            } else if (j == i) {
                img[static_cast<std::size_t>(j)] = PolyForm(m);
            } else {
                img[static_cast<std::size_t>(j)] = t(j - 1, m);
            }
        }
        return pullback(img, m);
    }

    /// Pullback along the codegeneracy collapsing vertices j, j+1: a form on the (n+1)-simplex.
    [[nodiscard]] PolyForm degeneracy(int j) const
    {
        if (j < 0 || j > n_ || n_ + 1 > kMaxDim) throw std::out_of_range("degeneracy index out of range");
        const int m = n_ + 1;
        std::vector<PolyForm> img(static_cast<std::size_t>(n_ + 1));
        for (int i = 1; i <= n_; ++i) {
            if (i < j)
                img[static_cast<std::size_t>(i)] = t(i, m);
            else if (i == j)
                img[static_cast<std::size_t>(i)] = t(i, m) + t(i + 1, m);
            else
                img[static_cast<std::size_t>(i)] = t(i + 1, m);
        }
        return pullback(img, m);
    }

    /// Radial contraction toward vertex v: h with dh + hd = id - (evaluation at v), preserving
    /// polynomiality and commuting with restriction to every face that contains v.
    [[nodiscard]] PolyForm dilation_homotopy(int v) const
    {
        if (v < 0 || v > n_) throw std::out_of_range("vertex index out of range");
        const int s_slot = kSlots - 1;
        auto p = [&](int i) { return Rational(i == v ? 1 : 0); };
        // substitution t_i -> p_i + s (t_i - p_i)
        std::vector<PolyForm> img(static_cast<std::size_t>(n_ + 1));
        Key sk;
        sk.exp[static_cast<std::size_t>(s_slot)] = 1;
        PolyForm s = monomial(1, sk, n_);
        for (int i = 1; i <= n_; ++i)
            img[static_cast<std::size_t>(i)] = constant(p(i), n_) + s * (t(i, n_) - constant(p(i), n_));

        PolyForm out(n_);
        for (const auto& [k, c] : terms_) {
            const int deg = k.form_degree();
            if (deg == 0) continue;
            Key poly = k;
            poly.wedge = 0;
            PolyForm g = monomial(c, poly, n_).pullback_polynomial(img, n_);
            PolyForm integrated(n_);
            for (const auto& [gk, gc] : g.terms_) {
                Key nk = gk;
                int a = nk.exp[static_cast<std::size_t>(s_slot)];
                nk.exp[static_cast<std::size_t>(s_slot)] = 0;
                integrated.accumulate(nk, gc / (a + deg));
            }
            int r = 0;
            for (int i = 1; i <= kSlots; ++i) {
                if (!(k.wedge & (1u << (i - 1)))) continue;
                Key rest;
                rest.wedge = static_cast<std::uint16_t>(k.wedge & ~(1u << (i - 1)));
                PolyForm term = (t(i, n_) - constant(p(i), n_)) * monomial(1, rest, n_) * integrated;
                if (r % 2) term = -term;
                out += term;
                ++r;
            }
        }
        return out;
    }

    /// Canonical text, e.g. "3/2*t1^2*dt1^dt2 - t2".
    [[nodiscard]] std::string to_string() const
    {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [k, c] : terms_) {
            Rational a = abs(c);
            if (first)
                out += c < 0 ? "-" : "";
            else
                out += c < 0 ? " - " : " + ";
            first = false;
            std::vector<std::string> factors;
            for (int i = 0; i < kSlots; ++i) {
                auto e = k.exp[static_cast<std::size_t>(i)];
                if (!e) continue;
                std::string f = "t" + std::to_string(i + 1);
                if (e > 1) f += "^" + std::to_string(e);
                factors.push_back(f);
            }
            if (k.wedge) {
                std::string w;
                for (int i = 0; i < kSlots; ++i)
                    if (k.wedge & (1u << i)) w += (w.empty() ? "" : "^") + std::string("dt") + std::to_string(i + 1);
                factors.push_back(w);
            }
            std::string body;
            if (a != 1 || factors.empty()) body = a.get_str();
            for (const auto& f : factors) body += (body.empty() ? "" : "*") + f;
            out += body;
        }
        return out;
    }

    /// Parses the canonical text grammar; variable indices must not exceed n.
    static PolyForm parse(std::string_view text, int n)
    {
        PolyForm out(n);
        std::string s;
        for (char ch : text)
            if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
        if (s.empty()) throw std::invalid_argument("empty form");
        std::size_t pos = 0;
        bool first = true;
        while (pos < s.size()) {
            bool neg = false;
            if (s[pos] == '+' || s[pos] == '-') {
                neg = s[pos] == '-';
                ++pos;
            } else if (!first) {
                throw std::invalid_argument("expected '+' or '-' in form '" + std::string(text) + "'");
            }
            first = false;
            std::size_t end = pos;
            while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
            std::string term = s.substr(pos, end - pos);
            pos = end;
            if (term.empty()) throw std::invalid_argument("empty term in form '" + std::string(text) + "'");
            try {
                out += parse_term(term, n, neg);
            } catch (const std::out_of_range& e) {
                throw std::invalid_argument(e.what());
            }
        }
        return out;
    }

    /// Substitutes t_i -> images[i] (degree-0 forms on the target simplex); d commutes.
    [[nodiscard]] PolyForm pullback(const std::vector<PolyForm>& images, int target_n) const
    {
        PolyForm r(target_n);
        for (const auto& [k, c] : terms_) {
            Key poly = k;
            poly.wedge = 0;
            PolyForm term = monomial(c, poly, n_).pullback_polynomial(images, target_n);
            for (int i = 0; i < kSlots; ++i)
                if (k.wedge & (1u << i)) term = term * images[static_cast<std::size_t>(i + 1)].d();
            r += term;
        }
        r.n_ = target_n;
        return r;
    }

private:
    static int check_dim(int n)
    {
        if (n < 0 || n > kMaxDim) throw std::out_of_range("simplex dimension out of range");
        return n;
    }
    static void check_var(int i, int n)
    {
        if (i < 1 || i > n) throw std::out_of_range("coordinate index t" + std::to_string(i) + " out of range for n=" + std::to_string(n));
    }

    void accumulate(const Key& k, const Rational& c)
    {
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    /// Pullback of the purely polynomial part (wedge ignored by caller).
    [[nodiscard]] PolyForm pullback_polynomial(const std::vector<PolyForm>& images, int target_n) const
    {
        PolyForm r(target_n);
        for (const auto& [k, c] : terms_) {
            PolyForm term = constant(c, target_n);
            for (int i = 0; i < kSlots; ++i) {
                auto e = k.exp[static_cast<std::size_t>(i)];
                if (!e) continue;
                if (i + 1 >= static_cast<int>(images.size())) {
                    // variable not substituted (e.g. the homotopy parameter)
                    Key vk;
                    vk.exp[static_cast<std::size_t>(i)] = e;
                    term = term * monomial(1, vk, target_n);
                    continue;
                }
                for (int p = 0; p < e; ++p) term = term * images[static_cast<std::size_t>(i + 1)];
            }
            r += term;
        }
        return r;
    }

    static PolyForm parse_term(const std::string& term, int n, bool neg)
    {
        Rational c = 1;
        Key k;
        std::size_t pos = 0;
        int sign_flips = 0;
        while (pos <= term.size()) {
            std::size_t star = term.find('*', pos);
            std::string f = term.substr(pos, star == std::string::npos ? std::string::npos : star - pos);
            if (f.empty()) throw std::invalid_argument("empty factor in term '" + term + "'");
            if (f.rfind("dt", 0) == 0) {
                std::size_t q = 0;
                while (q < f.size()) {
                    std::size_t caret = f.find('^', q);
                    std::string w = f.substr(q, caret == std::string::npos ? std::string::npos : caret - q);
                    if (w.size() < 3 || w.rfind("dt", 0) != 0) throw std::invalid_argument("bad wedge factor '" + f + "'");
                    int i = std::stoi(w.substr(2));
                    check_var(i, n);
                    unsigned bit = 1u << (i - 1);
                    if (k.wedge & bit) return PolyForm(n);
                    sign_flips += std::popcount(static_cast<unsigned>(k.wedge >> i));
                    k.wedge = static_cast<std::uint16_t>(k.wedge | bit);
                    if (caret == std::string::npos) break;
                    q = caret + 1;
                }
            } else if (f[0] == 't') {
                std::size_t caret = f.find('^');
                int i = std::stoi(f.substr(1, caret == std::string::npos ? std::string::npos : caret - 1));
                check_var(i, n);
                int e = caret == std::string::npos ? 1 : std::stoi(f.substr(caret + 1));
                if (e < 0) throw std::invalid_argument("negative exponent in '" + f + "'");
                k.exp[static_cast<std::size_t>(i - 1)] = static_cast<std::uint16_t>(k.exp[static_cast<std::size_t>(i - 1)] + e);
            } else {
                c *= parse_rational(f);
            }
            if (star == std::string::npos) break;
            pos = star + 1;
        }
        if (neg) c = -c;
        if (sign_flips % 2) c = -c;
        return monomial(c, k, n);
    }

    int n_ = 0;
    Terms terms_;
};

} // namespace linfty
