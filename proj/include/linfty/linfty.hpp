#pragma once

#include "linfty/chain_complex.hpp"
#include "linfty/multilinear.hpp"

#include <optional>
#include <string>
#include <vector>

namespace linfty {

/// Nonzero value of an identity on a basis word.
struct Residual {
    std::string identity;
    MultiIndex word;
    Vec<Rational> value;
};

struct CheckReport {
    int checked = 0;
    std::vector<Residual> violations;

    [[nodiscard]] bool ok() const { return violations.empty(); }
    [[nodiscard]] const Residual* first_failure() const { return violations.empty() ? nullptr : &violations.front(); }
};

inline std::string vec_to_string(const GradedSpace& s, const Vec<Rational>& v)
{
    std::string out;
    for (int i = 0; i < s.dim(); ++i) {
        const auto& c = v[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        if (!out.empty()) out += " + ";
        out += to_string(c) + "*" + s.name(i);
    }
    return out.empty() ? "0" : out;
}

/// Nilpotent shifted L-infinity algebra. The arity-1 operation is the differential;
/// every basis weight is below the truncation depth N, so F_N = 0.
class LInftyAlgebra {
public:
    LInftyAlgebra() : truncation_(2), arity_cap_(1) {}

    LInftyAlgebra(GradedSpace space, Multilinear<Rational> ops, int truncation, int arity_cap = 0)
        : space_(std::move(space)), ops_(std::move(ops)), truncation_(truncation),
          arity_cap_(arity_cap > 0 ? arity_cap : std::max(1, truncation - 1))
    {
        validate();
    }

    [[nodiscard]] const GradedSpace& space() const { return space_; }
    [[nodiscard]] const Multilinear<Rational>& ops() const { return ops_; }
    [[nodiscard]] int truncation() const { return truncation_; }
    [[nodiscard]] int arity_cap() const { return arity_cap_; }
    [[nodiscard]] Multilinear<Rational> bracket(int m) const { return ops_.arity_part(m); }

    [[nodiscard]] GradedMap differential() const
    {
        GradedMap d(space_, space_, 1);
        for (const auto& [w, img] : ops_.terms())
            if (w.size() == 1)
                for (const auto& [k, c] : img) d.set(k, w[0], c);
        return d;
    }

    [[nodiscard]] ChainComplex complex() const { return ChainComplex(differential()); }

    [[nodiscard]] bool is_abelian() const { return ops_.max_arity() <= 1; }

    bool operator==(const LInftyAlgebra& o) const
    {
        return space_ == o.space_ && ops_ == o.ops_ && truncation_ == o.truncation_ && arity_cap_ == o.arity_cap_;
    }

private:
    void validate() const
    {
        if (truncation_ < 2) throw ValidationError("truncation depth must be at least 2");
        for (int i = 0; i < space_.dim(); ++i)
            if (space_.weight(i) >= truncation_)
                throw ValidationError("basis element '" + space_.name(i) + "' has weight " +
                                      std::to_string(space_.weight(i)) + " >= truncation depth " +
                                      std::to_string(truncation_));
        for (const auto& [w, img] : ops_.terms()) {
            const int m = static_cast<int>(w.size());
            if (m > arity_cap_)
                throw ValidationError("operation of arity " + std::to_string(m) + " exceeds arity cap " +
                                      std::to_string(arity_cap_));
            const int deg = total_degree(space_, w) + 1;
            const int wt = total_weight(space_, w);
            for (const auto& [k, c] : img) {
                if (space_.degree(k) != deg)
                    throw ValidationError("operation on " + word_to_string(space_, w) + " hits '" + space_.name(k) +
                                          "' of degree " + std::to_string(space_.degree(k)) + ", expected " +
                                          std::to_string(deg));
                if (space_.weight(k) < wt)
                    throw ValidationError("operation on " + word_to_string(space_, w) + " lowers weight into '" +
                                          space_.name(k) + "'");
            }
        }
        (void)complex();
    }

    GradedSpace space_;
    Multilinear<Rational> ops_;
    int truncation_;
    int arity_cap_;
};

/// Infinity-morphism given by its components F_m : S^m(source) -> target, m >= 1.
class InftyMorphism {
public:
    InftyMorphism() = default;

    InftyMorphism(LInftyAlgebra source, LInftyAlgebra target, Multilinear<Rational> components)
        : source_(std::move(source)), target_(std::move(target)), components_(std::move(components))
    {
        validate();
    }

    [[nodiscard]] const LInftyAlgebra& source() const { return source_; }
    [[nodiscard]] const LInftyAlgebra& target() const { return target_; }
    [[nodiscard]] const Multilinear<Rational>& components() const { return components_; }

    [[nodiscard]] GradedMap linear_term() const
    {
        GradedMap f(source_.space(), target_.space(), 0);
        for (const auto& [w, img] : components_.terms())
            if (w.size() == 1)
                for (const auto& [k, c] : img) f.set(k, w[0], c);
        return f;
    }

    [[nodiscard]] bool is_strict() const { return components_.max_arity() <= 1; }

private:
    void validate() const
    {
        const auto& s = source_.space();
        const auto& t = target_.space();
        for (const auto& [w, img] : components_.terms()) {
            const int deg = total_degree(s, w);
            const int wt = total_weight(s, w);
            for (const auto& [k, c] : img) {
                if (t.degree(k) != deg)
                    throw ValidationError("morphism component on " + word_to_string(s, w) + " hits '" + t.name(k) +
                                          "' of the wrong degree");
                if (t.weight(k) < wt)
                    throw ValidationError("morphism component on " + word_to_string(s, w) + " lowers weight into '" +
                                          t.name(k) + "'");
            }
        }
    }

    LInftyAlgebra source_;
    LInftyAlgebra target_;
    Multilinear<Rational> components_;
};

/// Q^2 = 0 on every basis word of total weight < N.
inline CheckReport check_linfty(const LInftyAlgebra& L)
{
    CheckReport r;
    const auto& s = L.space();
    for (int n = 1; n < L.truncation(); ++n) {
        for (const auto& w : symmetric_words(s, n, L.truncation())) {
            ++r.checked;
            auto v = linfty_relation(s, L.ops(), w);
            if (!is_zero_vec(v)) r.violations.push_back({"Q^2 = 0 at arity " + std::to_string(n), w, std::move(v)});
        }
    }
    return r;
}

/// F Q = Q~ F on every basis word whose image can be nonzero in the target.
inline CheckReport check_morphism(const InftyMorphism& F)
{
    CheckReport r;
    const auto& s = F.source().space();
    const int bound = F.target().truncation();
    for (int n = 1; n < bound; ++n) {
        for (const auto& w : symmetric_words(s, n, bound)) {
            ++r.checked;
            auto v = morphism_relation(s, F.target().space(), F.source().ops(), F.target().ops(), F.components(), w);
            if (!is_zero_vec(v)) r.violations.push_back({"F Q = Q F at arity " + std::to_string(n), w, std::move(v)});
        }
    }
    return r;
}

inline void require_degree(const GradedSpace& s, const Vec<Rational>& x, int degree, const char* what)
{
    if (static_cast<int>(x.size()) != s.dim()) throw std::invalid_argument(std::string(what) + ": wrong length");
    for (int i = 0; i < s.dim(); ++i)
        if (x[static_cast<std::size_t>(i)] != 0 && s.degree(i) != degree)
            throw ValidationError(std::string(what) + ": component '" + s.name(i) + "' has degree " +
                                  std::to_string(s.degree(i)) + ", expected " + std::to_string(degree));
}

inline Vec<Rational> curv(const LInftyAlgebra& L, const Vec<Rational>& alpha)
{
    require_degree(L.space(), alpha, 0, "curv");
    return curvature(L.space(), L.ops(), alpha);
}

inline bool is_mc(const LInftyAlgebra& L, const Vec<Rational>& alpha) { return is_zero_vec(curv(L, alpha)); }

inline Vec<Rational> pushforward(const InftyMorphism& F, const Vec<Rational>& alpha)
{
    if (!is_mc(F.source(), alpha)) throw ValidationError("pushforward: input is not a Maurer-Cartan element");
    auto out = pushforward_element(F.source().space(), F.target().space(), F.components(), alpha);
    if (!is_mc(F.target(), out))
        throw ValidationError("pushforward: image is not Maurer-Cartan (the morphism is broken)");
    return out;
}

/// L^alpha: every operation replaced by sum_k (1/k!) Q_{k+m}(alpha^k, -).
inline LInftyAlgebra twist(const LInftyAlgebra& L, const Vec<Rational>& alpha)
{
    if (!is_mc(L, alpha)) throw ValidationError("twist: element is not Maurer-Cartan");
    const auto& s = L.space();
    Multilinear<Rational> ops;
    for (int m = 1; m <= L.arity_cap(); ++m) {
        for (const auto& w : symmetric_words(s, m, L.truncation())) {
            std::vector<Vec<Rational>> units;
            for (int i : w) units.push_back(unit_vec<Rational>(s, i));
            std::vector<const Vec<Rational>*> args;
            for (auto& u : units) args.push_back(&u);
            ops.set(w, twisted_structure_apply(s, L.ops(), alpha, args));
        }
    }
    return LInftyAlgebra(s, std::move(ops), L.truncation(), L.arity_cap());
}

/// Re-indexes `ops` from `from` onto the sub-basis `to` (matched by name), dropping
/// any word or output that is not present in `to`.
inline Multilinear<Rational> restrict_ops(const Multilinear<Rational>& ops, const GradedSpace& from, const GradedSpace& to)
{
    Multilinear<Rational> out;
    for (const auto& [w, img] : ops.terms()) {
        MultiIndex nw;
        bool keep = true;
        for (int i : w) {
            auto j = to.find(from.name(i));
            if (!j) {
                keep = false;
                break;
            }
            nw.push_back(*j);
        }
        if (!keep) continue;
        for (const auto& [k, c] : img)
            if (auto j = to.find(from.name(k))) out.add(to, nw, *j, c);
    }
    return out;
}

/// Strict morphism whose linear term sends each basis element of `source` to the
/// element of the same name in `target` (zero when absent).
inline InftyMorphism name_projection(const LInftyAlgebra& source, const LInftyAlgebra& target)
{
    Multilinear<Rational> comps;
    for (int i = 0; i < source.space().dim(); ++i)
        if (auto j = target.space().find(source.space().name(i))) comps.add(source.space(), {i}, *j, 1);
    return InftyMorphism(source, target, std::move(comps));
}

/// L / F_n L.
inline LInftyAlgebra quotient(const LInftyAlgebra& L, int n)
{
    if (n < 2 || n > L.truncation())
        throw std::invalid_argument("quotient depth " + std::to_string(n) + " outside [2, " +
                                    std::to_string(L.truncation()) + "]");
    if (n == L.truncation()) return L;
    auto q = L.space().truncated(n);
    return LInftyAlgebra(q, restrict_ops(L.ops(), L.space(), q), n, std::min(L.arity_cap(), n - 1));
}

struct TowerStage {
    LInftyAlgebra quotient;   // L / F_n
    LInftyAlgebra previous;   // L / F_{n-1}
    LInftyAlgebra kernel;     // F_{n-1} / F_n, abelian
    InftyMorphism projection; // p_n : L/F_n -> L/F_{n-1}
    InftyMorphism inclusion;  // i_{n-1} : kernel -> L/F_n
};

inline TowerStage quotient_tower(const LInftyAlgebra& L, int n)
{
    if (n < 2 || n > L.truncation())
        throw std::invalid_argument("tower index " + std::to_string(n) + " outside [2, " +
                                    std::to_string(L.truncation()) + "]");
    auto Qn = quotient(L, n);
    LInftyAlgebra prev = n > 2 ? quotient(L, n - 1) : LInftyAlgebra(GradedSpace{}, {}, 2, 1);
    std::vector<BasisElement> kb;
    for (const auto& b : Qn.space().basis())
        if (b.weight == n - 1) kb.push_back(b);
    GradedSpace ks(kb);
    LInftyAlgebra K(ks, restrict_ops(Qn.ops().arity_part(1), Qn.space(), ks), n, 1);
    auto p = name_projection(Qn, prev);
    auto i = name_projection(K, Qn);
    return {std::move(Qn), std::move(prev), std::move(K), std::move(p), std::move(i)};
}

struct Classification {
    bool weak_equivalence = false;
    bool fibration = false;
    bool acyclic_fibration = false;
};

inline Classification classify_morphism(const InftyMorphism& F)
{
    auto f = F.linear_term();
    auto src = F.source().complex();
    auto tgt = F.target().complex();
    Classification c;
    c.weak_equivalence = is_quasi_iso_on_filtration(f, src, tgt);
    c.fibration = is_surjective_on_filtration(f, src, tgt);
    c.acyclic_fibration = c.weak_equivalence && c.fibration;
    return c;
}

/// Psi o Phi via the sum over set partitions.
inline InftyMorphism compose(const InftyMorphism& psi, const InftyMorphism& phi)
{
    if (!(phi.target() == psi.source())) throw std::invalid_argument("compose: target of the first map is not the source of the second");
    const auto& s = phi.source().space();
    const int bound = psi.target().truncation();
    Multilinear<Rational> comps;
    for (int n = 1; n < bound; ++n)
        for (const auto& w : symmetric_words(s, n, bound))
            comps.set(w, composite_on_word(s, phi.target().space(), psi.target().space(), phi.components(),
                                           psi.components(), w));
    return InftyMorphism(phi.source(), psi.target(), std::move(comps));
}

inline InftyMorphism identity_morphism(const LInftyAlgebra& L) { return name_projection(L, L); }

inline InftyMorphism strict_morphism(const LInftyAlgebra& source, const LInftyAlgebra& target, const GradedMap& f)
{
    Multilinear<Rational> comps;
    for (const auto& [key, c] : f.entries()) comps.add(source.space(), {key.second}, key.first, c);
    return InftyMorphism(source, target, std::move(comps));
}

inline LInftyAlgebra zero_algebra(int truncation = 2) { return LInftyAlgebra(GradedSpace{}, {}, truncation, 1); }

} // namespace linfty
