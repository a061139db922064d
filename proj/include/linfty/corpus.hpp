#pragma once

#include "linfty/linfty.hpp"

#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace linfty {

/// Small declarative helper for hand-written algebras.
class AlgebraBuilder {
public:
    AlgebraBuilder& element(std::string name, int degree, int weight)
    {
        basis_.push_back({std::move(name), degree, weight});
        return *this;
    }

    /// Q(inputs...) gains coeff * out. Arity 1 is the differential.
    AlgebraBuilder& op(std::vector<std::string> inputs, std::string out, Rational coeff = 1)
    {
        ops_.emplace_back(std::move(inputs), std::move(out), std::move(coeff));
        return *this;
    }

    [[nodiscard]] GradedSpace space() const { return GradedSpace(basis_); }

    [[nodiscard]] LInftyAlgebra build(int truncation, int arity_cap = 0) const
    {
        GradedSpace s(basis_);
        Multilinear<Rational> ops;
        for (const auto& [in, out, c] : ops_) {
            MultiIndex w;
            for (const auto& n : in) w.push_back(s.index_of(n));
            ops.add(s, w, s.index_of(out), c);
        }
        return LInftyAlgebra(s, std::move(ops), truncation, arity_cap);
    }

private:
    std::vector<BasisElement> basis_;
    std::vector<std::tuple<std::vector<std::string>, std::string, Rational>> ops_;
};

inline Multilinear<Rational> components_from(const GradedSpace& src, const GradedSpace& tgt,
                                             const std::vector<std::tuple<std::vector<std::string>, std::string, Rational>>& terms)
{
    Multilinear<Rational> f;
    for (const auto& [in, out, c] : terms) {
        MultiIndex w;
        for (const auto& n : in) w.push_back(src.index_of(n));
        f.add(src, w, tgt.index_of(out), c);
    }
    return f;
}

namespace corpus {

/// Abelian: e -> x, z -> y, c a free cocycle.
inline LInftyAlgebra abelian()
{
    return AlgebraBuilder()
        .element("e", -1, 1)
        .element("x", 0, 1)
        .element("c", 0, 1)
        .element("z", 0, 2)
        .element("y", 1, 2)
        .op({"e"}, "x")
        .op({"z"}, "y")
        .build(3);
}

/// x deg 0 wt 1, y deg 1 wt 2, {x,x} = y.
inline LInftyAlgebra dglie_minimal()
{
    return AlgebraBuilder().element("x", 0, 1).element("y", 1, 2).op({"x", "x"}, "y").build(3);
}

/// Two-term dg Lie algebra with a nontrivial MC locus ab + d = 0.
inline LInftyAlgebra dglie()
{
    return AlgebraBuilder()
        .element("e", -1, 1)
        .element("x1", 0, 1)
        .element("x2", 0, 1)
        .element("p", 0, 2)
        .element("r", 0, 2)
        .element("y", 1, 2)
        .op({"e"}, "x1")
        .op({"r"}, "y")
        .op({"x1", "x2"}, "y")
        .op({"e", "x2"}, "r", -1)
        .build(3);
}

/// Degrees -1, 0, 1 with a ternary bracket {x,x,x} = y.
inline LInftyAlgebra linf3()
{
    return AlgebraBuilder()
        .element("e", -1, 1)
        .element("x", 0, 1)
        .element("c", 0, 1)
        .element("z", 0, 3)
        .element("y", 1, 3)
        .op({"e"}, "x")
        .op({"z"}, "y")
        .op({"x", "x", "x"}, "y")
        .op({"e", "x", "x"}, "z", -1)
        .build(4);
}

/// Filtration of depth 4 (weights 1, 2, 3).
inline LInftyAlgebra depth4()
{
    return AlgebraBuilder()
        .element("a", 0, 1)
        .element("b", 0, 1)
        .element("f", 0, 2)
        .element("z", 0, 2)
        .element("h", 0, 3)
        .element("c", 1, 2)
        .element("g", 1, 3)
        .op({"f"}, "c")
        .op({"h"}, "g")
        .op({"a", "b"}, "c")
        .op({"a", "f"}, "g")
        .op({"b", "f"}, "g")
        .build(4);
}

/// Target of the bundled fibration: the weight-1 abelianization of dglie().
inline LInftyAlgebra dglie_abelianization() { return quotient(dglie(), 2); }

inline InftyMorphism fibration() { return name_projection(dglie(), dglie_abelianization()); }

/// depth4() -> depth4() with F_1 = id and F_2(a,a) = z.
inline InftyMorphism depth4_nonstrict()
{
    auto L = depth4();
    auto comps = identity_morphism(L).components();
    comps.merge(components_from(L.space(), L.space(), {{{"a", "a"}, "z", 1}}));
    return InftyMorphism(L, L, comps);
}

/// dg Lie algebra B for homotopy transfer: d b1 = b2, d u1 = d u2 = w,
/// {a,a} = e + w, {a,b1} = e, {a,u1} = f.
inline LInftyAlgebra htt_B()
{
    return AlgebraBuilder()
        .element("a", 0, 1)
        .element("b1", 0, 1)
        .element("b2", 1, 1)
        .element("u1", 0, 2)
        .element("u2", 0, 2)
        .element("w", 1, 2)
        .element("e", 1, 2)
        .element("f", 1, 3)
        .op({"b1"}, "b2")
        .op({"u1"}, "w")
        .op({"u2"}, "w")
        .op({"a", "a"}, "e")
        .op({"a", "a"}, "w")
        .op({"a", "b1"}, "e")
        .op({"a", "u1"}, "f")
        .build(4);
}

/// H(htt_B()) with zero differential.
inline LInftyAlgebra htt_A()
{
    return AlgebraBuilder().element("a'", 0, 1).element("h'", 0, 2).element("e'", 1, 2).element("f'", 1, 3).build(4);
}

/// Cocycle section H(B) -> B.
inline GradedMap htt_phi()
{
    auto A = htt_A().space();
    auto B = htt_B().space();
    GradedMap phi(A, B, 0);
    phi.set(B.index_of("a"), A.index_of("a'"), 1);
    phi.set(B.index_of("u1"), A.index_of("h'"), 1);
    phi.set(B.index_of("u2"), A.index_of("h'"), -1);
    phi.set(B.index_of("e"), A.index_of("e'"), 1);
    phi.set(B.index_of("f"), A.index_of("f'"), 1);
    return phi;
}

/// A complex missing the classes e and f, so phi is not a quasi-isomorphism.
inline LInftyAlgebra htt_A_broken() { return AlgebraBuilder().element("a'", 0, 1).element("h'", 0, 2).build(4); }

inline GradedMap htt_phi_broken()
{
    auto A = htt_A_broken().space();
    auto B = htt_B().space();
    GradedMap phi(A, B, 0);
    phi.set(B.index_of("a"), A.index_of("a'"), 1);
    phi.set(B.index_of("u1"), A.index_of("h'"), 1);
    phi.set(B.index_of("u2"), A.index_of("h'"), -1);
    return phi;
}

/// The nilpotent algebras of the corpus, keyed by name.
inline std::map<std::string, LInftyAlgebra> algebras()
{
    return {{"abelian", abelian()},           {"dglie", dglie()},   {"linf3", linf3()},
            {"depth4", depth4()},             {"dglie_ab", dglie_abelianization()},
            {"htt_B", htt_B()},               {"htt_A", htt_A()}};
}

} // namespace corpus
} // namespace linfty
