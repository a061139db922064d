#include "linfty/corpus.hpp"
#include "linfty/sampling.hpp"

#include <gtest/gtest.h>

using namespace linfty;

namespace {

Vec<Rational> vec(const LInftyAlgebra& L, std::initializer_list<std::pair<const char*, Rational>> entries)
{
    auto v = zero_vec<Rational>(L.space());
    for (const auto& [n, c] : entries) v[static_cast<std::size_t>(L.space().index_of(n))] = c;
    return v;
}

FormVec forms(const LInftyAlgebra& L, int n, std::initializer_list<std::pair<const char*, PolyForm>> entries)
{
    FormVec v(static_cast<std::size_t>(L.space().dim()), PolyForm(n));
    for (const auto& [name, f] : entries) v[static_cast<std::size_t>(L.space().index_of(name))] = f.on(n);
    return v;
}

PolyForm t1(int n) { return PolyForm::t(1, n); }
PolyForm dt1(int n) { return PolyForm::dt(1, n); }
PolyForm c(const Rational& q, int n) { return PolyForm::constant(q, n); }

/// y vanishing on the horn faces: y minus the Moore filler of its own horn.
FormVec vanishing_on_horn(FormVec y, int m, int k)
{
    std::vector<FormVec> faces(static_cast<std::size_t>(m + 1));
    for (int i = 0; i <= m; ++i)
        if (i != k) faces[static_cast<std::size_t>(i)] = face_forms(y, i, m);
    sub_from(y, moore_fill(faces, m, k, y.size()));
    return on_simplex(y, m);
}

} // namespace

TEST(TensorAlgebra, ZeroSimplexIsTheAlgebra)
{
    auto L = corpus::dglie_minimal();
    TensorAlgebra T(L, 0);
    auto x = constant_forms(vec(L, {{"x", 3}}), 0);
    EXPECT_EQ(vertex_value(T.curvature(x), 0), curv(L, vec(L, {{"x", 3}})));
}

TEST(TensorAlgebra, LeibnizSignOnDifferential)
{
    auto A = corpus::abelian();
    TensorAlgebra T(A, 1);
    // d(e t1) = de t1 + (-1)^{|e|} e dt1 with |e| = -1
    auto x = forms(A, 1, {{"e", t1(1)}});
    EXPECT_EQ(T.operation({&x}), forms(A, 1, {{"x", t1(1)}, {"e", -dt1(1)}}));
    auto z = forms(A, 1, {{"z", t1(1)}});
    EXPECT_EQ(T.operation({&z}), forms(A, 1, {{"y", t1(1)}, {"z", dt1(1)}}));
}

TEST(TensorAlgebra, BracketWithFormLegs)
{
    auto L = corpus::dglie_minimal();
    TensorAlgebra T(L, 1);
    auto a = forms(L, 1, {{"x", dt1(1)}});
    auto b = forms(L, 1, {{"x", c(1, 1)}});
    EXPECT_EQ(T.operation({&a, &b}), forms(L, 1, {{"y", dt1(1)}}));
    EXPECT_EQ(T.operation({&b, &a}), forms(L, 1, {{"y", dt1(1)}}));
}

TEST(Simplex, FacesOfConstantEdge)
{
    auto L = corpus::dglie();
    Rng rng(1);
    auto a = *sample_mc(L, rng);
    auto e = constant_simplex(a, 1);
    validate_simplex(L, e);
    EXPECT_EQ(face_simplex(e, 0), constant_simplex(a, 0));
    EXPECT_EQ(face_simplex(e, 1), constant_simplex(a, 0));
}

TEST(Simplex, RejectsNonMcAndWrongDegree)
{
    auto L = corpus::dglie_minimal();
    EXPECT_THROW(validate_simplex(L, constant_simplex(vec(L, {{"x", 1}}), 1)), ValidationError);
    Simplex bad{1, forms(L, 1, {{"x", dt1(1)}})};
    EXPECT_THROW(validate_simplex(L, bad), ValidationError);
}

TEST(Simplex, SimplicialIdentitiesOnRandomSimplices)
{
    Rng rng(2);
    for (const auto& [name, L] : corpus::algebras()) {
        for (int n = 1; n <= 2; ++n) {
            auto s = *random_simplex(L, n, rng);
            for (int j = 0; j <= n; ++j) {
                auto sj = degenerate_simplex(s, j);
                validate_simplex(L, sj);
                EXPECT_EQ(face_simplex(sj, j), s) << name;
                EXPECT_EQ(face_simplex(sj, j + 1), s) << name;
            }
            for (int i = 0; i <= n; ++i) {
                auto f = face_simplex(s, i);
                validate_simplex(L, f);
                for (int j = i + 1; j <= n && n >= 2; ++j)
                    EXPECT_EQ(face_simplex(face_simplex(s, j), i), face_simplex(face_simplex(s, i), j - 1)) << name;
            }
        }
    }
}

TEST(ApplyMorphism, IdentityStrictAndNaturality)
{
    Rng rng(3);
    auto L = corpus::depth4();
    auto s = *random_simplex(L, 2, rng);
    EXPECT_EQ(apply_morphism(identity_morphism(L), s), s);

    auto F = corpus::fibration();
    auto t = *random_simplex(F.source(), 2, rng);
    auto img = apply_morphism(F, t);
    auto phi = F.linear_term();
    for (int i = 0; i < F.target().space().dim(); ++i) {
        int j = F.source().space().index_of(F.target().space().name(i));
        EXPECT_EQ(img.value[static_cast<std::size_t>(i)], t.value[static_cast<std::size_t>(j)]);
    }

    auto N = corpus::depth4_nonstrict();
    for (int trial = 0; trial < 5; ++trial) {
        auto r = *random_simplex(L, 2, rng);
        auto Nr = apply_morphism(N, r);
        for (int i = 0; i <= 2; ++i) EXPECT_EQ(face_simplex(Nr, i), apply_morphism(N, face_simplex(r, i)));
        for (int j = 0; j <= 2; ++j) EXPECT_EQ(degenerate_simplex(Nr, j), apply_morphism(N, degenerate_simplex(r, j)));
    }
}

TEST(FillHornAbelian, DegenerateFillers)
{
    auto A = corpus::abelian();
    auto v = constant_simplex(vec(A, {{"x", 1}, {"c", 2}}), 0);
    HornData h{1, 0, {std::nullopt, v}};
    EXPECT_EQ(fill_horn_abelian(A, h), degenerate_simplex(v, 0));

    auto e = degenerate_simplex(v, 0);
    HornData h2{2, 1, {e, std::nullopt, e}};
    EXPECT_EQ(fill_horn_abelian(A, h2), degenerate_simplex(e, 0));
}

TEST(FillHornAbelian, LinearEdgesInLambda21)
{
    auto K = AlgebraBuilder().element("e", -1, 1).element("x", 0, 1).op({"e"}, "x").build(2);
    // x = f(t) needs e = -f'(t) dt; d2 runs from 0 to 1, d0 from 1 to 3
    Simplex e0{1, forms(K, 1, {{"x", c(1, 1) + t1(1) * 2}, {"e", dt1(1) * -2}})};
    Simplex e2{1, forms(K, 1, {{"x", t1(1)}, {"e", -dt1(1)}})};
    validate_simplex(K, e0);
    validate_simplex(K, e2);
    HornData h{2, 1, {e0, std::nullopt, e2}};
    auto s = fill_horn_abelian(K, h);
    validate_simplex(K, s);
    EXPECT_EQ(face_simplex(s, 0), e0);
    EXPECT_EQ(face_simplex(s, 2), e2);
    EXPECT_EQ(vertex_value(face_simplex(s, 1).value, 0), vec(K, {{"x", 0}}));
    EXPECT_EQ(vertex_value(face_simplex(s, 1).value, 1), vec(K, {{"x", 3}}));
}

TEST(FillHornAbelian, RejectsIncompatibleHorn)
{
    auto K = AlgebraBuilder().element("e", -1, 1).element("x", 0, 1).op({"e"}, "x").build(2);
    Simplex e0{1, forms(K, 1, {{"x", t1(1)}, {"e", -dt1(1)}})};
    Simplex e2{1, forms(K, 1, {{"x", t1(1)}, {"e", -dt1(1)}})};
    HornData h{2, 1, {e0, std::nullopt, e2}};
    EXPECT_THROW(fill_horn_abelian(K, h), ValidationError);
}

TEST(FillHornNilpotent, AgreesWithAbelianAndFillsEveryHorn)
{
    Rng rng(4);
    auto A = corpus::abelian();
    for (int m = 1; m <= 3; ++m)
        for (int k = 0; k <= m; ++k) {
            auto h = horn_of(*random_simplex(A, m, rng), k);
            EXPECT_EQ(fill_horn_nilpotent(A, h), fill_horn_abelian(A, h));
        }
    for (const auto& [name, L] : corpus::algebras()) {
        for (int m = 1; m <= 2; ++m)
            for (int k = 0; k <= m; ++k) {
                auto h = horn_of(*random_simplex(L, m, rng), k);
                auto s = fill_horn_nilpotent(L, h);
                validate_simplex(L, s);
                for (int i = 0; i <= m; ++i)
                    if (i != k) {
                        EXPECT_EQ(face_simplex(s, i), *h.faces[static_cast<std::size_t>(i)]) << name;
                    }
            }
    }
}

TEST(FillHornNilpotent, DegenerateHornGivesDegenerateFiller)
{
    Rng rng(5);
    auto L = corpus::dglie();
    auto e = *random_simplex(L, 1, rng);
    auto s = degenerate_simplex(e, 0);
    for (int k = 0; k <= 2; ++k) {
        auto h = horn_of(s, k);
        EXPECT_EQ(fill_horn_nilpotent(L, h), s) << k;
    }
}

TEST(LiftTowerStep, IdentityReturnsTheTarget)
{
    Rng rng(6);
    auto L = corpus::dglie();
    auto id = identity_morphism(L);
    auto s = *random_simplex(L, 1, rng);
    std::vector<LiftTrace> traces;
    auto a = kan_fibration_lift(id, horn_of(s, 0), s, &traces);
    EXPECT_EQ(a, s);
    EXPECT_FALSE(traces.empty());
}

TEST(LiftTowerStep, FibrationEdgeLift)
{
    Rng rng(7);
    auto F = corpus::fibration();
    for (int trial = 0; trial < 5; ++trial) {
        auto s = *random_simplex(F.source(), 1, rng);
        auto h = horn_of(s, 0);
        auto b = apply_morphism(F, s);
        // perturb b away from the image of s while keeping its horn
        auto y = vanishing_on_horn(on_simplex(constant_forms(zero_vec<Rational>(F.target().space()), 1), 1), 1, 0);
        for (int i = 0; i < F.target().space().dim(); ++i)
            if (F.target().space().degree(i) == -1) y[static_cast<std::size_t>(i)] += t1(1) * random_int(rng, 3);
        y = vanishing_on_horn(y, 1, 0);
        TensorAlgebra T(F.target(), 1);
        add_to(b.value, T.operation({&y}));
        b.value = on_simplex(b.value, 1);
        validate_simplex(F.target(), b);
        std::vector<LiftTrace> traces;
        auto a = kan_fibration_lift(F, h, b, &traces);
        EXPECT_EQ(face_simplex(a, 1), *h.faces[1]);
        EXPECT_EQ(apply_morphism(F, a), b);
        EXPECT_FALSE(traces.empty());
    }
}

TEST(LiftTowerStep, RejectsIncompatibleData)
{
    Rng rng(8);
    auto F = corpus::fibration();
    auto s = *random_simplex(F.source(), 1, rng);
    auto b = constant_simplex(zero_vec<Rational>(F.target().space()), 1);
    if (apply_morphism(F, face_simplex(s, 1)) != face_simplex(b, 1)) {
        EXPECT_THROW(kan_fibration_lift(F, horn_of(s, 0), b), ValidationError);
    }
}

TEST(KanFibrationLift, EmptyHornAgainstAcyclicFibration)
{
    // projection from an acyclic extension: e -> x contractible pair on top of c
    auto L = AlgebraBuilder().element("e", -1, 1).element("x", 0, 1).element("c", 0, 1).op({"e"}, "x").build(2);
    auto Lt = AlgebraBuilder().element("c", 0, 1).build(2);
    auto F = name_projection(L, Lt);
    ASSERT_TRUE(classify_morphism(F).acyclic_fibration);
    for (int v = -3; v <= 3; ++v) {
        auto b = constant_simplex(vec(Lt, {{"c", v}}), 0);
        HornData h{0, 0, {std::nullopt}};
        auto a = kan_fibration_lift(F, h, b);
        EXPECT_EQ(apply_morphism(F, a), b);
    }
    // a non-acyclic fibration can fail on vertices: the cocycle x has no preimage MC lift
    auto G = name_projection(corpus::dglie_minimal(), quotient(corpus::dglie_minimal(), 2));
    HornData h{0, 0, {std::nullopt}};
    EXPECT_THROW(kan_fibration_lift(G, h, constant_simplex(Vec<Rational>{1}, 0)), InfeasibleError);
}

TEST(ConnectByEdge, DegenerateForEqualEndpoints)
{
    Rng rng(9);
    auto L = corpus::dglie();
    auto a = *sample_mc(L, rng);
    auto r = connect_by_edge(L, a, a);
    ASSERT_TRUE(r.found);
    EXPECT_EQ(r.edge, degenerate_simplex(constant_simplex(a, 0), 0));
}

TEST(ConnectByEdge, AbelianCoboundaries)
{
    auto A = corpus::abelian();
    auto a0 = vec(A, {{"c", 1}});
    auto a1 = vec(A, {{"c", 1}, {"x", 2}});
    auto r = connect_by_edge(A, a0, a1);
    ASSERT_TRUE(r.found);
    EXPECT_EQ(face_simplex(r.edge, 1), constant_simplex(a0, 0));
    EXPECT_EQ(face_simplex(r.edge, 0), constant_simplex(a1, 0));
    auto r2 = connect_by_edge(A, a0, vec(A, {{"c", 2}}));
    EXPECT_FALSE(r2.found);
    EXPECT_FALSE(r2.report.empty());
}

TEST(ConnectByEdge, GaugeEquivalentPairNeedsBracket)
{
    // {z, x} = u: moving along z shifts the u coordinate by a multiple of the x coordinate
    auto L = AlgebraBuilder()
                 .element("z", -1, 1)
                 .element("x", 0, 1)
                 .element("u", 0, 2)
                 .op({"z", "x"}, "u")
                 .build(3);
    ASSERT_TRUE(check_linfty(L).ok());
    auto r = connect_by_edge(L, vec(L, {{"x", 2}, {"u", 1}}), vec(L, {{"x", 2}, {"u", 5}}));
    ASSERT_TRUE(r.found) << r.report;
    validate_simplex(L, r.edge);
    auto r2 = connect_by_edge(L, vec(L, {}), vec(L, {{"u", 1}}));
    EXPECT_FALSE(r2.found);
}

TEST(ConnectByEdge, DgLieGaugeOrbit)
{
    Rng rng(10);
    auto L = corpus::dglie();
    for (int trial = 0; trial < 10; ++trial) {
        auto a0 = *sample_mc(L, rng);
        // endpoint of a random gauge flow from a0
        auto xi = zero_vec<Rational>(L.space());
        xi[static_cast<std::size_t>(L.space().index_of("e"))] = random_int(rng, 3);
        auto x = constant_forms(a0, 1);
        auto xif = constant_forms(xi, 1);
        for (int it = 0; it < 4; ++it) {
            auto rate = twisted_structure_apply(L.space(), L.ops(), x, std::vector<const FormVec*>{&xif});
            FormVec next = constant_forms(a0, 1);
            for (std::size_t i = 0; i < next.size(); ++i)
                next[i] -= (rate[i] * dt1(1)).on(1).dilation_homotopy(0);
            x = on_simplex(next, 1);
        }
        auto a1 = vertex_value(x, 1);
        ASSERT_TRUE(is_mc(L, a1));
        auto r = connect_by_edge(L, a0, a1);
        ASSERT_TRUE(r.found) << r.report;
        EXPECT_EQ(face_simplex(r.edge, 0), constant_simplex(a1, 0));
    }
}
