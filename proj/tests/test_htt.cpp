#include "linfty/corpus.hpp"
#include "linfty/htt.hpp"

#include <gtest/gtest.h>

using namespace linfty;

namespace {

Vec<Rational> vec(const GradedSpace& s, std::initializer_list<std::pair<const char*, Rational>> entries)
{
    auto v = zero_vec<Rational>(s);
    for (const auto& [n, c] : entries) v[static_cast<std::size_t>(s.index_of(n))] = c;
    return v;
}

Vec<Rational> eval(const GradedSpace& src, const GradedSpace& tgt, const Multilinear<Rational>& m,
                   std::initializer_list<const char*> names)
{
    std::vector<Vec<Rational>> units;
    for (const auto* n : names) units.push_back(unit_vec<Rational>(src, src.index_of(n)));
    std::vector<const Vec<Rational>*> args;
    for (auto& u : units) args.push_back(&u);
    return apply(src, tgt, m, args);
}

CylTriple htt_solution(PivotOrder order)
{
    return transfer(corpus::htt_B(), corpus::htt_A().complex(), corpus::htt_phi(), 4, order);
}

} // namespace

TEST(ConvAlgebra, McElementsAreStructures)
{
    auto L = corpus::dglie();
    ConvAlgebra C(L.space(), L.truncation(), 2);
    EXPECT_TRUE(C.is_mc(L.ops()));
    EXPECT_TRUE(C.is_mc({}));
    auto bad = L.ops();
    bad.add(L.space(), {L.space().index_of("x1"), L.space().index_of("x2")}, L.space().index_of("y"), 1);
    EXPECT_FALSE(C.is_mc(bad));
    EXPECT_EQ(C.filtration_level(L.ops()), 1);
    EXPECT_EQ(C.filtration_level(L.bracket(2)), 2);
    EXPECT_EQ(C.filtration_level({}), 3);
}

TEST(ConvAlgebra, SlotsRespectDegreeAndWeight)
{
    auto A = corpus::htt_A().space();
    ConvAlgebra C(A, 4, 3);
    // degree-1 maps on (a',a'): outputs e' (weight 2) and f' (weight 3)
    auto s2 = C.slots(2, 1);
    int on_aa = 0;
    for (const auto& s : s2)
        if (s.word == MultiIndex{0, 0}) ++on_aa;
    EXPECT_EQ(on_aa, 2);
    // (a',a',a') has weight 3: only f'
    auto s3 = C.slots(3, 1);
    ASSERT_EQ(s3.size(), 1u);
    EXPECT_EQ(A.name(s3[0].out), "f'");
}

TEST(CylCurvature, StrictMorphismOfAbelianStructures)
{
    auto B = corpus::abelian();
    CylTriple t;
    t.a = B.space();
    t.b = B.space();
    t.truncation = B.truncation();
    t.arity_cap = 2;
    t.q_a = B.ops();
    t.q_b = B.ops();
    for (int i = 0; i < B.space().dim(); ++i) t.f.add(t.a, {i}, i, 1);
    EXPECT_TRUE(cyl_curvature(t).zero());
    EXPECT_TRUE(project_piB(t) == B.ops());
}

TEST(CylCurvature, NonChainMapShowsInF)
{
    auto B = corpus::dglie();
    CylTriple t;
    t.a = B.space();
    t.b = B.space();
    t.truncation = B.truncation();
    t.arity_cap = 2;
    t.q_b = B.ops();
    for (int i = 0; i < B.space().dim(); ++i) t.f.add(t.a, {i}, i, 1);
    auto c = cyl_curvature(t);
    ASSERT_FALSE(c.zero());
    auto e = B.space().index_of("e");
    bool found = false;
    for (const auto& r : c.f)
        if (r.word == MultiIndex{e}) {
            // phi d - d phi on e with d_A = 0: -x1
            EXPECT_EQ(r.value, vec(B.space(), {{"x1", -1}}));
            found = true;
        }
    EXPECT_TRUE(found);
    for (const auto& r : c.a) EXPECT_TRUE(is_zero_vec(r.value));
    for (const auto& r : c.b) EXPECT_TRUE(is_zero_vec(r.value));
}

TEST(Transfer, AbelianTargetGivesStrictSolution)
{
    auto B = corpus::abelian();
    auto t = transfer(B, B.complex(), identity_map(B.space()), 3);
    EXPECT_TRUE(cyl_curvature(t).zero());
    EXPECT_TRUE(t.q_a == B.ops());
    EXPECT_EQ(t.f.max_arity(), 1);
}

TEST(Transfer, IsomorphismConjugatesBrackets)
{
    // phi scales x1 by 2 and e by 2, y by 2 and r by 2: a chain isomorphism of dglie
    auto B = corpus::dglie();
    const auto& s = B.space();
    GradedMap phi(s, s, 0);
    for (int i = 0; i < s.dim(); ++i) phi.set(i, i, 1);
    for (const auto* n : {"e", "x1", "r", "y"}) phi.set(s.index_of(n), s.index_of(n), 2);
    auto t = transfer(B, B.complex(), phi, 2);
    EXPECT_TRUE(cyl_curvature(t).zero());
    EXPECT_EQ(t.f.max_arity(), 1);
    // oracle: Q_A(u, v) = phi^{-1} Q_B(phi u, phi v)
    auto qa = t.q_a.arity_part(2);
    EXPECT_EQ(eval(s, s, qa, {"x1", "x2"}), vec(s, {{"y", 1}}));  // phi^{-1}(2y)
    EXPECT_EQ(eval(s, s, qa, {"e", "x2"}), vec(s, {{"r", -1}}));  // phi^{-1}(-2r)
}

TEST(Transfer, InducedBracketOnCohomology)
{
    for (auto order : {PivotOrder::Lex, PivotOrder::RevLex}) {
        auto t = htt_solution(order);
        auto c = cyl_curvature(t);
        EXPECT_TRUE(c.zero());
        EXPECT_GT(c.checked(), 0u);
        EXPECT_TRUE(project_piB(t) == corpus::htt_B().ops());
        EXPECT_TRUE(t.phi().entries() == corpus::htt_phi().entries());
        const auto& A = t.a;
        // {a,a} = e + w = [e] in H(B); {a, u1 - u2} = f
        EXPECT_EQ(eval(A, A, t.q_a, {"a'", "a'"}), vec(A, {{"e'", 1}}));
        EXPECT_EQ(eval(A, A, t.q_a, {"a'", "h'"}), vec(A, {{"f'", 1}}));
        EXPECT_TRUE(check_morphism(transferred_morphism(t)).ok());
        EXPECT_TRUE(check_linfty(transferred_algebra(t)).ok());
    }
}

TEST(Transfer, PivotOrdersGiveDistinctSolutions)
{
    auto lex = htt_solution(PivotOrder::Lex);
    auto rev = htt_solution(PivotOrder::RevLex);
    EXPECT_FALSE(lex == rev);
    const auto& A = lex.a;
    const auto& B = lex.b;
    // F_2(a,a) = c1 u1 + c2 u2 with c1 + c2 = -1 from the w row
    auto f0 = eval(A, B, lex.f, {"a'", "a'"});
    auto f1 = eval(A, B, rev.f, {"a'", "a'"});
    EXPECT_EQ(f0[static_cast<std::size_t>(B.index_of("u1"))] + f0[static_cast<std::size_t>(B.index_of("u2"))], -1);
    EXPECT_EQ(f1[static_cast<std::size_t>(B.index_of("u1"))] + f1[static_cast<std::size_t>(B.index_of("u2"))], -1);
    EXPECT_NE(f0, f1);
}

TEST(Transfer, BrokenPhiReportsObstruction)
{
    try {
        transfer(corpus::htt_B(), corpus::htt_A_broken().complex(), corpus::htt_phi_broken(), 4);
        FAIL() << "expected an obstruction";
    } catch (const TransferObstruction& e) {
        const auto& o = e.obstruction;
        EXPECT_EQ(o.arity, 2);
        EXPECT_NE(o.pairing, 0);
        ASSERT_FALSE(o.rows.empty());
        EXPECT_EQ(o.rows.front().coordinate, "e");
    }
    EXPECT_FALSE(is_quasi_iso_on_filtration(corpus::htt_phi_broken(), corpus::htt_A_broken().complex(),
                                            corpus::htt_B().complex()));
    EXPECT_TRUE(is_quasi_iso_on_filtration(corpus::htt_phi(), corpus::htt_A().complex(), corpus::htt_B().complex()));
}

TEST(Transfer, RejectsInvalidInput)
{
    auto B = corpus::dglie();
    GradedMap phi(B.space(), B.space(), 0);
    phi.set(B.space().index_of("x1"), B.space().index_of("x1"), 1);
    EXPECT_THROW(transfer(B, B.complex(), phi, 2), ValidationError);
    EXPECT_THROW(transfer(B, B.complex(), identity_map(B.space()), 0), std::invalid_argument);
}

TEST(ConnectSolutions, IdenticalSolutionsGiveDegenerateEdge)
{
    auto t = htt_solution(PivotOrder::Lex);
    auto e = connect_solutions(t, t);
    EXPECT_EQ(e.poly_degree, 0);
    EXPECT_TRUE(e.q_a == constant_family(t.a, t.q_a));
    EXPECT_TRUE(e.f == constant_family(t.a, t.f));
}

TEST(ConnectSolutions, PivotOrderVariants)
{
    auto lex = htt_solution(PivotOrder::Lex);
    auto rev = htt_solution(PivotOrder::RevLex);
    for (auto order : {PivotOrder::Lex, PivotOrder::RevLex}) {
        auto e = connect_solutions(lex, rev, order);
        EXPECT_TRUE(edge_vertex(e, 0) == lex);
        EXPECT_TRUE(edge_vertex(e, 1) == rev);
        EXPECT_TRUE(edge_curvature(e).zero());
        EXPECT_TRUE(e.q_b == constant_family(lex.b, corpus::htt_B().ops()));
        EXPECT_GE(e.poly_degree, 1);
    }
}

TEST(ConnectSolutions, ChainHomotopicComponents)
{
    // abelian A = B: F_2 and F_2 + [d, h] for h : S^2 A -> B of degree -1
    auto B = AlgebraBuilder()
                 .element("x", 0, 1)
                 .element("c", 0, 1)
                 .element("k", -1, 2)
                 .element("v", 0, 2)
                 .op({"k"}, "v")
                 .build(3);
    const auto& s = B.space();
    auto t0 = transfer(B, B.complex(), identity_map(s), 2);
    Multilinear<Rational> h;
    h.add(s, {s.index_of("x"), s.index_of("c")}, s.index_of("k"), 1);
    auto t1 = t0;
    for (const auto& w : symmetric_words(s, 2, B.truncation())) {
        auto dh = morphism_relation(s, s, B.ops(), B.ops(), h, w);
        for (int k = 0; k < s.dim(); ++k)
            if (dh[static_cast<std::size_t>(k)] != 0) t1.f.add(s, w, k, dh[static_cast<std::size_t>(k)]);
    }
    ASSERT_FALSE(t0 == t1);
    ASSERT_TRUE(cyl_curvature(t1).zero());
    auto e = connect_solutions(t0, t1);
    EXPECT_TRUE(edge_vertex(e, 1) == t1);
    EXPECT_TRUE(edge_curvature(e).zero());
}

TEST(ConnectSolutions, RejectsSolutionsOfDifferentProblems)
{
    auto t = htt_solution(PivotOrder::Lex);
    auto u = t;
    u.q_b = {};
    EXPECT_THROW(connect_solutions(t, u), ValidationError);
    auto a = transfer(corpus::abelian(), corpus::abelian().complex(), identity_map(corpus::abelian().space()), 2);
    EXPECT_THROW(connect_solutions(t, a), ValidationError);
}
