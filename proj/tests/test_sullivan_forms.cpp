#include "linfty/poly_form.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace linfty;

namespace {

PolyForm t(int i, int n) { return PolyForm::t(i, n); }
PolyForm dt(int i, int n) { return PolyForm::dt(i, n); }
PolyForm one(int n) { return PolyForm::constant(1, n); }

PolyForm random_form(std::mt19937& rng, int n, int terms = 3, int max_poly = 2)
{
    std::uniform_int_distribution<int> coef(-4, 4), var(1, std::max(n, 1)), deg(0, max_poly), bit(0, 1);
    PolyForm f(n);
    for (int k = 0; k < terms; ++k) {
        PolyForm m = PolyForm::constant(coef(rng), n);
        if (n == 0) {
            f += m;
            continue;
        }
        int pd = deg(rng);
        for (int j = 0; j < pd; ++j) m = m * t(var(rng), n);
        for (int i = 1; i <= n; ++i)
            if (bit(rng) && bit(rng)) m = m * dt(i, n);
        f += m;
    }
    return f;
}

} // namespace

TEST(Wedge, Examples)
{
    EXPECT_TRUE((dt(1, 2) * dt(1, 2)).is_zero());
    EXPECT_EQ((t(1, 2) * dt(2, 2)).to_string(), "t1*dt2");
    EXPECT_EQ(dt(1, 2) * dt(2, 2), -(dt(2, 2) * dt(1, 2)));
}

TEST(Wedge, AssociativeAndGradedCommutative)
{
    std::mt19937 rng(2);
    for (int n = 1; n <= 3; ++n) {
        for (int trial = 0; trial < 50; ++trial) {
            auto a = random_form(rng, n), b = random_form(rng, n), c = random_form(rng, n);
            EXPECT_EQ((a * b) * c, a * (b * c));
            for (int p = 0; p <= n; ++p)
                for (int q = 0; q <= n; ++q) {
                    auto ap = a.part(p), bq = b.part(q);
                    auto ba = bq * ap;
                    if ((p * q) % 2) ba = -ba;
                    EXPECT_EQ(ap * bq, ba);
                }
        }
    }
}

TEST(Differential, Examples)
{
    EXPECT_EQ(t(1, 2).d(), dt(1, 2));
    EXPECT_EQ((t(1, 2) * t(2, 2)).d(), t(2, 2) * dt(1, 2) + t(1, 2) * dt(2, 2));
    EXPECT_TRUE(dt(1, 2).d().is_zero());
}

TEST(Differential, SquareZeroAndLeibniz)
{
    std::mt19937 rng(3);
    for (int n = 0; n <= 4; ++n) {
        for (int trial = 0; trial < 200; ++trial) {
            auto a = random_form(rng, n);
            EXPECT_TRUE(a.d().d().is_zero());
            if (trial % 4) continue;
            auto b = random_form(rng, n);
            for (int p = 0; p <= n; ++p) {
                auto ap = a.part(p);
                auto rhs = ap.d() * b + (p % 2 ? -(ap * b.d()) : ap * b.d());
                EXPECT_EQ((ap * b).d(), rhs);
            }
        }
    }
}

TEST(Faces, CoordinateConvention)
{
    EXPECT_EQ(t(1, 1).face(0), one(0));
    EXPECT_TRUE(t(1, 1).face(1).is_zero());
    EXPECT_EQ(t(1, 1).eval_vertex(1), 1);
    EXPECT_EQ(t(1, 1).eval_vertex(0), 0);
    EXPECT_EQ(dt(1, 1).eval_vertex(1), 0);
    EXPECT_THROW(t(1, 1).face(2), std::out_of_range);
    EXPECT_THROW(t(1, 1).degeneracy(2), std::out_of_range);
}

TEST(Faces, VerticesOfFacesAreVertices)
{
    // Vertex j of d_i(Delta^n) is vertex j (j < i) or j+1 (j >= i) of Delta^n.
    std::mt19937 rng(4);
    for (int n = 1; n <= 4; ++n)
        for (int trial = 0; trial < 30; ++trial) {
            auto a = random_form(rng, n);
            for (int i = 0; i <= n; ++i)
                for (int j = 0; j < n; ++j) EXPECT_EQ(a.face(i).eval_vertex(j), a.eval_vertex(j < i ? j : j + 1));
        }
}

TEST(Faces, SimplicialIdentities)
{
    std::mt19937 rng(5);
    for (int n = 1; n <= 4; ++n) {
        for (int trial = 0; trial < 30; ++trial) {
            auto a = random_form(rng, n);
            for (int i = 0; i <= n; ++i)
                for (int j = i + 1; j <= n && n >= 2; ++j) EXPECT_EQ(a.face(j).face(i), a.face(i).face(j - 1));
            if (n + 1 > PolyForm::kMaxDim) continue;
            for (int j = 0; j <= n; ++j) {
                EXPECT_EQ(a.degeneracy(j).face(j), a);
                EXPECT_EQ(a.degeneracy(j).face(j + 1), a);
                for (int i = 0; i <= n + 1; ++i) {
                    if (i < j) {
                        EXPECT_EQ(a.degeneracy(j).face(i), a.face(i).degeneracy(j - 1));
                    } else if (i > j + 1) {
                        EXPECT_EQ(a.degeneracy(j).face(i), a.face(i - 1).degeneracy(j));
                    }
                }
                for (int i = 0; i <= j; ++i) EXPECT_EQ(a.degeneracy(j).degeneracy(i), a.degeneracy(i).degeneracy(j + 1));
            }
        }
    }
}

TEST(Faces, CommuteWithDifferentialAndWedge)
{
    std::mt19937 rng(6);
    for (int n = 1; n <= 3; ++n)
        for (int trial = 0; trial < 30; ++trial) {
            auto a = random_form(rng, n), b = random_form(rng, n);
            for (int i = 0; i <= n; ++i) {
                EXPECT_EQ(a.d().face(i), a.face(i).d());
                EXPECT_EQ((a * b).face(i), a.face(i) * b.face(i));
            }
            for (int j = 0; j <= n; ++j) EXPECT_EQ(a.d().degeneracy(j), a.degeneracy(j).d());
        }
}

TEST(DilationHomotopy, Examples)
{
    EXPECT_EQ(dt(1, 1).dilation_homotopy(0), t(1, 1));
    EXPECT_TRUE(one(1).dilation_homotopy(0).is_zero());
    EXPECT_EQ((t(1, 1) * dt(1, 1)).dilation_homotopy(0), PolyForm::constant(Rational(1, 2), 1) * t(1, 1) * t(1, 1));
}

TEST(DilationHomotopy, ContractsToVertex)
{
    std::mt19937 rng(7);
    for (int n = 1; n <= 4; ++n) {
        for (int trial = 0; trial < 40; ++trial) {
            auto a = random_form(rng, n);
            for (int v = 0; v <= n; ++v) {
                auto h = a.dilation_homotopy(v);
                auto lhs = h.d() + a.d().dilation_homotopy(v);
                auto rhs = a - PolyForm::constant(a.eval_vertex(v), n);
                EXPECT_EQ(lhs, rhs) << a.to_string() << " v=" << v;
                // restriction to faces through v commutes with h
                for (int i = 0; i <= n; ++i) {
                    if (i == v) continue;
                    int v2 = v < i ? v : v - 1;
                    EXPECT_EQ(h.face(i), a.face(i).dilation_homotopy(v2));
                }
            }
        }
    }
}

TEST(Text, RoundTrip)
{
    auto f = PolyForm::constant(Rational(3, 2), 2) * t(1, 2) * t(1, 2) * dt(1, 2) * dt(2, 2) - t(2, 2);
    EXPECT_EQ(f.to_string(), "-t2 + 3/2*t1^2*dt1^dt2");
    EXPECT_EQ(PolyForm::parse(f.to_string(), 2), f);
    std::mt19937 rng(8);
    for (int n = 0; n <= 4; ++n)
        for (int trial = 0; trial < 50; ++trial) {
            auto a = random_form(rng, n);
            EXPECT_EQ(PolyForm::parse(a.to_string(), n), a);
        }
    EXPECT_THROW(PolyForm::parse("t3", 2), std::invalid_argument);
    EXPECT_THROW(PolyForm::parse("2*", 2), std::invalid_argument);
}
