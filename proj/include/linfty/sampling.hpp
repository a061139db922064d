#pragma once

#include "linfty/simplicial.hpp"

#include <algorithm>
#include <random>

namespace linfty {

using Rng = std::mt19937_64;

inline Rational random_int(Rng& rng, int bound)
{
    std::uniform_int_distribution<int> d(-bound, bound);
    return d(rng);
}

/// Random MC element, solved weight by weight: at stage n the weight-(n-1) coordinates
/// must cancel the weight-(n-1) part of the curvature, a linear condition through the
/// differential. Free directions get random integers in [-bound, bound]; samples with a
/// coordinate above the bound are rejected.
inline std::optional<Vec<Rational>> sample_mc(const LInftyAlgebra& L, Rng& rng, int bound = 5, int attempts = 2000)
{
    const auto& s = L.space();
    auto d = L.differential();
    for (int attempt = 0; attempt < attempts; ++attempt) {
        Vec<Rational> alpha = zero_vec<Rational>(s);
        bool ok = true;
        for (int n = 2; n <= L.truncation() && ok; ++n) {
            std::vector<int> cols, rows;
            for (int i = 0; i < s.dim(); ++i) {
                if (s.weight(i) != n - 1) continue;
                if (s.degree(i) == 0) cols.push_back(i);
                if (s.degree(i) == 1) rows.push_back(i);
            }
            auto c = curvature(s, L.ops(), alpha);
            std::vector<Rational> rhs;
            for (int i : rows) rhs.push_back(-c[static_cast<std::size_t>(i)]);
            auto D = d.block(rows, cols);
            auto sol = solve_linear(D, rhs);
            if (!sol.consistent) {
                ok = false;
                break;
            }
            auto kappa = sol.solution;
            for (const auto& v : nullspace(D)) {
                Rational t = random_int(rng, bound);
                for (std::size_t j = 0; j < v.size(); ++j) kappa[j] += t * v[j];
            }
            for (std::size_t j = 0; j < cols.size(); ++j) {
                if (abs(kappa[j]) > bound) ok = false;
                alpha[static_cast<std::size_t>(cols[j])] = kappa[j];
            }
        }
        if (ok && is_mc(L, alpha)) return alpha;
    }
    return std::nullopt;
}

/// Random degree-0 element with integer coordinates in [-bound, bound].
inline Vec<Rational> random_degree0(const GradedSpace& s, Rng& rng, int bound)
{
    Vec<Rational> v = zero_vec<Rational>(s);
    for (int i = 0; i < s.dim(); ++i)
        if (s.degree(i) == 0) v[static_cast<std::size_t>(i)] = random_int(rng, bound);
    return v;
}

/// Random homogeneous p-form on the n-simplex with small integer coefficients.
inline PolyForm random_form(Rng& rng, int p, int n, int terms = 2, int bound = 2)
{
    PolyForm f(n);
    if (p > n) return f;
    std::uniform_int_distribution<int> var(0, n), bit(0, 1);
    for (int k = 0; k < terms; ++k) {
        PolyForm m = PolyForm::constant(random_int(rng, bound), n);
        int v = var(rng);
        if (v > 0 && bit(rng)) m = m * PolyForm::t(v, n);
        std::vector<int> idx(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i + 1;
        std::shuffle(idx.begin(), idx.end(), rng);
        std::sort(idx.begin(), idx.begin() + p);
        for (int i = 0; i < p; ++i) m = m * PolyForm::dt(idx[static_cast<std::size_t>(i)], n);
        f += m;
    }
    return f;
}

/// Random n-simplex of sMC(L): a random MC vertex at vertex 0, random perturbations weight by
/// weight (vanishing at vertex 0), each followed by cancelling the curvature defect with the
/// contraction toward vertex 0.
inline std::optional<Simplex> random_simplex(const LInftyAlgebra& L, int n, Rng& rng, int bound = 2)
{
    const auto& s = L.space();
    auto alpha = sample_mc(L, rng, bound);
    if (!alpha) return std::nullopt;
    TensorAlgebra T(L, n);
    FormVec x = constant_forms(*alpha, n);
    for (int w = 1; w < L.truncation(); ++w) {
        for (int i = 0; i < s.dim(); ++i) {
            if (s.weight(i) != w || s.degree(i) > 0 || -s.degree(i) > n) continue;
            auto f = random_form(rng, -s.degree(i), n, 2, bound);
            f -= PolyForm::constant(f.eval_vertex(0), n);
            x[static_cast<std::size_t>(i)] += f;
        }
        auto c = T.curvature_mod(x, w + 1);
        sub_from(x, homotopy_forms(s, c, 0, n));
        x = on_simplex(x, n);
    }
    Simplex out{n, x};
    validate_simplex(L, out);
    return out;
}

inline HornData horn_of(const Simplex& s, int k)
{
    HornData h{s.dim, k, std::vector<std::optional<Simplex>>(static_cast<std::size_t>(s.dim + 1))};
    for (int i = 0; i <= s.dim; ++i)
        if (i != k) h.faces[static_cast<std::size_t>(i)] = face_simplex(s, i);
    return h;
}

} // namespace linfty
