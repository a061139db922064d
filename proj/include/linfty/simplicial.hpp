#pragma once

#include "linfty/linfty.hpp"
#include "linfty/poly_form.hpp"

#include <optional>
#include <string>
#include <vector>

namespace linfty {

using FormVec = Vec<PolyForm>;

/// An n-simplex of sMC(L): a degree-0 element of L (x) Omega_n, one form per basis element.
struct Simplex {
    int dim = 0;
    FormVec value;

    bool operator==(const Simplex& o) const { return dim == o.dim && value == o.value; }
};

/// Horn Lambda^m_k: faces[i] is set for every i != k.
struct HornData {
    int m = 0;
    int k = 0;
    std::vector<std::optional<Simplex>> faces;
};

inline FormVec on_simplex(FormVec v, int n)
{
    for (auto& f : v) f = f.on(n);
    return v;
}

inline FormVec constant_forms(const Vec<Rational>& x, int n)
{
    FormVec v(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) v[i] = PolyForm::constant(x[i], n);
    return v;
}

inline Simplex constant_simplex(const Vec<Rational>& x, int n) { return {n, constant_forms(x, n)}; }

inline FormVec face_forms(const FormVec& v, int i, int n)
{
    FormVec out(v.size());
    for (std::size_t a = 0; a < v.size(); ++a) out[a] = v[a].on(n).face(i);
    return out;
}

inline FormVec degeneracy_forms(const FormVec& v, int j, int n)
{
    FormVec out(v.size());
    for (std::size_t a = 0; a < v.size(); ++a) out[a] = v[a].on(n).degeneracy(j);
    return out;
}

/// e (x) w -> (-1)^{|e|} e (x) h_v(w): a contraction of L (x) Omega_n onto the fibre at vertex v.
inline FormVec homotopy_forms(const GradedSpace& s, const FormVec& x, int v, int n)
{
    FormVec out(x.size());
    for (int i = 0; i < s.dim(); ++i) {
        auto h = x[static_cast<std::size_t>(i)].on(n).dilation_homotopy(v);
        out[static_cast<std::size_t>(i)] = is_odd(s.degree(i)) ? -h : h;
    }
    return out;
}

inline Vec<Rational> vertex_value(const FormVec& x, int v)
{
    Vec<Rational> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i].eval_vertex(v);
    return out;
}

/// Internal degree plus form degree must vanish on every coordinate.
inline void require_total_degree_zero(const GradedSpace& s, const FormVec& x, const char* what)
{
    if (static_cast<int>(x.size()) != s.dim()) throw std::invalid_argument(std::string(what) + ": wrong length");
    for (int i = 0; i < s.dim(); ++i) {
        const auto& f = x[static_cast<std::size_t>(i)];
        if (f.is_zero()) continue;
        if (!f.is_homogeneous() || f.form_degree() != -s.degree(i))
            throw ValidationError(std::string(what) + ": coordinate '" + s.name(i) + "' of degree " +
                                  std::to_string(s.degree(i)) + " carries a form of the wrong degree");
    }
}

/// L (x) Omega_n: Q_m(x_1 w_1, ..., x_m w_m) = +-Q_m(x_1, ..., x_m) w_1 ... w_m, differential
/// Q_1 + 1 (x) d.
class TensorAlgebra {
public:
    TensorAlgebra(LInftyAlgebra L, int n) : L_(std::move(L)), n_(n) {}

    [[nodiscard]] const LInftyAlgebra& base() const { return L_; }
    [[nodiscard]] int n() const { return n_; }

    [[nodiscard]] FormVec operation(const std::vector<const FormVec*>& args) const
    {
        auto out = apply(L_.space(), L_.space(), L_.ops(), args);
        if (args.size() == 1) add_to(out, coefficient_differential(L_.space(), *args[0]));
        return on_simplex(out, n_);
    }

    [[nodiscard]] FormVec curvature(const FormVec& x) const { return on_simplex(linfty::curvature(L_.space(), L_.ops(), x), n_); }

    /// The curvature modulo F_depth.
    [[nodiscard]] FormVec curvature_mod(const FormVec& x, int depth) const
    {
        return truncate_weight(L_.space(), curvature(truncate_weight(L_.space(), x, depth)), depth);
    }

    [[nodiscard]] bool is_mc(const FormVec& x) const { return is_zero_vec(curvature(x)); }

private:
    LInftyAlgebra L_;
    int n_;
};

inline TensorAlgebra tensor_algebra(const LInftyAlgebra& L, int n) { return TensorAlgebra(L, n); }

/// Throws unless s is a simplex of sMC(L / F_depth) (depth 0: of L itself).
inline void validate_simplex(const LInftyAlgebra& L, const Simplex& s, int depth = 0)
{
    require_total_degree_zero(L.space(), s.value, "simplex");
    for (const auto& f : s.value) (void)f.on(s.dim);
    TensorAlgebra T(L, s.dim);
    auto c = depth > 0 ? T.curvature_mod(s.value, depth) : T.curvature(s.value);
    if (!is_zero_vec(c)) throw ValidationError("simplex is not Maurer-Cartan");
}

inline Simplex face_simplex(const Simplex& s, int i)
{
    if (s.dim < 1 || i < 0 || i > s.dim) throw std::out_of_range("face index out of range");
    return {s.dim - 1, face_forms(s.value, i, s.dim)};
}

inline Simplex degenerate_simplex(const Simplex& s, int j)
{
    if (j < 0 || j > s.dim) throw std::out_of_range("degeneracy index out of range");
    return {s.dim + 1, degeneracy_forms(s.value, j, s.dim)};
}

/// Phi^(n)_*(s) = sum_m (1/m!) F_m(s, ..., s) with F extended Omega_n-linearly.
inline Simplex apply_morphism(const InftyMorphism& F, const Simplex& s)
{
    validate_simplex(F.source(), s);
    Simplex out{s.dim, on_simplex(pushforward_element(F.source().space(), F.target().space(), F.components(), s.value), s.dim)};
    if (!TensorAlgebra(F.target(), s.dim).is_mc(out.value))
        throw ValidationError("apply_morphism: image is not Maurer-Cartan (the morphism is broken)");
    return out;
}

/// Pairwise compatibility d_i x_j = d_{j-1} x_i (i < j, both != k).
inline void require_compatible_horn(const HornData& h)
{
    if (h.m < 0 || h.k < 0 || h.k > h.m) throw std::invalid_argument("horn index out of range");
    if (static_cast<int>(h.faces.size()) != h.m + 1) throw std::invalid_argument("horn has the wrong number of faces");
    for (int i = 0; i <= h.m; ++i) {
        if ((i == h.k) != !h.faces[static_cast<std::size_t>(i)].has_value())
            throw std::invalid_argument("horn must provide exactly the faces i != k");
        if (i != h.k && h.faces[static_cast<std::size_t>(i)]->dim != h.m - 1)
            throw std::invalid_argument("horn face has the wrong dimension");
    }
    if (h.m < 2) return;
    for (int i = 0; i <= h.m; ++i)
        for (int j = i + 1; j <= h.m; ++j) {
            if (i == h.k || j == h.k) continue;
            const auto& xi = h.faces[static_cast<std::size_t>(i)]->value;
            const auto& xj = h.faces[static_cast<std::size_t>(j)]->value;
            if (face_forms(xj, i, h.m - 1) != face_forms(xi, j - 1, h.m - 1))
                throw ValidationError("horn faces " + std::to_string(i) + " and " + std::to_string(j) + " disagree");
        }
}

/// Moore's filler for a horn in a simplicial vector space (faces[k] ignored).
inline FormVec moore_fill(const std::vector<FormVec>& faces, int m, int k, std::size_t dim)
{
    FormVec w(dim, PolyForm(m));
    for (int i = 0; i < k; ++i) {
        auto c = faces[static_cast<std::size_t>(i)];
        sub_from(c, face_forms(w, i, m));
        add_to(w, degeneracy_forms(c, i, m - 1));
    }
    for (int i = m; i > k; --i) {
        auto c = faces[static_cast<std::size_t>(i)];
        sub_from(c, face_forms(w, i, m));
        add_to(w, degeneracy_forms(c, i - 1, m - 1));
    }
    return on_simplex(w, m);
}

inline std::vector<FormVec> horn_values(const HornData& h, std::size_t dim)
{
    std::vector<FormVec> v(static_cast<std::size_t>(h.m + 1), FormVec(dim));
    for (int i = 0; i <= h.m; ++i)
        if (i != h.k) v[static_cast<std::size_t>(i)] = h.faces[static_cast<std::size_t>(i)]->value;
    return v;
}

inline void require_faces(const Simplex& s, const HornData& h, const char* what)
{
    for (int i = 0; i <= h.m; ++i)
        if (i != h.k && face_simplex(s, i).value != h.faces[static_cast<std::size_t>(i)]->value)
            throw std::logic_error(std::string(what) + ": face " + std::to_string(i) + " does not match the horn");
}

/// Abelian case: sMC(K) is the simplicial vector space of degree-0 cocycles of K (x) Omega.
inline Simplex fill_horn_abelian(const LInftyAlgebra& K, const HornData& h)
{
    if (!K.is_abelian()) throw std::invalid_argument("fill_horn_abelian: algebra has brackets of arity >= 2");
    if (h.m < 1) throw std::invalid_argument("fill_horn_abelian: horn dimension must be at least 1");
    require_compatible_horn(h);
    for (int i = 0; i <= h.m; ++i)
        if (i != h.k) validate_simplex(K, *h.faces[static_cast<std::size_t>(i)]);
    Simplex s{h.m, moore_fill(horn_values(h, static_cast<std::size_t>(K.space().dim())), h.m, h.k,
                              static_cast<std::size_t>(K.space().dim()))};
    require_faces(s, h, "fill_horn_abelian");
    validate_simplex(K, s);
    return s;
}

/// Internal quantities of one tower step, exposed for inspection.
struct LiftTrace {
    int weight = 0;
    FormVec theta;
    FormVec eta;
    FormVec lambda;
};

namespace detail {

inline FormVec linear_part(const LInftyAlgebra& L, const FormVec& x, int depth)
{
    auto d1 = L.ops().arity_part(1);
    auto out = apply(L.space(), L.space(), d1, std::vector<const FormVec*>{&x});
    add_to(out, coefficient_differential(L.space(), x));
    return truncate_weight(L.space(), out, depth);
}

inline FormVec push_mod(const InftyMorphism& F, const FormVec& x, int depth, int dim)
{
    return on_simplex(truncate_weight(F.target().space(),
                                      pushforward_element(F.source().space(), F.target().space(), F.components(), x),
                                      depth),
                      dim);
}

inline bool weight_supported(const GradedSpace& s, const FormVec& v, int weight)
{
    for (int i = 0; i < s.dim(); ++i)
        if (!v[static_cast<std::size_t>(i)].is_zero() && s.weight(i) != weight) return false;
    return true;
}

inline std::vector<int> of_weight(const GradedSpace& s, int weight, std::optional<int> degree = std::nullopt)
{
    std::vector<int> out;
    for (int i = 0; i < s.dim(); ++i)
        if (s.weight(i) == weight && (!degree || s.degree(i) == *degree)) out.push_back(i);
    return out;
}

/// A right inverse of the weight-w part of phi, one preimage per target basis element.
inline std::vector<Vec<Rational>> kernel_section(const GradedMap& phi, int weight, PivotOrder order)
{
    const auto& S = phi.source();
    const auto& T = phi.target();
    auto cols = of_weight(S, weight);
    auto rows = of_weight(T, weight);
    auto M = phi.block(rows, cols);
    std::vector<Vec<Rational>> section(static_cast<std::size_t>(T.dim()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        std::vector<Rational> b(rows.size());
        b[r] = 1;
        auto res = solve_linear(M, b, order);
        if (!res.consistent)
            throw InfeasibleError("not a fibration: '" + T.name(rows[r]) + "' (weight " + std::to_string(weight) +
                                  ", degree " + std::to_string(T.degree(rows[r])) + ") has no preimage");
        Vec<Rational> v = zero_vec<Rational>(S);
        for (std::size_t c = 0; c < cols.size(); ++c) v[static_cast<std::size_t>(cols[c])] = res.solution[c];
        section[static_cast<std::size_t>(rows[r])] = std::move(v);
    }
    return section;
}

inline FormVec apply_section(const GradedSpace& S, const std::vector<Vec<Rational>>& section, const FormVec& eta, int dim)
{
    FormVec out(static_cast<std::size_t>(S.dim()), PolyForm(dim));
    for (std::size_t t = 0; t < section.size(); ++t) {
        if (eta[t].is_zero()) continue;
        for (std::size_t e = 0; e < section[t].size(); ++e)
            if (section[t][e] != 0) out[e] += eta[t] * section[t][e];
    }
    return out;
}

} // namespace detail

/// One step of the tower induction. Inputs live in the full bases with the weights at or
/// above the relevant depth set to zero: gamma is a horn of sMC(L / F_n), beta an m-simplex
/// of sMC(L / F_{n-1}), beta_tilde an m-simplex of sMC(L~ / F_n), subject to
/// p(gamma) = beta|horn, Phi(gamma) = beta_tilde|horn and Phi(beta) = p(beta_tilde).
/// Returns alpha in sMC(L / F_n) with d_i alpha = gamma_i, p(alpha) = beta, Phi(alpha) = beta_tilde.
inline Simplex lift_through_tower_step(const InftyMorphism& F, int n, const HornData& gamma, const Simplex& beta,
                                       const Simplex& beta_tilde, LiftTrace* trace = nullptr,
                                       PivotOrder order = PivotOrder::Lex)
{
    const auto& L = F.source();
    const auto& S = L.space();
    const auto& T = F.target().space();
    const int m = gamma.m;
    const auto dimS = static_cast<std::size_t>(S.dim());
    if (n < 2) throw std::invalid_argument("tower index must be at least 2");
    if (beta.dim != m || beta_tilde.dim != m) throw std::invalid_argument("lifting data have mismatched dimensions");
    require_compatible_horn(gamma);
    TensorAlgebra TL(L, m), TT(F.target(), m);

    validate_simplex(L, beta, n - 1);
    validate_simplex(F.target(), beta_tilde, n);
    if (truncate_weight(S, beta.value, n - 1) != on_simplex(beta.value, m))
        throw std::invalid_argument("beta has coordinates of weight >= n-1");
    if (detail::push_mod(F, beta.value, n - 1, m) != on_simplex(truncate_weight(T, beta_tilde.value, n - 1), m))
        throw ValidationError("lifting data: Phi(beta) != p(beta~)");
    for (int i = 0; i <= m; ++i) {
        if (i == gamma.k) continue;
        const auto& g = gamma.faces[static_cast<std::size_t>(i)]->value;
        validate_simplex(L, *gamma.faces[static_cast<std::size_t>(i)], n);
        if (on_simplex(truncate_weight(S, g, n - 1), m - 1) != face_forms(beta.value, i, m))
            throw ValidationError("lifting data: horn face " + std::to_string(i) + " does not lie over beta");
        if (detail::push_mod(F, g, n, m - 1) != on_simplex(truncate_weight(T, face_forms(beta_tilde.value, i, m), n), m - 1))
            throw ValidationError("lifting data: Phi(horn face " + std::to_string(i) + ") != face of beta~");
    }

    const int w = n - 1;
    Simplex alpha{m, {}};

    if (m == 0) {
        // acyclic-fibration case: solve d kappa = -curv(beta), phi kappa = beta~ - Phi(beta) on weight w
        auto cols = detail::of_weight(S, w, 0);
        auto crows = detail::of_weight(S, w, 1);
        auto trows = detail::of_weight(T, w, 0);
        auto curv0 = vertex_value(TL.curvature_mod(beta.value, n), 0);
        auto gap = vertex_value(beta_tilde.value, 0);
        sub_from(gap, vertex_value(detail::push_mod(F, beta.value, n, 0), 0));
        SparseMatrix M(static_cast<int>(crows.size() + trows.size()), static_cast<int>(cols.size()));
        std::vector<Rational> rhs;
        auto d = L.differential();
        auto phi = F.linear_term();
        for (std::size_t r = 0; r < crows.size(); ++r) {
            for (std::size_t c = 0; c < cols.size(); ++c)
                M.add(static_cast<int>(r), static_cast<int>(c), d.at(crows[r], cols[c]));
            rhs.push_back(-curv0[static_cast<std::size_t>(crows[r])]);
        }
        for (std::size_t r = 0; r < trows.size(); ++r) {
            for (std::size_t c = 0; c < cols.size(); ++c)
                M.add(static_cast<int>(crows.size() + r), static_cast<int>(c), phi.at(trows[r], cols[c]));
            rhs.push_back(gap[static_cast<std::size_t>(trows[r])]);
        }
        auto res = solve_linear(M, rhs, order);
        if (!res.consistent)
            throw InfeasibleError("no vertex lift at weight " + std::to_string(w) +
                                  ": the map is not an acyclic fibration there");
        auto x = vertex_value(beta.value, 0);
        for (std::size_t c = 0; c < cols.size(); ++c) x[static_cast<std::size_t>(cols[c])] += res.solution[c];
        alpha.value = constant_forms(x, 0);
    } else {
        // theta: extend the horn over beta, then cancel the curvature defect
        auto delta = horn_values(gamma, dimS);
        for (int i = 0; i <= m; ++i)
            if (i != gamma.k) sub_from(delta[static_cast<std::size_t>(i)], face_forms(beta.value, i, m));
        FormVec theta = on_simplex(beta.value, m);
        add_to(theta, moore_fill(delta, m, gamma.k, dimS));
        auto c = TL.curvature_mod(theta, n);
        if (!detail::weight_supported(S, c, w)) throw std::logic_error("curvature defect outside the kernel");
        sub_from(theta, homotopy_forms(S, c, gamma.k, m));
        if (!is_zero_vec(TL.curvature_mod(theta, n))) throw std::logic_error("theta is not Maurer-Cartan");

        // eta = Phi(theta) - beta~, an MC simplex of the abelian kernel vanishing on the horn
        auto eta = detail::push_mod(F, theta, n, m);
        sub_from(eta, on_simplex(beta_tilde.value, m));
        if (!detail::weight_supported(T, eta, w)) throw std::logic_error("eta is not in the kernel of the projection");
        if (!is_zero_vec(detail::linear_part(F.target(), eta, n))) throw std::logic_error("eta is not a cocycle");
        for (int i = 0; i <= m; ++i)
            if (i != gamma.k && !is_zero_vec(face_forms(eta, i, m)))
                throw std::logic_error("eta does not vanish on the horn");

        // lambda: a cocycle lift of eta vanishing on the horn
        auto section = detail::kernel_section(F.linear_term(), w, order);
        auto lambda0 = detail::apply_section(S, section, eta, m);
        auto lambda = lambda0;
        sub_from(lambda, homotopy_forms(S, detail::linear_part(L, lambda0, n), gamma.k, m));
        alpha.value = theta;
        sub_from(alpha.value, lambda);
        alpha.value = on_simplex(alpha.value, m);
        if (trace) *trace = {w, theta, eta, on_simplex(lambda, m)};
    }

    // (i) faces, (ii) projection, (iii) image, all exact
    validate_simplex(L, alpha, n);
    for (int i = 0; i <= m; ++i)
        if (i != gamma.k && face_simplex(alpha, i).value != on_simplex(gamma.faces[static_cast<std::size_t>(i)]->value, m - 1))
            throw std::logic_error("lift: face " + std::to_string(i) + " mismatch");
    if (on_simplex(truncate_weight(S, alpha.value, n - 1), m) != on_simplex(beta.value, m))
        throw std::logic_error("lift: projection mismatch");
    if (detail::push_mod(F, alpha.value, n, m) != on_simplex(truncate_weight(T, beta_tilde.value, n), m))
        throw std::logic_error("lift: image mismatch");
    return alpha;
}

inline HornData truncate_horn(const GradedSpace& s, const HornData& h, int depth)
{
    HornData out = h;
    for (auto& f : out.faces)
        if (f) f->value = on_simplex(truncate_weight(s, f->value, depth), f->dim);
    return out;
}

/// Lift of the horn h along Phi with prescribed image b, assembled up the tower.
inline Simplex kan_fibration_lift(const InftyMorphism& F, const HornData& h, const Simplex& b,
                                  std::vector<LiftTrace>* traces = nullptr, PivotOrder order = PivotOrder::Lex)
{
    require_compatible_horn(h);
    if (b.dim != h.m) throw std::invalid_argument("target simplex has the wrong dimension");
    validate_simplex(F.target(), b);
    for (int i = 0; i <= h.m; ++i) {
        if (i == h.k) continue;
        const auto& f = *h.faces[static_cast<std::size_t>(i)];
        validate_simplex(F.source(), f);
        if (apply_morphism(F, f).value != face_simplex(b, i).value)
            throw ValidationError("lifting data: Phi(horn face " + std::to_string(i) + ") != face of the target simplex");
    }
    const int top = std::max(F.source().truncation(), F.target().truncation());
    const auto& S = F.source().space();
    const auto& T = F.target().space();
    Simplex beta{h.m, FormVec(static_cast<std::size_t>(S.dim()), PolyForm(h.m))};
    for (int n = 2; n <= top; ++n) {
        LiftTrace tr;
        Simplex bt{h.m, on_simplex(truncate_weight(T, b.value, n), h.m)};
        beta = lift_through_tower_step(F, n, truncate_horn(S, h, n), beta, bt, &tr, order);
        if (traces && h.m > 0) traces->push_back(std::move(tr));
    }
    validate_simplex(F.source(), beta);
    if (h.m > 0) require_faces(beta, h, "kan_fibration_lift");
    if (apply_morphism(F, beta).value != on_simplex(b.value, h.m)) throw std::logic_error("kan_fibration_lift: image mismatch");
    return beta;
}

/// Kan filler in sMC(L), by lifting along L -> 0.
inline Simplex fill_horn_nilpotent(const LInftyAlgebra& L, const HornData& h, PivotOrder order = PivotOrder::Lex)
{
    if (h.m < 1) throw std::invalid_argument("horn dimension must be at least 1");
    InftyMorphism to_zero(L, zero_algebra(), {});
    return kan_fibration_lift(to_zero, h, Simplex{h.m, {}}, nullptr, order);
}

struct EdgeResult {
    bool found = false;
    Simplex edge;
    Vec<Rational> gauge;
    int iterations = 0;
    std::string report;
};

/// Searches for a gauge edge x(t) + xi dt from alpha0 (at t1 = 0) to alpha1 (at t1 = 1),
/// with xi constant of degree -1 and x' = -d^{x} xi. xi is corrected by solving against the
/// twisted differential at alpha0, exactly when possible and otherwise one weight at a time.
inline EdgeResult connect_by_edge(const LInftyAlgebra& L, const Vec<Rational>& alpha0, const Vec<Rational>& alpha1,
                                  int max_iterations = 0, PivotOrder order = PivotOrder::Lex)
{
    if (!is_mc(L, alpha0) || !is_mc(L, alpha1)) throw ValidationError("connect_by_edge: endpoints must be Maurer-Cartan");
    const auto& S = L.space();
    if (max_iterations <= 0) max_iterations = L.truncation() + 2;
    auto cols = S.indices_of_degree(-1);
    auto rows = S.indices_of_degree(0);
    SparseMatrix J(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) {
        auto u = unit_vec<Rational>(S, cols[c]);
        auto v = twisted_structure_apply(S, L.ops(), alpha0, std::vector<const Vec<Rational>*>{&u});
        for (std::size_t r = 0; r < rows.size(); ++r) J.add(static_cast<int>(r), static_cast<int>(c), -v[static_cast<std::size_t>(rows[r])]);
    }

    auto flow = [&](const Vec<Rational>& xi) {
        FormVec x = constant_forms(alpha0, 1);
        FormVec xif = constant_forms(xi, 1);
        PolyForm dt = PolyForm::dt(1, 1);
        for (int it = 0; it <= L.truncation() + 1; ++it) {
            auto rate = twisted_structure_apply(S, L.ops(), x, std::vector<const FormVec*>{&xif});
            FormVec next = constant_forms(alpha0, 1);
            for (std::size_t i = 0; i < next.size(); ++i)
                if (!rate[i].is_zero()) next[i] -= (rate[i] * dt).on(1).dilation_homotopy(0);
            next = on_simplex(next, 1);
            if (next == x) break;
            x = std::move(next);
        }
        return x;
    };

    EdgeResult res;
    Vec<Rational> xi = zero_vec<Rational>(S);
    for (int it = 0; it < max_iterations; ++it) {
        res.iterations = it + 1;
        auto x = flow(xi);
        auto r = alpha1;
        sub_from(r, vertex_value(x, 1));
        if (is_zero_vec(r)) {
            FormVec edge = x;
            for (int i = 0; i < S.dim(); ++i)
                if (xi[static_cast<std::size_t>(i)] != 0) edge[static_cast<std::size_t>(i)] += PolyForm::dt(1, 1) * xi[static_cast<std::size_t>(i)];
            res.edge = {1, on_simplex(edge, 1)};
            validate_simplex(L, res.edge);
            if (face_simplex(res.edge, 1).value != constant_forms(alpha0, 0) ||
                face_simplex(res.edge, 0).value != constant_forms(alpha1, 0))
                throw std::logic_error("connect_by_edge: endpoint mismatch");
            res.found = true;
            res.gauge = xi;
            res.report = "edge found after " + std::to_string(res.iterations) + " correction(s)";
            return res;
        }
        std::vector<Rational> rhs;
        for (int i : rows) rhs.push_back(r[static_cast<std::size_t>(i)]);
        auto sol = solve_linear(J, rhs, order);
        if (!sol.consistent) {
            int low = S.max_weight() + 1;
            for (int i : rows)
                if (r[static_cast<std::size_t>(i)] != 0) low = std::min(low, S.weight(i));
            std::vector<int> keep;
            for (std::size_t q = 0; q < rows.size(); ++q)
                if (S.weight(rows[q]) <= low) keep.push_back(static_cast<int>(q));
            SparseMatrix Jl(static_cast<int>(keep.size()), J.cols());
            std::vector<Rational> rl;
            for (std::size_t q = 0; q < keep.size(); ++q) {
                for (const auto& [c, v] : J.row(keep[q])) Jl.add(static_cast<int>(q), c, v);
                rl.push_back(rhs[static_cast<std::size_t>(keep[q])]);
            }
            sol = solve_linear(Jl, rl, order);
            if (!sol.consistent) {
                res.report = "no edge found: weight-" + std::to_string(low) +
                             " discrepancy is not a twisted coboundary (iterations used: " + std::to_string(it + 1) +
                             ", cap " + std::to_string(max_iterations) + ")";
                return res;
            }
        }
        for (std::size_t c = 0; c < cols.size(); ++c) xi[static_cast<std::size_t>(cols[c])] += sol.solution[c];
    }
    res.report = "no edge found under the iteration cap " + std::to_string(max_iterations);
    return res;
}

} // namespace linfty
