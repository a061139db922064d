#pragma once

#include "linfty/linfty.hpp"

#include <set>
#include <tuple>

namespace linfty {

/// One basis direction of Hom(S^m V, W): a sorted word and an output index.
struct Slot {
    MultiIndex word;
    int out;
};

/// Basis of the degree-`degree` maps S^arity(src) -> tgt that respect the weights, on words
/// of weight below the truncation.
inline std::vector<Slot> map_slots(const GradedSpace& src, const GradedSpace& tgt, int arity, int degree, int truncation)
{
    std::vector<Slot> out;
    for (const auto& w : symmetric_words(src, arity, truncation)) {
        const int d = total_degree(src, w) + degree;
        const int wt = total_weight(src, w);
        for (int k = 0; k < tgt.dim(); ++k)
            if (tgt.degree(k) == d && tgt.weight(k) >= wt) out.push_back({w, k});
    }
    return out;
}

/// The maps S^m(A) -> A, 1 <= m <= arity_cap, filtered by arity. Its Maurer-Cartan
/// elements (degree-1 collections squaring to zero) are the L-infinity structures on A.
class ConvAlgebra {
public:
    ConvAlgebra(GradedSpace space, int truncation, int arity_cap)
        : space_(std::move(space)), truncation_(truncation), arity_cap_(arity_cap)
    {
        if (truncation_ < 2) throw ValidationError("truncation depth must be at least 2");
        if (arity_cap_ < 1) throw ValidationError("arity cap must be at least 1");
    }

    [[nodiscard]] const GradedSpace& space() const { return space_; }
    [[nodiscard]] int truncation() const { return truncation_; }
    [[nodiscard]] int arity_cap() const { return arity_cap_; }

    [[nodiscard]] std::vector<Slot> slots(int arity, int degree) const
    {
        return map_slots(space_, space_, arity, degree, truncation_);
    }

    [[nodiscard]] int dim(int degree) const
    {
        int d = 0;
        for (int m = 1; m <= arity_cap_; ++m) d += static_cast<int>(slots(m, degree).size());
        return d;
    }

    /// Lowest arity carrying a nonzero component; arity_cap + 1 for zero.
    [[nodiscard]] int filtration_level(const Multilinear<Rational>& x) const
    {
        int level = arity_cap_ + 1;
        for (const auto& [w, img] : x.terms()) level = std::min(level, static_cast<int>(w.size()));
        return level;
    }

    [[nodiscard]] bool is_mc(const Multilinear<Rational>& q) const
    {
        try {
            return check_linfty(LInftyAlgebra(space_, q, truncation_, arity_cap_)).ok();
        } catch (const ValidationError&) {
            return false;
        }
    }

private:
    GradedSpace space_;
    int truncation_;
    int arity_cap_;
};

/// Candidate (Q_A, F, Q_B): brackets on A (arity 1 is the differential of A), components of
/// an infinity-morphism A -> B (arity 1 is phi), brackets on B.
struct CylTriple {
    GradedSpace a;
    GradedSpace b;
    int truncation = 2;
    int arity_cap = 1;
    Multilinear<Rational> q_a;
    Multilinear<Rational> f;
    Multilinear<Rational> q_b;

    bool operator==(const CylTriple&) const = default;

    [[nodiscard]] GradedMap phi() const
    {
        GradedMap m(a, b, 0);
        for (const auto& [w, img] : f.terms())
            if (w.size() == 1)
                for (const auto& [k, c] : img) m.set(k, w[0], c);
        return m;
    }

    [[nodiscard]] ChainComplex complex_a() const
    {
        GradedMap d(a, a, 1);
        for (const auto& [w, img] : q_a.terms())
            if (w.size() == 1)
                for (const auto& [k, c] : img) d.set(k, w[0], c);
        return ChainComplex(d);
    }

    void validate() const
    {
        if (truncation < 2) throw ValidationError("truncation depth must be at least 2");
        if (arity_cap < 1) throw ValidationError("arity cap must be at least 1");
        for (const auto* s : {&a, &b})
            for (int i = 0; i < s->dim(); ++i)
                if (s->weight(i) < 1 || s->weight(i) >= truncation)
                    throw ValidationError("weight of '" + s->name(i) + "' must lie in [1, " +
                                          std::to_string(truncation - 1) + "]");
        check_map("Q_A", a, a, q_a, 1, arity_cap);
        check_map("F", a, b, f, 0, arity_cap);
        check_map("Q_B", b, b, q_b, 1, 0);
    }

private:
    static void check_map(const std::string& what, const GradedSpace& src, const GradedSpace& tgt,
                          const Multilinear<Rational>& m, int degree, int cap)
    {
        for (const auto& [w, img] : m.terms()) {
            if (cap > 0 && static_cast<int>(w.size()) > cap)
                throw ValidationError(what + " has a component of arity " + std::to_string(w.size()) +
                                      " above the arity cap");
            const int d = total_degree(src, w) + degree;
            const int wt = total_weight(src, w);
            for (const auto& [k, c] : img) {
                if (tgt.degree(k) != d)
                    throw ValidationError(what + " on " + word_to_string(src, w) + " hits '" + tgt.name(k) +
                                          "' of the wrong degree");
                if (tgt.weight(k) < wt)
                    throw ValidationError(what + " on " + word_to_string(src, w) + " lowers weight into '" +
                                          tgt.name(k) + "'");
            }
        }
    }
};

/// Residuals of the three Maurer-Cartan conditions, one entry per checked word (zero or not).
struct CylCurvature {
    std::vector<Residual> a, f, b;

    [[nodiscard]] bool zero() const { return first_failure() == nullptr; }

    [[nodiscard]] const Residual* first_failure() const
    {
        for (const auto* list : {&a, &f, &b})
            for (const auto& r : *list)
                if (!is_zero_vec(r.value)) return &r;
        return nullptr;
    }

    [[nodiscard]] std::size_t checked() const { return a.size() + f.size() + b.size(); }
};

inline CylCurvature cyl_curvature(const CylTriple& t)
{
    t.validate();
    CylCurvature c;
    const int top = std::min(t.arity_cap, t.truncation - 1);
    for (int n = 1; n <= top; ++n) {
        const auto arity = std::to_string(n);
        for (const auto& w : symmetric_words(t.a, n, t.truncation)) {
            c.a.push_back({"Q_A Q_A = 0 at arity " + arity, w, linfty_relation(t.a, t.q_a, w)});
            c.f.push_back(
                {"F Q_A = Q_B F at arity " + arity, w, morphism_relation(t.a, t.b, t.q_a, t.q_b, t.f, w)});
        }
        for (const auto& w : symmetric_words(t.b, n, t.truncation))
            c.b.push_back({"Q_B Q_B = 0 at arity " + arity, w, linfty_relation(t.b, t.q_b, w)});
    }
    return c;
}

inline const Multilinear<Rational>& project_piB(const CylTriple& t) { return t.q_b; }

/// A row of an inconsistent stage system with its multiplier in the certificate.
struct ObstructionRow {
    std::string identity;
    MultiIndex word;
    std::string coordinate;
    Rational multiplier;
    Rational value;
};

/// y with yM = 0 and y.b != 0 for the stage system M x = b: no choice of the arity-m
/// unknowns removes the residual.
struct Obstruction {
    int arity = 0;
    Rational pairing;
    std::vector<ObstructionRow> rows;
};

class TransferObstruction : public InfeasibleError {
public:
    TransferObstruction(const std::string& what, Obstruction o) : InfeasibleError(what), obstruction(std::move(o)) {}
    Obstruction obstruction;
};

namespace detail {

inline std::vector<Rational> stage_residual(const CylTriple& t, const std::vector<MultiIndex>& words)
{
    std::vector<Rational> r;
    for (const auto& w : words) {
        auto va = linfty_relation(t.a, t.q_a, w);
        auto vf = morphism_relation(t.a, t.b, t.q_a, t.q_b, t.f, w);
        r.insert(r.end(), va.begin(), va.end());
        r.insert(r.end(), vf.begin(), vf.end());
    }
    return r;
}

inline Obstruction stage_obstruction(const CylTriple& t, int m, const std::vector<MultiIndex>& words,
                                     const std::vector<Rational>& rhs, const std::vector<Rational>& y)
{
    Obstruction o;
    o.arity = m;
    const std::size_t block = static_cast<std::size_t>(t.a.dim() + t.b.dim());
    for (std::size_t i = 0; i < y.size(); ++i) {
        o.pairing += y[i] * rhs[i];
        if (y[i] == 0) continue;
        const auto& w = words[i / block];
        const int r = static_cast<int>(i % block);
        const auto arity = std::to_string(m);
        if (r < t.a.dim())
            o.rows.push_back({"Q_A Q_A = 0 at arity " + arity, w, t.a.name(r), y[i], -rhs[i]});
        else
            o.rows.push_back({"F Q_A = Q_B F at arity " + arity, w, t.b.name(r - t.a.dim()), y[i], -rhs[i]});
    }
    return o;
}

inline std::string describe(const CylTriple& t, const Obstruction& o)
{
    std::string s = "obstruction at arity " + std::to_string(o.arity);
    if (!o.rows.empty()) {
        const auto& r = o.rows.front();
        s += ": " + r.identity + " on " + word_to_string(t.a, r.word) + ", coordinate '" + r.coordinate + "'";
    }
    return s;
}

/// Solves the arity-m identities for Q_A and F at arity m, lower arities fixed. The
/// identities are affine in these unknowns; columns are found by probing.
inline void solve_transfer_stage(CylTriple& t, int m, PivotOrder order)
{
    const auto words = symmetric_words(t.a, m, t.truncation);
    const auto qs = map_slots(t.a, t.a, m, 1, t.truncation);
    const auto fs = map_slots(t.a, t.b, m, 0, t.truncation);
    const auto base = stage_residual(t, words);
    const int cols = static_cast<int>(qs.size() + fs.size());
    SparseMatrix M(static_cast<int>(base.size()), cols);
    for (int j = 0; j < cols; ++j) {
        CylTriple probe = t;
        if (j < static_cast<int>(qs.size()))
            probe.q_a.add(t.a, qs[static_cast<std::size_t>(j)].word, qs[static_cast<std::size_t>(j)].out, 1);
        else {
            const auto& s = fs[static_cast<std::size_t>(j) - qs.size()];
            probe.f.add(t.a, s.word, s.out, 1);
        }
        auto r = stage_residual(probe, words);
        for (std::size_t i = 0; i < r.size(); ++i) M.add(static_cast<int>(i), j, r[i] - base[i]);
    }
    std::vector<Rational> rhs(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) rhs[i] = -base[i];
    auto sol = solve_linear(M, rhs, order);
    if (!sol.consistent) {
        auto o = stage_obstruction(t, m, words, rhs, sol.certificate);
        throw TransferObstruction(describe(t, o), std::move(o));
    }
    for (int j = 0; j < cols; ++j) {
        const auto& v = sol.solution[static_cast<std::size_t>(j)];
        if (v == 0) continue;
        if (j < static_cast<int>(qs.size()))
            t.q_a.add(t.a, qs[static_cast<std::size_t>(j)].word, qs[static_cast<std::size_t>(j)].out, v);
        else {
            const auto& s = fs[static_cast<std::size_t>(j) - qs.size()];
            t.f.add(t.a, s.word, s.out, v);
        }
    }
}

} // namespace detail

/// Transferred structure: (Q_A, F, Q_B) with Q_B the brackets of B, F linear term phi, and
/// all three identities exact up to the arity cap. Arity by arity, the Q_A unknowns are
/// listed before the F unknowns, so the lexicographic order prefers to absorb residuals
/// into Q_A. An inconsistent stage throws TransferObstruction with its certificate.
inline CylTriple transfer(const LInftyAlgebra& B, const ChainComplex& A, const GradedMap& phi, int arity_cap,
                          PivotOrder order = PivotOrder::Lex)
{
    if (arity_cap < 1) throw std::invalid_argument("arity cap must be at least 1");
    if (auto rep = check_linfty(B); !rep.ok())
        throw ValidationError("transfer: B fails " + rep.first_failure()->identity + " on " +
                              word_to_string(B.space(), rep.first_failure()->word));
    detail::require_filtered_chain_map(phi, A, B.complex());

    CylTriple t;
    t.a = A.space();
    t.b = B.space();
    t.truncation = B.truncation();
    t.arity_cap = arity_cap;
    for (const auto& [k, c] : A.differential().entries()) t.q_a.add(t.a, {k.second}, k.first, c);
    for (const auto& [k, c] : phi.entries()) t.f.add(t.a, {k.second}, k.first, c);
    t.q_b = B.ops();
    t.validate();

    const int top = std::min(arity_cap, t.truncation - 1);
    for (int m = 2; m <= top; ++m) detail::solve_transfer_stage(t, m, order);
    if (auto c = cyl_curvature(t); !c.zero())
        throw std::logic_error("transfer: nonzero residual " + c.first_failure()->identity);
    return t;
}

/// The L-infinity algebra (A, Q_A) and the infinity-morphism F : A -> B of a solution.
inline LInftyAlgebra transferred_algebra(const CylTriple& t)
{
    return LInftyAlgebra(t.a, t.q_a, t.truncation, t.arity_cap);
}

inline InftyMorphism transferred_morphism(const CylTriple& t)
{
    return InftyMorphism(transferred_algebra(t), LInftyAlgebra(t.b, t.q_b, t.truncation), t.f);
}

/// A 1-simplex of solutions: Q_A and F with polynomial-form coefficients on the 1-simplex,
/// Q_B constant. Vertex 0 is t0 (face d_1), vertex 1 is t1 (face d_0).
struct CylEdge {
    CylTriple t0;
    CylTriple t1;
    Multilinear<PolyForm> q_a;
    Multilinear<PolyForm> f;
    Multilinear<PolyForm> q_b;
    int poly_degree = 0;
};

struct FormResidual {
    std::string identity;
    MultiIndex word;
    Vec<PolyForm> value;
};

struct EdgeCurvature {
    std::vector<FormResidual> a, f, b;

    [[nodiscard]] const FormResidual* first_failure() const
    {
        for (const auto* list : {&a, &f, &b})
            for (const auto& r : *list)
                if (!is_zero_vec(r.value)) return &r;
        return nullptr;
    }
    [[nodiscard]] bool zero() const { return first_failure() == nullptr; }
    [[nodiscard]] std::size_t checked() const { return a.size() + f.size() + b.size(); }
};

inline Multilinear<PolyForm> constant_family(const GradedSpace& src, const Multilinear<Rational>& m, int n = 1)
{
    Multilinear<PolyForm> r;
    for (const auto& [w, img] : m.terms())
        for (const auto& [k, c] : img) r.add(src, w, k, PolyForm::constant(c, n));
    return r;
}

inline Multilinear<Rational> at_vertex(const GradedSpace& src, const Multilinear<PolyForm>& m, int v)
{
    Multilinear<Rational> r;
    for (const auto& [w, img] : m.terms())
        for (const auto& [k, c] : img) r.add(src, w, k, c.on(1).eval_vertex(v));
    return r;
}

inline CylTriple edge_vertex(const CylEdge& e, int v)
{
    CylTriple t = e.t0;
    t.q_a = at_vertex(t.a, e.q_a, v);
    t.f = at_vertex(t.a, e.f, v);
    t.q_b = at_vertex(t.b, e.q_b, v);
    return t;
}

namespace detail {

/// Every coefficient has total degree (map degree + form degree) equal to `degree`.
inline void require_family_degree(const std::string& what, const GradedSpace& src, const GradedSpace& tgt,
                                  const Multilinear<PolyForm>& m, int degree)
{
    for (const auto& [w, img] : m.terms())
        for (const auto& [k, c] : img) {
            const int map_degree = tgt.degree(k) - total_degree(src, w);
            for (const auto& [key, q] : c.terms())
                if (map_degree + key.form_degree() != degree)
                    throw ValidationError(what + " on " + word_to_string(src, w) + " into '" + tgt.name(k) +
                                          "' has a coefficient of the wrong form degree");
        }
}

inline Vec<PolyForm> on_edge(Vec<PolyForm> v)
{
    for (auto& c : v) c = c.on(1);
    return v;
}

} // namespace detail

inline EdgeCurvature edge_curvature(const CylEdge& e)
{
    const auto& t = e.t0;
    detail::require_family_degree("Q_A", t.a, t.a, e.q_a, 1);
    detail::require_family_degree("F", t.a, t.b, e.f, 0);
    detail::require_family_degree("Q_B", t.b, t.b, e.q_b, 1);
    EdgeCurvature c;
    const int top = std::min(t.arity_cap, t.truncation - 1);
    for (int n = 1; n <= top; ++n) {
        const auto arity = std::to_string(n);
        for (const auto& w : symmetric_words(t.a, n, t.truncation)) {
            c.a.push_back({"Q_A Q_A = 0 at arity " + arity, w, detail::on_edge(linfty_relation(t.a, e.q_a, w))});
            c.f.push_back({"F Q_A = Q_B F at arity " + arity, w,
                           detail::on_edge(morphism_relation(t.a, t.b, e.q_a, e.q_b, e.f, w))});
        }
        for (const auto& w : symmetric_words(t.b, n, t.truncation))
            c.b.push_back({"Q_B Q_B = 0 at arity " + arity, w, detail::on_edge(linfty_relation(t.b, e.q_b, w))});
    }
    return c;
}

/// Faces, constancy of Q_B and exact vanishing of the edge curvature.
inline void verify_edge(const CylEdge& e)
{
    if (!(edge_vertex(e, 0) == e.t0)) throw ValidationError("edge: vertex 0 differs from the first solution");
    if (!(edge_vertex(e, 1) == e.t1)) throw ValidationError("edge: vertex 1 differs from the second solution");
    if (!(e.q_b == constant_family(e.t0.b, e.t0.q_b))) throw ValidationError("edge: Q_B is not constant");
    if (auto c = edge_curvature(e); !c.zero())
        throw ValidationError("edge: nonzero residual " + c.first_failure()->identity + " on " +
                              word_to_string(e.t0.a, c.first_failure()->word));
}

namespace detail {

using EdgeRowKey = std::tuple<int, int, int, PolyForm::Key>;

struct EdgeUnknown {
    bool in_f;
    Slot slot;
    PolyForm::Key monomial;
    bool zero_form;
};

inline std::map<EdgeRowKey, Rational> edge_stage_residual(const CylEdge& e, const std::vector<MultiIndex>& words)
{
    const auto& t = e.t0;
    std::map<EdgeRowKey, Rational> r;
    for (std::size_t i = 0; i < words.size(); ++i) {
        auto va = linfty_relation(t.a, e.q_a, words[i]);
        auto vf = morphism_relation(t.a, t.b, e.q_a, e.q_b, e.f, words[i]);
        for (int kind = 0; kind < 2; ++kind) {
            const auto& v = kind == 0 ? va : vf;
            for (std::size_t k = 0; k < v.size(); ++k)
                for (const auto& [key, c] : v[k].terms())
                    r[{static_cast<int>(i), kind, static_cast<int>(k), key}] += c;
        }
    }
    return r;
}

inline PolyForm::Key t_power(int k, bool with_dt)
{
    PolyForm::Key key;
    key.exp[0] = static_cast<std::uint16_t>(k);
    if (with_dt) key.wedge = 1;
    return key;
}

inline Rational slot_value(const Multilinear<Rational>& m, const Slot& s)
{
    const auto* img = m.find(s.word);
    if (!img) return 0;
    auto it = img->find(s.out);
    return it == img->end() ? Rational(0) : it->second;
}

/// Arity-m unknowns of the edge with polynomial degree <= D: 0-form coefficients
/// sum_k c_k t^k, 1-form coefficients sum_k c_k t^k dt (k < D). Returns the solve result
/// and, on success, writes the solution into e.
inline SolveResult solve_edge_stage(CylEdge& e, int m, int D, PivotOrder order, std::vector<std::string>* labels)
{
    const auto& t = e.t0;
    const int N = t.truncation;
    const auto words = symmetric_words(t.a, m, N);
    std::vector<EdgeUnknown> unknowns;
    auto add_slots = [&](bool in_f, const std::vector<Slot>& slots, bool zero_form) {
        for (const auto& s : slots)
            for (int k = 0; k <= (zero_form ? D : D - 1); ++k)
                unknowns.push_back({in_f, s, t_power(k, !zero_form), zero_form});
    };
    add_slots(false, map_slots(t.a, t.a, m, 1, N), true);
    add_slots(false, map_slots(t.a, t.a, m, 0, N), false);
    add_slots(true, map_slots(t.a, t.b, m, 0, N), true);
    add_slots(true, map_slots(t.a, t.b, m, -1, N), false);

    auto install = [&](CylEdge& target, const EdgeUnknown& u, const Rational& c) {
        auto form = PolyForm::monomial(c, u.monomial, 1);
        if (u.in_f)
            target.f.add(t.a, u.slot.word, u.slot.out, form);
        else
            target.q_a.add(t.a, u.slot.word, u.slot.out, form);
    };

    const auto base = edge_stage_residual(e, words);
    std::vector<std::map<EdgeRowKey, Rational>> columns;
    std::set<EdgeRowKey> keys;
    for (const auto& [k, c] : base) keys.insert(k);
    for (const auto& u : unknowns) {
        CylEdge probe = e;
        install(probe, u, 1);
        auto r = edge_stage_residual(probe, words);
        for (const auto& [k, c] : base) r[k] -= c;
        std::map<EdgeRowKey, Rational> col;
        for (const auto& [k, c] : r)
            if (c != 0) {
                col.emplace(k, c);
                keys.insert(k);
            }
        columns.push_back(std::move(col));
    }

    std::map<EdgeRowKey, int> row_of;
    for (const auto& k : keys) row_of.emplace(k, static_cast<int>(row_of.size()));
    // vertex conditions: two rows per 0-form slot
    std::vector<std::pair<bool, Slot>> vertex_slots;
    for (const auto& u : unknowns)
        if (u.zero_form && u.monomial.exp[0] == 0) vertex_slots.push_back({u.in_f, u.slot});
    const int relation_rows = static_cast<int>(row_of.size());
    const int rows = relation_rows + 2 * static_cast<int>(vertex_slots.size());
    SparseMatrix M(rows, static_cast<int>(unknowns.size()));
    std::vector<Rational> rhs(static_cast<std::size_t>(rows));
    for (const auto& [k, c] : base) rhs[static_cast<std::size_t>(row_of.at(k))] = -c;
    for (std::size_t j = 0; j < unknowns.size(); ++j)
        for (const auto& [k, c] : columns[j]) M.add(row_of.at(k), static_cast<int>(j), c);

    for (std::size_t v = 0; v < vertex_slots.size(); ++v) {
        const auto& [in_f, slot] = vertex_slots[v];
        const int r0 = relation_rows + 2 * static_cast<int>(v);
        for (std::size_t j = 0; j < unknowns.size(); ++j) {
            const auto& u = unknowns[j];
            if (u.in_f != in_f || !u.zero_form || u.slot.word != slot.word || u.slot.out != slot.out) continue;
            if (u.monomial.exp[0] == 0) M.add(r0, static_cast<int>(j), 1);
            M.add(r0 + 1, static_cast<int>(j), 1);
        }
        const auto& m0 = in_f ? e.t0.f : e.t0.q_a;
        const auto& m1 = in_f ? e.t1.f : e.t1.q_a;
        rhs[static_cast<std::size_t>(r0)] = slot_value(m0, slot);
        rhs[static_cast<std::size_t>(r0 + 1)] = slot_value(m1, slot);
    }

    auto sol = solve_linear(M, rhs, order);
    if (sol.consistent) {
        for (std::size_t j = 0; j < unknowns.size(); ++j)
            if (sol.solution[j] != 0) install(e, unknowns[j], sol.solution[j]);
    } else if (labels) {
        const GradedSpace* spaces[2] = {&t.a, &t.b};
        labels->assign(static_cast<std::size_t>(rows), "");
        for (const auto& [k, r] : row_of) {
            const auto& [wi, kind, coord, key] = k;
            (*labels)[static_cast<std::size_t>(r)] =
                std::string(kind == 0 ? "Q_A Q_A = 0" : "F Q_A = Q_B F") + " on " +
                word_to_string(t.a, words[static_cast<std::size_t>(wi)]) + ", coordinate '" +
                spaces[kind]->name(coord) + "', monomial " + PolyForm::monomial(1, key, 1).to_string();
        }
        for (std::size_t v = 0; v < vertex_slots.size(); ++v) {
            const auto& [in_f, slot] = vertex_slots[v];
            auto name = std::string(in_f ? "F" : "Q_A") + " on " + word_to_string(t.a, slot.word) + " into '" +
                        (in_f ? t.b : t.a).name(slot.out) + "'";
            (*labels)[static_cast<std::size_t>(relation_rows) + 2 * v] = "vertex 0 of " + name;
            (*labels)[static_cast<std::size_t>(relation_rows) + 2 * v + 1] = "vertex 1 of " + name;
        }
    }
    return sol;
}

} // namespace detail

/// Edge between two solutions over the same (B, phi): arity by arity, solve for polynomial
/// families with the given endpoint values, raising the polynomial degree until the stage
/// system is consistent.
inline CylEdge connect_solutions(const CylTriple& t0, const CylTriple& t1, PivotOrder order = PivotOrder::Lex,
                                 int max_degree = 6)
{
    for (const auto* t : {&t0, &t1})
        if (auto c = cyl_curvature(*t); !c.zero())
            throw ValidationError("connect: input is not a solution: " + c.first_failure()->identity + " on " +
                                  word_to_string(t->a, c.first_failure()->word));
    if (!(t0.a == t1.a) || !(t0.b == t1.b) || t0.truncation != t1.truncation || t0.arity_cap != t1.arity_cap)
        throw ValidationError("connect: solutions live over different spaces");
    if (!(t0.q_b == t1.q_b)) throw ValidationError("connect: solutions have different Q_B");
    if (!(t0.q_a.arity_part(1) == t1.q_a.arity_part(1)) || !(t0.f.arity_part(1) == t1.f.arity_part(1)))
        throw ValidationError("connect: solutions have different differential or phi");

    CylEdge e{t0, t1, {}, {}, constant_family(t0.b, t0.q_b), 0};
    if (t0 == t1) {
        e.q_a = constant_family(t0.a, t0.q_a);
        e.f = constant_family(t0.a, t0.f);
        verify_edge(e);
        return e;
    }
    e.q_a = constant_family(t0.a, t0.q_a.arity_part(1));
    e.f = constant_family(t0.a, t0.f.arity_part(1));
    const int top = std::min(t0.arity_cap, t0.truncation - 1);
    for (int m = 2; m <= top; ++m) {
        SolveResult last;
        std::vector<std::string> labels;
        bool done = false;
        for (int D = 1; D <= max_degree && !done; ++D) {
            last = detail::solve_edge_stage(e, m, D, order, &labels);
            if (last.consistent) {
                e.poly_degree = std::max(e.poly_degree, D);
                done = true;
            }
        }
        if (!done) {
            Obstruction o;
            o.arity = m;
            for (std::size_t i = 0; i < last.certificate.size(); ++i)
                if (last.certificate[i] != 0) o.rows.push_back({labels[i], {}, "", last.certificate[i], 0});
            throw TransferObstruction("connect: obstruction at arity " + std::to_string(m) +
                                          " up to polynomial degree " + std::to_string(max_degree),
                                      std::move(o));
        }
    }
    verify_edge(e);
    return e;
}

} // namespace linfty
