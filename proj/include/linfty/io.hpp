#pragma once

#include "linfty/htt.hpp"
#include "linfty/simplicial.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <map>
#include <sstream>
#include <string>

namespace linfty::io {

using json = nlohmann::json;

inline constexpr const char* kFormatName = "linfty-problem";
inline constexpr int kFormatVersion = 1;

/// Syntactically or referentially broken input (exit code 3 in the CLI).
class MalformedInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct MorphismDecl {
    std::string source;
    std::string target;
    InftyMorphism map;
};

struct McDecl {
    std::string algebra;
    Vec<Rational> value;
};

struct SimplexDecl {
    std::string algebra;
    Simplex simplex;
};

struct HornDecl {
    std::string algebra;
    HornData horn;
};

struct LiftDecl {
    std::string morphism;
    HornData horn;
    Simplex target;
};

struct TransferDecl {
    std::string b;
    std::string a;
    GradedMap phi;
    int arity_cap = 0;
};

struct SolutionDecl {
    std::string b;
    std::string a;
    CylTriple triple;
};

struct EdgeDecl {
    std::string solution0;
    std::string solution1;
    CylEdge edge;
};

struct Problem {
    std::map<std::string, LInftyAlgebra> algebras;
    std::map<std::string, MorphismDecl> morphisms;
    std::map<std::string, McDecl> mc_elements;
    std::map<std::string, SimplexDecl> simplices;
    std::map<std::string, HornDecl> horn_problems;
    std::map<std::string, LiftDecl> lifting_problems;
    std::map<std::string, TransferDecl> transfer_problems;
    std::map<std::string, SolutionDecl> solutions;
    std::map<std::string, EdgeDecl> edges;
    json certificates = json::object();
};

struct LoadOptions {
    /// Work in L / F_n for every algebra when 2 <= n < N; 0 keeps the declared depths.
    int truncation_depth = 0;
};

// ---------------------------------------------------------------------------------------
// writing

inline json basis_to_json(const GradedSpace& s)
{
    json out = json::array();
    for (const auto& b : s.basis()) out.push_back({{"name", b.name}, {"degree", b.degree}, {"weight", b.weight}});
    return out;
}

inline json coeff_to_json(const Rational& q) { return to_string(q); }
inline json coeff_to_json(const PolyForm& f) { return f.to_string(); }

template <class C>
json ops_to_json(const GradedSpace& src, const GradedSpace& tgt, const Multilinear<C>& m)
{
    json out = json::array();
    for (const auto& [w, img] : m.terms()) {
        json inputs = json::array();
        for (int i : w) inputs.push_back(src.name(i));
        json output = json::object();
        for (const auto& [k, c] : img) output[tgt.name(k)] = coeff_to_json(c);
        out.push_back({{"inputs", inputs}, {"output", output}});
    }
    return out;
}

inline json vec_to_json(const GradedSpace& s, const Vec<Rational>& v)
{
    json out = json::object();
    for (int i = 0; i < s.dim(); ++i)
        if (v[static_cast<std::size_t>(i)] != 0) out[s.name(i)] = to_string(v[static_cast<std::size_t>(i)]);
    return out;
}

inline json forms_to_json(const GradedSpace& s, const FormVec& v)
{
    json out = json::object();
    for (int i = 0; i < s.dim(); ++i)
        if (!v[static_cast<std::size_t>(i)].is_zero()) out[s.name(i)] = v[static_cast<std::size_t>(i)].to_string();
    return out;
}

inline json algebra_to_json(const LInftyAlgebra& L)
{
    return {{"truncation", L.truncation()},
            {"arity_cap", L.arity_cap()},
            {"basis", basis_to_json(L.space())},
            {"ops", ops_to_json(L.space(), L.space(), L.ops())}};
}

inline json simplex_to_json(const GradedSpace& s, const Simplex& x)
{
    return {{"dim", x.dim}, {"value", forms_to_json(s, x.value)}};
}

inline json horn_to_json(const GradedSpace& s, const HornData& h)
{
    json faces = json::object();
    for (int i = 0; i <= h.m; ++i)
        if (h.faces[static_cast<std::size_t>(i)])
            faces[std::to_string(i)] = simplex_to_json(s, *h.faces[static_cast<std::size_t>(i)]);
    return {{"m", h.m}, {"k", h.k}, {"faces", faces}};
}

inline json map_to_json(const GradedMap& f)
{
    json out = json::object();
    for (const auto& [k, c] : f.entries()) out[f.source().name(k.second)][f.target().name(k.first)] = to_string(c);
    return out;
}

inline json to_json(const Problem& p)
{
    json out = {{"format", kFormatName}, {"version", kFormatVersion}};
    auto section = [&](const char* key, const auto& decls, auto&& write) {
        if (decls.empty()) return;
        json obj = json::object();
        for (const auto& [name, d] : decls) obj[name] = write(d);
        out[key] = std::move(obj);
    };
    section("algebras", p.algebras, [](const LInftyAlgebra& L) { return algebra_to_json(L); });
    section("morphisms", p.morphisms, [](const MorphismDecl& d) {
        return json{{"source", d.source},
                    {"target", d.target},
                    {"components",
                     ops_to_json(d.map.source().space(), d.map.target().space(), d.map.components())}};
    });
    section("mc_elements", p.mc_elements, [&](const McDecl& d) {
        return json{{"algebra", d.algebra}, {"value", vec_to_json(p.algebras.at(d.algebra).space(), d.value)}};
    });
    section("simplices", p.simplices, [&](const SimplexDecl& d) {
        auto j = simplex_to_json(p.algebras.at(d.algebra).space(), d.simplex);
        j["algebra"] = d.algebra;
        return j;
    });
    section("horn_problems", p.horn_problems, [&](const HornDecl& d) {
        auto j = horn_to_json(p.algebras.at(d.algebra).space(), d.horn);
        j["algebra"] = d.algebra;
        return j;
    });
    section("lifting_problems", p.lifting_problems, [&](const LiftDecl& d) {
        const auto& F = p.morphisms.at(d.morphism).map;
        return json{{"morphism", d.morphism},
                    {"horn", horn_to_json(F.source().space(), d.horn)},
                    {"target", simplex_to_json(F.target().space(), d.target)}};
    });
    section("transfer_problems", p.transfer_problems, [](const TransferDecl& d) {
        json j = {{"B", d.b}, {"A", d.a}, {"phi", map_to_json(d.phi)}};
        if (d.arity_cap > 0) j["arity_cap"] = d.arity_cap;
        return j;
    });
    section("solutions", p.solutions, [](const SolutionDecl& d) {
        const auto& t = d.triple;
        return json{{"B", d.b},
                    {"A", d.a},
                    {"arity_cap", t.arity_cap},
                    {"q_a", ops_to_json(t.a, t.a, t.q_a)},
                    {"f", ops_to_json(t.a, t.b, t.f)}};
    });
    section("edges", p.edges, [](const EdgeDecl& d) {
        const auto& e = d.edge;
        return json{{"solution0", d.solution0},
                    {"solution1", d.solution1},
                    {"poly_degree", e.poly_degree},
                    {"q_a", ops_to_json(e.t0.a, e.t0.a, e.q_a)},
                    {"f", ops_to_json(e.t0.a, e.t0.b, e.f)}};
    });
    if (!p.certificates.empty()) out["certificates"] = p.certificates;
    return out;
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------------------
// reading

namespace detail {

inline const json& need(const json& obj, const char* key, const std::string& where)
{
    if (!obj.is_object()) throw MalformedInput(where + ": expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw MalformedInput(where + ": missing '" + key + "'");
    return *it;
}

inline std::string need_string(const json& obj, const char* key, const std::string& where)
{
    const auto& v = need(obj, key, where);
    if (!v.is_string()) throw MalformedInput(where + ": '" + key + "' must be a string");
    return v.get<std::string>();
}

inline int need_int(const json& obj, const char* key, const std::string& where)
{
    const auto& v = need(obj, key, where);
    if (!v.is_number_integer()) throw MalformedInput(where + ": '" + key + "' must be an integer");
    return v.get<int>();
}

inline Rational rational_of(const json& v, const std::string& where)
{
    if (v.is_number_integer()) return Rational(v.get<long>());
    if (!v.is_string()) throw MalformedInput(where + ": rationals are written as strings such as \"-3/2\"");
    try {
        return parse_rational(v.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw MalformedInput(where + ": " + e.what());
    }
}

/// An algebra's declared space and the space in use (smaller under a truncation override).
struct SpaceView {
    GradedSpace declared;
    GradedSpace current;

    /// Index in the current space, nullopt for an element removed by truncation.
    [[nodiscard]] std::optional<int> lookup(const std::string& name, const std::string& where) const
    {
        if (!declared.find(name)) throw MalformedInput(where + ": unknown basis element '" + name + "'");
        return current.find(name);
    }
};

class Reader {
public:
    explicit Reader(LoadOptions opts) : opts_(opts) {}

    Problem read(const json& root)
    {
        if (!root.is_object()) throw MalformedInput("problem file must be a JSON object");
        if (root.contains("format") && root["format"] != kFormatName)
            throw MalformedInput("unknown format '" + root["format"].dump() + "'");
        if (root.contains("version")) {
            if (!root["version"].is_number_integer() || root["version"].get<int>() != kFormatVersion)
                throw MalformedInput("unsupported format version " + root["version"].dump());
        }
        static const std::set<std::string> known = {"format",          "version",          "algebras",
                                                    "morphisms",       "mc_elements",      "simplices",
                                                    "horn_problems",   "lifting_problems", "transfer_problems",
                                                    "solutions",       "edges",            "certificates"};
        for (const auto& [k, v] : root.items())
            if (!known.count(k)) throw MalformedInput("unknown section '" + k + "'");

        Problem p;
        each(root, "algebras", [&](const std::string& n, const json& j) { read_algebra(p, n, j); });
        each(root, "morphisms", [&](const std::string& n, const json& j) { read_morphism(p, n, j); });
        each(root, "mc_elements", [&](const std::string& n, const json& j) { read_mc(p, n, j); });
        each(root, "simplices", [&](const std::string& n, const json& j) { read_simplex(p, n, j); });
        each(root, "horn_problems", [&](const std::string& n, const json& j) { read_horn_problem(p, n, j); });
        each(root, "lifting_problems", [&](const std::string& n, const json& j) { read_lift(p, n, j); });
        each(root, "transfer_problems", [&](const std::string& n, const json& j) { read_transfer(p, n, j); });
        each(root, "solutions", [&](const std::string& n, const json& j) { read_solution(p, n, j); });
        each(root, "edges", [&](const std::string& n, const json& j) { read_edge(p, n, j); });
        if (root.contains("certificates")) p.certificates = root["certificates"];
        return p;
    }

private:
    template <class Fn>
    static void each(const json& root, const char* key, Fn&& fn)
    {
        if (!root.contains(key)) return;
        const auto& sec = root[key];
        if (!sec.is_object()) throw MalformedInput(std::string("section '") + key + "' must be an object");
        for (const auto& [name, j] : sec.items()) fn(name, j);
    }

    const SpaceView& view(const std::string& algebra, const std::string& where) const
    {
        auto it = views_.find(algebra);
        if (it == views_.end()) throw MalformedInput(where + ": unknown algebra '" + algebra + "'");
        return it->second;
    }

    Vec<Rational> vector(const SpaceView& v, const json& j, const std::string& where) const
    {
        if (!j.is_object()) throw MalformedInput(where + ": expected an object of coefficients");
        auto out = zero_vec<Rational>(v.current);
        for (const auto& [name, c] : j.items()) {
            auto q = rational_of(c, where + "." + name);
            if (auto i = v.lookup(name, where)) out[static_cast<std::size_t>(*i)] = q;
        }
        return out;
    }

    FormVec forms(const SpaceView& v, const json& j, int n, const std::string& where) const
    {
        if (!j.is_object()) throw MalformedInput(where + ": expected an object of forms");
        FormVec out(static_cast<std::size_t>(v.current.dim()), PolyForm(n));
        for (const auto& [name, c] : j.items()) {
            if (!c.is_string()) throw MalformedInput(where + "." + name + ": forms are written as strings");
            auto i = v.lookup(name, where);
            PolyForm f;
            try {
                f = PolyForm::parse(c.get<std::string>(), n);
            } catch (const std::invalid_argument& e) {
                throw MalformedInput(where + "." + name + ": " + e.what());
            }
            if (i) out[static_cast<std::size_t>(*i)] = f;
        }
        return out;
    }

    template <class C, class Parse>
    Multilinear<C> ops(const SpaceView& src, const SpaceView& tgt, const json& j, const std::string& where,
                       Parse&& parse) const
    {
        if (!j.is_array()) throw MalformedInput(where + ": expected an array of {inputs, output}");
        Multilinear<C> m;
        for (std::size_t n = 0; n < j.size(); ++n) {
            const auto ctx = where + "[" + std::to_string(n) + "]";
            const auto& in = need(j[n], "inputs", ctx);
            if (!in.is_array() || in.empty()) throw MalformedInput(ctx + ": 'inputs' must be a nonempty array");
            MultiIndex word;
            bool dropped = false;
            for (const auto& name : in) {
                if (!name.is_string()) throw MalformedInput(ctx + ": input names must be strings");
                auto i = src.lookup(name.get<std::string>(), ctx);
                if (!i)
                    dropped = true;
                else
                    word.push_back(*i);
            }
            const auto& outj = need(j[n], "output", ctx);
            if (!outj.is_object()) throw MalformedInput(ctx + ": 'output' must be an object");
            for (const auto& [name, c] : outj.items()) {
                auto coeff = parse(c, ctx + "." + name);
                auto k = tgt.lookup(name, ctx);
                if (dropped || !k) continue;
                m.add(src.current, word, *k, coeff);
            }
        }
        return m;
    }

    Multilinear<Rational> rational_ops(const SpaceView& src, const SpaceView& tgt, const json& j,
                                       const std::string& where) const
    {
        return ops<Rational>(src, tgt, j, where, [](const json& c, const std::string& w) { return rational_of(c, w); });
    }

    Simplex simplex(const SpaceView& v, const json& j, const std::string& where) const
    {
        const int n = need_int(j, "dim", where);
        if (n < 0 || n > PolyForm::kMaxDim) throw MalformedInput(where + ": simplex dimension out of range");
        Simplex s{n, forms(v, need(j, "value", where), n, where + ".value")};
        require_total_degree_zero(v.current, s.value, where.c_str());
        return s;
    }

    HornData horn(const Problem& p, const std::string& algebra, const SpaceView& v, const json& j,
                  const std::string& where) const
    {
        HornData h;
        h.m = need_int(j, "m", where);
        h.k = need_int(j, "k", where);
        if (h.m < 0 || h.m > PolyForm::kMaxDim || h.k < 0 || h.k > h.m)
            throw MalformedInput(where + ": need 0 <= k <= m <= " + std::to_string(PolyForm::kMaxDim));
        h.faces.assign(static_cast<std::size_t>(h.m + 1), std::nullopt);
        const auto& faces = need(j, "faces", where);
        if (!faces.is_object()) throw MalformedInput(where + ": 'faces' must be an object");
        for (const auto& [key, f] : faces.items()) {
            int i = -1;
            try {
                std::size_t used = 0;
                i = std::stoi(key, &used);
                if (used != key.size()) i = -1;
            } catch (const std::exception&) {
                i = -1;
            }
            if (i < 0 || i > h.m || i == h.k) throw MalformedInput(where + ": bad face index '" + key + "'");
            if (f.is_string()) {
                auto it = p.simplices.find(f.get<std::string>());
                if (it == p.simplices.end()) throw MalformedInput(where + ": unknown simplex '" + f.get<std::string>() + "'");
                if (it->second.algebra != algebra)
                    throw MalformedInput(where + ": simplex '" + it->first + "' belongs to another algebra");
                h.faces[static_cast<std::size_t>(i)] = it->second.simplex;
            } else {
                h.faces[static_cast<std::size_t>(i)] = simplex(v, f, where + ".faces." + key);
            }
        }
        for (int i = 0; i <= h.m; ++i)
            if (i != h.k && !h.faces[static_cast<std::size_t>(i)])
                throw MalformedInput(where + ": face " + std::to_string(i) + " is missing");
        return h;
    }

    void read_algebra(Problem& p, const std::string& name, const json& j)
    {
        const auto where = "algebras." + name;
        const auto& basis = need(j, "basis", where);
        if (!basis.is_array()) throw MalformedInput(where + ": 'basis' must be an array");
        std::vector<BasisElement> elems;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            const auto ctx = where + ".basis[" + std::to_string(i) + "]";
            elems.push_back({need_string(basis[i], "name", ctx), need_int(basis[i], "degree", ctx),
                             need_int(basis[i], "weight", ctx)});
        }
        GradedSpace declared;
        try {
            declared = GradedSpace(std::move(elems));
        } catch (const std::invalid_argument& e) {
            throw MalformedInput(where + ": " + e.what());
        }
        const int N = need_int(j, "truncation", where);
        const int cap = j.contains("arity_cap") ? need_int(j, "arity_cap", where) : 0;
        SpaceView v{declared, declared};
        auto ops_j = j.contains("ops") ? j["ops"] : json::array();
        const int depth = opts_.truncation_depth;
        if (depth >= 2 && depth < N) {
            LInftyAlgebra full(declared, rational_ops(v, v, ops_j, where + ".ops"), N, cap);
            auto q = quotient(full, depth);
            views_[name] = {declared, q.space()};
            p.algebras.emplace(name, q);
            return;
        }
        views_[name] = v;
        p.algebras.emplace(name, LInftyAlgebra(declared, rational_ops(v, v, ops_j, where + ".ops"), N, cap));
    }

    void read_morphism(Problem& p, const std::string& name, const json& j)
    {
        const auto where = "morphisms." + name;
        MorphismDecl d;
        d.source = need_string(j, "source", where);
        d.target = need_string(j, "target", where);
        const auto& sv = view(d.source, where);
        const auto& tv = view(d.target, where);
        auto comps = rational_ops(sv, tv, need(j, "components", where), where + ".components");
        d.map = InftyMorphism(p.algebras.at(d.source), p.algebras.at(d.target), comps);
        p.morphisms.emplace(name, std::move(d));
    }

    void read_mc(Problem& p, const std::string& name, const json& j)
    {
        const auto where = "mc_elements." + name;
        McDecl d{need_string(j, "algebra", where), {}};
        d.value = vector(view(d.algebra, where), need(j, "value", where), where + ".value");
        require_degree(p.algebras.at(d.algebra).space(), d.value, 0, where.c_str());
        p.mc_elements.emplace(name, std::move(d));
    }

    void read_simplex(Problem& p, const std::string& name, const json& j)
    {
        const auto where = "simplices." + name;
        SimplexDecl d{need_string(j, "algebra", where), {}};
        d.simplex = simplex(view(d.algebra, where), j, where);
        p.simplices.emplace(name, std::move(d));
    }

    void read_horn_problem(Problem& p, const std::string& name, const json& j)
    {
        const auto where = "horn_problems." + name;
        HornDecl d{need_string(j, "algebra", where), {}};
        d.horn = horn(p, d.algebra, view(d.algebra, where), j, where);
        p.horn_problems.emplace(name, std::move(d));
    }

    void read_lift(Problem& p, const std::string& name, const json& j)
    {
        const auto where = "lifting_problems." + name;
        LiftDecl d;
        d.morphism = need_string(j, "morphism", where);
        auto it = p.morphisms.find(d.morphism);
        if (it == p.morphisms.end()) throw MalformedInput(where + ": unknown morphism '" + d.morphism + "'");
        const auto& m = it->second;
        d.horn = horn(p, m.source, view(m.source, where), need(j, "horn", where), where + ".horn");
        const auto& tj = need(j, "target", where);
        if (tj.is_string()) {
            auto s = p.simplices.find(tj.get<std::string>());
            if (s == p.simplices.end() || s->second.algebra != m.target)
                throw MalformedInput(where + ": unknown target simplex '" + tj.get<std::string>() + "'");
            d.target = s->second.simplex;
        } else {
            d.target = simplex(view(m.target, where), tj, where + ".target");
        }
        p.lifting_problems.emplace(name, std::move(d));
    }

    void read_transfer(Problem& p, const std::string& name, const json& j)
    {
        const auto where = "transfer_problems." + name;
        TransferDecl d;
        d.b = need_string(j, "B", where);
        d.a = need_string(j, "A", where);
        const auto& bv = view(d.b, where);
        const auto& av = view(d.a, where);
        if (j.contains("arity_cap")) d.arity_cap = need_int(j, "arity_cap", where);
        d.phi = GradedMap(av.current, bv.current, 0);
        const auto& phij = need(j, "phi", where);
        if (!phij.is_object()) throw MalformedInput(where + ": 'phi' must be an object");
        for (const auto& [src, img] : phij.items()) {
            auto i = av.lookup(src, where + ".phi");
            if (!img.is_object()) throw MalformedInput(where + ".phi." + src + ": expected an object");
            for (const auto& [tgt, c] : img.items()) {
                auto q = rational_of(c, where + ".phi." + src + "." + tgt);
                auto k = bv.lookup(tgt, where + ".phi." + src);
                if (i && k) d.phi.set(*k, *i, q);
            }
        }
        require_complex(p, d.a, where);
        p.transfer_problems.emplace(name, std::move(d));
    }

    static void require_complex(const Problem& p, const std::string& a, const std::string& where)
    {
        if (p.algebras.at(a).ops().max_arity() > 1)
            throw ValidationError(where + ": A must be a chain complex (no brackets of arity >= 2)");
    }

    CylTriple triple_for(const Problem& p, const std::string& b, const std::string& a, int cap) const
    {
        const auto& B = p.algebras.at(b);
        const auto& A = p.algebras.at(a);
        CylTriple t;
        t.a = A.space();
        t.b = B.space();
        t.truncation = B.truncation();
        t.arity_cap = cap;
        t.q_b = B.ops();
        return t;
    }

    void read_solution(Problem& p, const std::string& name, const json& j)
    {
        const auto where = "solutions." + name;
        SolutionDecl d;
        d.b = need_string(j, "B", where);
        d.a = need_string(j, "A", where);
        const auto& bv = view(d.b, where);
        const auto& av = view(d.a, where);
        d.triple = triple_for(p, d.b, d.a, need_int(j, "arity_cap", where));
        d.triple.q_a = rational_ops(av, av, need(j, "q_a", where), where + ".q_a");
        d.triple.f = rational_ops(av, bv, need(j, "f", where), where + ".f");
        require_complex(p, d.a, where);
        if (!(d.triple.q_a.arity_part(1) == p.algebras.at(d.a).ops().arity_part(1)))
            throw ValidationError(where + ": arity-1 part of q_a differs from the differential of A");
        d.triple.validate();
        p.solutions.emplace(name, std::move(d));
    }

    void read_edge(Problem& p, const std::string& name, const json& j)
    {
        const auto where = "edges." + name;
        EdgeDecl d;
        d.solution0 = need_string(j, "solution0", where);
        d.solution1 = need_string(j, "solution1", where);
        for (const auto* s : {&d.solution0, &d.solution1})
            if (!p.solutions.count(*s)) throw MalformedInput(where + ": unknown solution '" + *s + "'");
        const auto& s0 = p.solutions.at(d.solution0);
        const auto& s1 = p.solutions.at(d.solution1);
        const auto& bv = view(s0.b, where);
        const auto& av = view(s0.a, where);
        auto form = [&](const json& c, const std::string& w) {
            if (!c.is_string()) throw MalformedInput(w + ": forms are written as strings");
            try {
                return PolyForm::parse(c.get<std::string>(), 1);
            } catch (const std::invalid_argument& e) {
                throw MalformedInput(w + ": " + e.what());
            }
        };
        d.edge.t0 = s0.triple;
        d.edge.t1 = s1.triple;
        d.edge.q_a = ops<PolyForm>(av, av, need(j, "q_a", where), where + ".q_a", form);
        d.edge.f = ops<PolyForm>(av, bv, need(j, "f", where), where + ".f", form);
        d.edge.q_b = constant_family(s0.triple.b, s0.triple.q_b);
        d.edge.poly_degree = j.contains("poly_degree") ? need_int(j, "poly_degree", where) : 0;
        p.edges.emplace(name, std::move(d));
    }

    LoadOptions opts_;
    std::map<std::string, SpaceView> views_;
};

} // namespace detail

inline Problem parse_problem(const json& root, LoadOptions opts = {})
{
    try {
        return detail::Reader(opts).read(root);
    } catch (const json::exception& e) {
        throw MalformedInput(e.what());
    }
}

inline Problem parse_problem_text(const std::string& text, LoadOptions opts = {})
{
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) return {};
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw MalformedInput(std::string("not valid JSON: ") + e.what());
    }
    return parse_problem(root, opts);
}

inline Problem load_problem(const std::string& path, LoadOptions opts = {})
{
    std::ifstream in(path);
    if (!in) throw MalformedInput("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_problem_text(ss.str(), opts);
}

} // namespace linfty::io
