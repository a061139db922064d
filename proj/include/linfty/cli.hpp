#pragma once

#include "linfty/io.hpp"
#include "linfty/sampling.hpp"

#include <filesystem>
#include <functional>
#include <sstream>

namespace linfty::cli {

using io::json;

enum ExitCode : int { kOk = 0, kValidation = 1, kInfeasible = 2, kMalformed = 3, kInternal = 4 };

struct Options {
    int arity_cap = 0;
    int truncation_depth = 0;
    PivotOrder order = PivotOrder::Lex;
    std::optional<std::uint64_t> seed;
};

/// `output` goes to --out (or stdout); `message` is a one-line diagnostic for stderr.
struct Result {
    int code = kOk;
    std::string output;
    std::string message;
};

namespace detail {

inline io::Problem load(const std::string& file, const Options& o)
{
    return io::load_problem(file, io::LoadOptions{o.truncation_depth});
}

template <class Map>
const typename Map::mapped_type& find(const Map& m, const std::string& name, const char* what)
{
    auto it = m.find(name);
    if (it == m.end()) throw io::MalformedInput(std::string("no ") + what + " named '" + name + "'");
    return it->second;
}

inline json word_json(const GradedSpace& s, const MultiIndex& w)
{
    json out = json::array();
    for (int i : w) out.push_back(s.name(i));
    return out;
}

inline json residual_list(const GradedSpace& word_space, const GradedSpace& value_space, const std::vector<Residual>& rs)
{
    json out = json::array();
    for (const auto& r : rs)
        out.push_back({{"identity", r.identity},
                       {"word", word_json(word_space, r.word)},
                       {"residual", io::vec_to_json(value_space, r.value)}});
    return out;
}

inline json form_residual_list(const GradedSpace& word_space, const GradedSpace& value_space,
                               const std::vector<FormResidual>& rs)
{
    json out = json::array();
    for (const auto& r : rs)
        out.push_back({{"identity", r.identity},
                       {"word", word_json(word_space, r.word)},
                       {"residual", io::forms_to_json(value_space, r.value)}});
    return out;
}

inline FormVec difference(FormVec a, const FormVec& b) { return sub_from(a, b); }

/// Faces against the horn and the curvature of s, all of which must vanish.
inline json simplex_certificate(const LInftyAlgebra& L, const Simplex& s, const HornData& h, bool& all_zero)
{
    json faces = json::array();
    for (int i = 0; i <= h.m; ++i) {
        if (!h.faces[static_cast<std::size_t>(i)]) continue;
        auto diff = difference(face_simplex(s, i).value, h.faces[static_cast<std::size_t>(i)]->value);
        all_zero = all_zero && is_zero_vec(diff);
        faces.push_back({{"index", i}, {"residual", io::forms_to_json(L.space(), diff)}});
    }
    auto curv = TensorAlgebra(L, s.dim).curvature(s.value);
    all_zero = all_zero && is_zero_vec(curv);
    return {{"faces", faces}, {"curvature", io::forms_to_json(L.space(), curv)}};
}

inline std::string describe(const GradedSpace& s, const Residual& r)
{
    return r.identity + " on " + word_to_string(s, r.word) + ": residual " + vec_to_string(s, r.value);
}

inline std::string table(const std::vector<std::vector<std::string>>& rows)
{
    std::vector<std::size_t> width;
    for (const auto& r : rows)
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (width.size() <= i) width.push_back(0);
            width[i] = std::max(width[i], r[i].size());
        }
    std::string out;
    for (const auto& r : rows) {
        std::string line = "  ";
        for (std::size_t i = 0; i < r.size(); ++i) {
            line += r[i] + std::string(width[i] - r[i].size(), ' ');
            if (i + 1 < r.size()) line += "  ";
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out += line + "\n";
    }
    return out;
}

inline std::string yes_no(bool b) { return b ? "true" : "false"; }

} // namespace detail

// ---------------------------------------------------------------------------------------

inline Result cmd_check(const std::string& file, const Options& o)
{
    auto p = detail::load(file, o);
    std::ostringstream rep;
    std::string first_failure;
    auto line = [&](const std::string& what, bool ok, const std::string& detail) {
        rep << what << ": " << (ok ? "ok" : "FAIL") << (detail.empty() ? "" : " (" + detail + ")") << "\n";
        if (!ok && first_failure.empty()) first_failure = what + ": " + detail;
    };
    auto guarded = [&](const std::string& what, const std::function<std::string()>& fn) {
        try {
            line(what, true, fn());
        } catch (const ValidationError& e) {
            line(what, false, e.what());
        }
    };

    for (const auto& [name, L] : p.algebras) {
        auto r = check_linfty(L);
        line("algebra " + name, r.ok(),
             r.ok() ? std::to_string(r.checked) + " words checked" : detail::describe(L.space(), *r.first_failure()));
    }
    for (const auto& [name, d] : p.morphisms) {
        auto r = check_morphism(d.map);
        line("morphism " + name, r.ok(),
             r.ok() ? std::to_string(r.checked) + " words checked"
                    : detail::describe(d.map.target().space(), *r.first_failure()));
    }
    for (const auto& [name, d] : p.mc_elements) {
        const auto& L = p.algebras.at(d.algebra);
        auto c = curv(L, d.value);
        line("mc_element " + name, is_zero_vec(c), is_zero_vec(c) ? "" : "curvature " + vec_to_string(L.space(), c));
    }
    for (const auto& [name, d] : p.simplices)
        guarded("simplex " + name, [&] {
            validate_simplex(p.algebras.at(d.algebra), d.simplex);
            return std::string();
        });
    for (const auto& [name, d] : p.horn_problems)
        guarded("horn_problem " + name, [&] {
            require_compatible_horn(d.horn);
            for (const auto& f : d.horn.faces)
                if (f) validate_simplex(p.algebras.at(d.algebra), *f);
            return std::string();
        });
    for (const auto& [name, d] : p.lifting_problems)
        guarded("lifting_problem " + name, [&] {
            const auto& F = p.morphisms.at(d.morphism).map;
            require_compatible_horn(d.horn);
            for (const auto& f : d.horn.faces)
                if (f) validate_simplex(F.source(), *f);
            validate_simplex(F.target(), d.target);
            for (int i = 0; i <= d.horn.m; ++i)
                if (d.horn.faces[static_cast<std::size_t>(i)] &&
                    !(apply_morphism(F, *d.horn.faces[static_cast<std::size_t>(i)]) == face_simplex(d.target, i)))
                    throw ValidationError("face " + std::to_string(i) + " of the target is not the image of the horn");
            return std::string();
        });
    for (const auto& [name, d] : p.transfer_problems)
        guarded("transfer_problem " + name, [&] {
            const auto& B = p.algebras.at(d.b);
            const auto& A = p.algebras.at(d.a);
            if (auto r = check_linfty(B); !r.ok()) throw ValidationError("B: " + detail::describe(B.space(), *r.first_failure()));
            linfty::detail::require_filtered_chain_map(d.phi, A.complex(), B.complex());
            return std::string("quasi-isomorphism: ") +
                   detail::yes_no(is_quasi_iso_on_filtration(d.phi, A.complex(), B.complex()));
        });
    for (const auto& [name, d] : p.solutions)
        guarded("solution " + name, [&] {
            auto c = cyl_curvature(d.triple);
            if (!c.zero()) throw ValidationError(detail::describe(d.triple.a, *c.first_failure()));
            return std::to_string(c.checked()) + " identities checked";
        });
    for (const auto& [name, d] : p.edges)
        guarded("edge " + name, [&] {
            verify_edge(d.edge);
            return std::string();
        });

    if (o.seed) {
        Rng rng(*o.seed);
        const int trials = 20;
        for (const auto& [name, L] : p.algebras)
            guarded("twist trials " + name, [&, &L = L] {
                int done = 0;
                for (int t = 0; t < trials; ++t) {
                    auto a = sample_mc(L, rng);
                    if (!a) continue;
                    if (auto r = check_linfty(twist(L, *a)); !r.ok())
                        throw ValidationError("twist by " + vec_to_string(L.space(), *a) + " fails " +
                                              detail::describe(L.space(), *r.first_failure()));
                    ++done;
                }
                return std::to_string(done) + " sampled elements";
            });
        for (const auto& [name, d] : p.morphisms)
            guarded("pushforward trials " + name, [&, &F = d.map] {
                int done = 0;
                for (int t = 0; t < trials; ++t) {
                    auto a = sample_mc(F.source(), rng);
                    if (!a) continue;
                    (void)pushforward(F, *a);
                    ++done;
                }
                return std::to_string(done) + " sampled elements";
            });
    }

    rep << "result: " << (first_failure.empty() ? "ok" : "FAIL, first failure: " + first_failure) << "\n";
    return {first_failure.empty() ? kOk : kValidation, rep.str(), first_failure};
}

inline Result cmd_twist(const std::string& file, const std::string& algebra, const std::string& mc, const Options& o)
{
    auto p = detail::load(file, o);
    const auto& L = detail::find(p.algebras, algebra, "algebra");
    Vec<Rational> alpha = zero_vec<Rational>(L.space());
    if (mc != "0") {
        const auto& d = detail::find(p.mc_elements, mc, "mc_element");
        if (d.algebra != algebra) throw io::MalformedInput("mc_element '" + mc + "' belongs to algebra '" + d.algebra + "'");
        alpha = d.value;
    }
    io::Problem out;
    out.algebras.emplace(algebra, twist(L, alpha));
    return {kOk, io::dump(io::to_json(out)), ""};
}

inline Result cmd_fill_horn(const std::string& file, const std::string& problem, const Options& o)
{
    auto p = detail::load(file, o);
    const auto& d = detail::find(p.horn_problems, problem, "horn_problem");
    const auto& L = p.algebras.at(d.algebra);
    auto s = fill_horn_nilpotent(L, d.horn, o.order);
    bool all_zero = true;
    auto cert = detail::simplex_certificate(L, s, d.horn, all_zero);
    if (!all_zero) throw std::logic_error("fill-horn: certificate is not zero");
    cert["problem"] = problem;
    cert["pivot_order"] = to_string(o.order);
    cert["all_zero"] = all_zero;

    io::Problem out;
    out.algebras.emplace(d.algebra, L);
    const auto name = problem + "_filler";
    out.simplices[name] = {d.algebra, s};
    out.certificates[name] = cert;
    return {kOk, io::dump(io::to_json(out)), ""};
}

inline Result cmd_lift(const std::string& file, const std::string& problem, const Options& o)
{
    auto p = detail::load(file, o);
    const auto& d = detail::find(p.lifting_problems, problem, "lifting_problem");
    const auto& md = p.morphisms.at(d.morphism);
    const auto& F = md.map;
    std::vector<LiftTrace> traces;
    auto a = kan_fibration_lift(F, d.horn, d.target, &traces, o.order);
    bool all_zero = true;
    auto cert = detail::simplex_certificate(F.source(), a, d.horn, all_zero);
    auto image = detail::difference(apply_morphism(F, a).value, d.target.value);
    all_zero = all_zero && is_zero_vec(image);
    if (!all_zero) throw std::logic_error("lift: certificate is not zero");
    cert["image"] = io::forms_to_json(F.target().space(), image);
    cert["tower_steps"] = traces.size();
    cert["problem"] = problem;
    cert["pivot_order"] = to_string(o.order);
    cert["all_zero"] = all_zero;

    io::Problem out;
    out.algebras.emplace(md.source, F.source());
    out.algebras.emplace(md.target, F.target());
    out.morphisms.emplace(d.morphism, md);
    const auto name = problem + "_lift";
    out.simplices[name] = {md.source, a};
    out.certificates[name] = cert;
    return {kOk, io::dump(io::to_json(out)), ""};
}

inline json obstruction_json(const GradedSpace& a, const Obstruction& ob)
{
    json rows = json::array();
    for (const auto& r : ob.rows) {
        json row = {{"identity", r.identity}, {"multiplier", to_string(r.multiplier)}};
        if (!r.word.empty()) row["word"] = detail::word_json(a, r.word);
        if (!r.coordinate.empty()) {
            row["coordinate"] = r.coordinate;
            row["value"] = to_string(r.value);
        }
        rows.push_back(row);
    }
    return {{"arity", ob.arity}, {"pairing", to_string(ob.pairing)}, {"rows", rows}};
}

inline json solution_certificate(const CylTriple& t, PivotOrder order)
{
    auto c = cyl_curvature(t);
    return {{"arity_cap", t.arity_cap},
            {"pivot_order", to_string(order)},
            {"checked", c.checked()},
            {"all_zero", c.zero()},
            {"A", detail::residual_list(t.a, t.a, c.a)},
            {"F", detail::residual_list(t.a, t.b, c.f)},
            {"B", detail::residual_list(t.b, t.b, c.b)}};
}

inline Result cmd_transfer(const std::string& file, const std::string& problem, const Options& o)
{
    auto p = detail::load(file, o);
    const auto& d = detail::find(p.transfer_problems, problem, "transfer_problem");
    const auto& B = p.algebras.at(d.b);
    const auto& A = p.algebras.at(d.a);
    int cap = o.arity_cap > 0 ? o.arity_cap : d.arity_cap > 0 ? d.arity_cap : std::max(1, B.truncation() - 1);
    try {
        auto t = transfer(B, A.complex(), d.phi, cap, o.order);
        io::Problem out;
        out.algebras.emplace(d.b, B);
        out.algebras.emplace(d.a, A);
        const auto name = problem + "_" + to_string(o.order);
        out.solutions[name] = {d.b, d.a, t};
        out.certificates[name] = solution_certificate(t, o.order);
        return {kOk, io::dump(io::to_json(out)), ""};
    } catch (const TransferObstruction& e) {
        json out = {{"format", io::kFormatName},
                    {"version", io::kFormatVersion},
                    {"certificates",
                     {{problem,
                       {{"obstruction", obstruction_json(A.space(), e.obstruction)},
                        {"quasi_isomorphism", is_quasi_iso_on_filtration(d.phi, A.complex(), B.complex())}}}}}};
        return {kInfeasible, io::dump(out), e.what()};
    }
}

namespace detail {

/// A solution named in the problem, or the single solution of the file at that path.
inline std::pair<std::string, io::SolutionDecl> resolve_solution(io::Problem& p, const std::string& ref, const Options& o)
{
    if (auto it = p.solutions.find(ref); it != p.solutions.end()) return *it;
    if (!std::filesystem::exists(ref)) throw io::MalformedInput("no solution named '" + ref + "'");
    auto q = load(ref, o);
    if (q.solutions.size() != 1) throw io::MalformedInput("'" + ref + "' must hold exactly one solution");
    auto sol = *q.solutions.begin();
    for (const auto* name : {&sol.second.a, &sol.second.b}) {
        const auto& alg = q.algebras.at(*name);
        auto [it, inserted] = p.algebras.emplace(*name, alg);
        if (!inserted && !(it->second == alg))
            throw io::MalformedInput("algebra '" + *name + "' differs between '" + ref + "' and the problem file");
    }
    return sol;
}

} // namespace detail

inline Result cmd_connect(const std::string& file, const std::string& sol0, const std::string& sol1, const Options& o)
{
    auto p = file.empty() ? io::Problem{} : detail::load(file, o);
    auto [n0, s0] = detail::resolve_solution(p, sol0, o);
    auto [n1, s1] = detail::resolve_solution(p, sol1, o);
    if (s0.a != s1.a || s0.b != s1.b) throw ValidationError("solutions belong to different transfer problems");
    try {
        auto e = connect_solutions(s0.triple, s1.triple, o.order);
        auto c = edge_curvature(e);
        io::Problem out;
        out.algebras.emplace(s0.b, p.algebras.at(s0.b));
        out.algebras.emplace(s0.a, p.algebras.at(s0.a));
        out.solutions[n0] = s0;
        out.solutions[n1] = s1;
        const auto name = n0 + "_to_" + n1;
        out.edges[name] = {n0, n1, e};
        out.certificates[name] = {{"pivot_order", to_string(o.order)},
                                  {"poly_degree", e.poly_degree},
                                  {"vertex0_is_solution0", edge_vertex(e, 0) == s0.triple},
                                  {"vertex1_is_solution1", edge_vertex(e, 1) == s1.triple},
                                  {"q_b_constant", e.q_b == constant_family(s0.triple.b, s0.triple.q_b)},
                                  {"checked", c.checked()},
                                  {"all_zero", c.zero()},
                                  {"A", detail::form_residual_list(e.t0.a, e.t0.a, c.a)},
                                  {"F", detail::form_residual_list(e.t0.a, e.t0.b, c.f)},
                                  {"B", detail::form_residual_list(e.t0.b, e.t0.b, c.b)}};
        return {kOk, io::dump(io::to_json(out)), ""};
    } catch (const TransferObstruction& e) {
        json out = {{"format", io::kFormatName},
                    {"version", io::kFormatVersion},
                    {"certificates",
                     {{n0 + "_to_" + n1, {{"obstruction", obstruction_json(s0.triple.a, e.obstruction)}}}}}};
        return {kInfeasible, io::dump(out), e.what()};
    }
}

inline Result cmd_report(const std::string& file, const Options& o)
{
    auto p = detail::load(file, o);
    std::ostringstream rep;
    for (const auto& [name, L] : p.algebras) {
        const auto& s = L.space();
        rep << "algebra " << name << ": dim " << s.dim() << ", truncation " << L.truncation() << ", max arity "
            << L.ops().max_arity() << "\n";
        auto degrees = s.degrees_present();
        std::vector<std::vector<std::string>> rows{{"weight \\ degree"}};
        for (int d : degrees) rows[0].push_back(std::to_string(d));
        for (int w = 1; w < L.truncation(); ++w) {
            std::vector<std::string> r{std::to_string(w)};
            for (int d : degrees) {
                int n = 0;
                for (int i = 0; i < s.dim(); ++i)
                    if (s.degree(i) == d && s.weight(i) == w) ++n;
                r.push_back(std::to_string(n));
            }
            rows.push_back(r);
        }
        rep << "  basis dimensions\n" << detail::table(rows);
        std::vector<std::vector<std::string>> coh{{"H(F_w) w \\ degree"}};
        for (int d : degrees) coh[0].push_back(std::to_string(d));
        const auto C = L.complex();
        for (int w = 1; w < L.truncation(); ++w) {
            std::vector<std::string> r{std::to_string(w)};
            for (int d : degrees) r.push_back(std::to_string(cohomology(C, d, w).dimension));
            coh.push_back(r);
        }
        rep << "  cohomology of the filtration pieces\n" << detail::table(coh);
    }
    std::vector<std::vector<std::string>> cls{{"map", "weak_equivalence", "fibration", "acyclic_fibration"}};
    for (const auto& [name, d] : p.morphisms) {
        auto c = classify_morphism(d.map);
        cls.push_back({"morphism " + name, detail::yes_no(c.weak_equivalence), detail::yes_no(c.fibration),
                       detail::yes_no(c.acyclic_fibration)});
    }
    for (const auto& [name, d] : p.transfer_problems) {
        auto src = p.algebras.at(d.a).complex();
        auto tgt = p.algebras.at(d.b).complex();
        bool we = is_quasi_iso_on_filtration(d.phi, src, tgt);
        bool fib = is_surjective_on_filtration(d.phi, src, tgt);
        cls.push_back({"phi of transfer_problem " + name, detail::yes_no(we), detail::yes_no(fib),
                       detail::yes_no(we && fib)});
    }
    if (cls.size() > 1) rep << "classification\n" << detail::table(cls);
    if (!p.mc_elements.empty() || !p.simplices.empty() || !p.horn_problems.empty() || !p.lifting_problems.empty() ||
        !p.solutions.empty() || !p.edges.empty())
        rep << "declared: " << p.mc_elements.size() << " mc_elements, " << p.simplices.size() << " simplices, "
            << p.horn_problems.size() << " horn_problems, " << p.lifting_problems.size() << " lifting_problems, "
            << p.solutions.size() << " solutions, " << p.edges.size() << " edges\n";
    return {kOk, rep.str(), ""};
}

/// Runs a command and maps failures to exit codes.
inline Result run(const std::function<Result()>& command)
{
    try {
        return command();
    } catch (const InfeasibleError& e) {
        json out = {{"format", io::kFormatName},
                    {"version", io::kFormatVersion},
                    {"certificates", {{"infeasible", {{"reason", e.what()}}}}}};
        return {kInfeasible, io::dump(out), e.what()};
    } catch (const ValidationError& e) {
        return {kValidation, "", e.what()};
    } catch (const std::invalid_argument& e) {
        return {kMalformed, "", e.what()};
    } catch (const std::out_of_range& e) {
        return {kMalformed, "", e.what()};
    } catch (const std::exception& e) {
        return {kInternal, "", std::string("internal error: ") + e.what()};
    }
}

} // namespace linfty::cli
