#include "linfty/cli.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

namespace {

int emit(const linfty::cli::Result& r, const std::string& out)
{
    if (!r.output.empty()) {
        if (out.empty()) {
            std::cout << r.output;
        } else {
            std::ofstream f(out, std::ios::binary);
            if (!f) {
                std::cerr << "error: cannot write '" << out << "'\n";
                return linfty::cli::kInternal;
            }
            f << r.output;
        }
    }
    if (!r.message.empty()) std::cerr << (r.code == 0 ? "" : "error: ") << r.message << "\n";
    return r.code;
}

} // namespace

int main(int argc, char** argv)
{
    using namespace linfty::cli;
    CLI::App app{"Filtered L-infinity algebras: checks, twisting, horn fillers, lifts and homotopy transfer"};
    app.require_subcommand(1);

    Options opts;
    std::string order = "lex";
    std::uint64_t seed = 0;
    std::string out;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--arity-cap", opts.arity_cap, "highest arity solved for in transfer")->check(CLI::PositiveNumber);
        sub->add_option("--truncation-depth", opts.truncation_depth, "quotient every algebra by F_n")
            ->check(CLI::Range(2, 1 << 20));
        sub->add_option("--pivot-order", order, "pivot order of the linear solver")
            ->check(CLI::IsMember({"lex", "revlex"}));
        sub->add_option("--seed", seed, "enable randomized trials with this seed");
        sub->add_option("--out", out, "write the result here instead of stdout");
    };

    std::string file, name, name2;
    auto* check = app.add_subcommand("check", "verify every object in a problem file");
    check->add_option("file", file)->required();
    auto* tw = app.add_subcommand("twist", "twist an algebra by an MC element (or 0)");
    tw->add_option("file", file)->required();
    tw->add_option("algebra", name)->required();
    tw->add_option("mc", name2)->required();
    auto* fill = app.add_subcommand("fill-horn", "fill a horn of MC forms");
    fill->add_option("file", file)->required();
    fill->add_option("problem", name)->required();
    auto* lift = app.add_subcommand("lift", "lift a horn along a fibration");
    lift->add_option("file", file)->required();
    lift->add_option("problem", name)->required();
    auto* tr = app.add_subcommand("transfer", "transfer a structure along a quasi-isomorphism");
    tr->add_option("file", file)->required();
    tr->add_option("problem", name)->required();
    auto* con = app.add_subcommand("connect", "join two transfer solutions by an edge");
    con->add_option("file", file)->required();
    con->add_option("solution0", name)->required();
    con->add_option("solution1", name2)->required();
    auto* rep = app.add_subcommand("report", "dimensions, cohomology and classification");
    rep->add_option("file", file)->required();
    for (auto* sub : {check, tw, fill, lift, tr, con, rep}) common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kMalformed;
    }
    opts.order = linfty::parse_pivot_order(order);
    for (auto* sub : app.get_subcommands())
        if (sub->count("--seed")) opts.seed = seed;

    auto* sub = app.get_subcommands().front();
    const std::string cmd = sub->get_name();
    auto result = run([&]() -> Result {
        if (cmd == "check") return cmd_check(file, opts);
        if (cmd == "twist") return cmd_twist(file, name, name2, opts);
        if (cmd == "fill-horn") return cmd_fill_horn(file, name, opts);
        if (cmd == "lift") return cmd_lift(file, name, opts);
        if (cmd == "transfer") return cmd_transfer(file, name, opts);
        if (cmd == "connect") return cmd_connect(file, name, name2, opts);
        return cmd_report(file, opts);
    });
    return emit(result, out);
}
