#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "gog/gog.h"

namespace {

struct Shared {
    std::string dot;
    gog_options opt{};
};

int finish(gog_status s, gog_report* r, const Shared& sh) {
    if (!r) {
        std::cerr << "error: " << gog_last_error_kind() << ": " << gog_last_error() << "\n";
        return s;
    }
    std::cout << gog_report_json(r);
    if (!sh.dot.empty()) {
        const char* d = gog_report_dot(r);
        if (!d) {
            std::cerr << "note: this command draws nothing; " << sh.dot << " not written\n";
        } else {
            std::ofstream out(sh.dot);
            out << d;
            if (!out) {
                std::cerr << "error: cannot write " << sh.dot << "\n";
                gog_report_free(r);
                return GOG_USAGE;
            }
        }
    }
    gog_report_free(r);
    return s;
}

int run_file_command(const std::string& command, const std::string& file, const std::vector<std::string>& names,
                     const Shared& sh) {
    gog_doc* doc = nullptr;
    gog_status s = gog_doc_load(file.c_str(), &doc);
    if (s != GOG_OK) {
        std::cerr << "error: " << gog_last_error_kind() << ": " << gog_last_error() << "\n";
        return s;
    }
    std::vector<const char*> args;
    for (auto& n : names) args.push_back(n.c_str());
    gog_report* r = nullptr;
    s = gog_run(doc, command.c_str(), args.data(), args.size(), &sh.opt, &r);
    int code = finish(s, r, sh);
    gog_doc_free(doc);
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"graphs of groups toolkit"};
    app.require_subcommand(1);
    Shared sh;
    gog_options_init(&sh.opt);
    bool pointed = false;
    app.add_option("--dot", sh.dot, "write the drawn graph to FILE in DOT format");
    app.add_option("--radius", sh.opt.radius, "exploration radius")->check(CLI::NonNegativeNumber);
    app.add_option("--coset-window", sh.opt.coset_window, "bound for infinite coset spaces")->check(CLI::NonNegativeNumber);
    app.add_option("--depth", sh.opt.depth, "search depth for conjugacy and double cosets")->check(CLI::NonNegativeNumber);
    app.add_option("--k", sh.opt.k, "path length for acylindrical")->check(CLI::NonNegativeNumber);
    app.add_flag("--pointed", pointed, "equivalence and core relative to basepoints");

    struct FileCommand {
        const char* name;
        const char* help;
    };
    const FileCommand file_commands[] = {
        {"validate", "load and check a document"},
        {"reduce", "reduce PATH"},
        {"equal", "decide PATH =_A PATH"},
        {"image", "image of PATH under MORPHISM"},
        {"immersion", "decide whether MORPHISM is an immersion"},
        {"covering", "decide whether MORPHISM is a covering"},
        {"equivalent", "search a certificate for MORPHISM ~ MORPHISM"},
        {"product", "A-product of two morphisms"},
        {"pullback", "pointed A-product component"},
        {"core", "core of GRAPH"},
        {"components", "components of the A-product with double coset keys"},
        {"intersect", "generators of the subgroup intersection"},
        {"conjugate", "decide conjugacy of two circuits"},
        {"tree", "ball in the Bass-Serre tree of GRAPH"},
        {"acylindrical", "decide k-acylindricity of GRAPH"},
    };
    std::string file;
    std::vector<std::string> names;
    std::string chosen;
    for (auto& fc : file_commands) {
        auto* sub = app.add_subcommand(fc.name, fc.help);
        sub->fallthrough();
        sub->add_option("file", file, "document")->required();
        sub->add_option("names", names, "names of paths, morphisms or graphs in the document");
        sub->callback([&chosen, name = fc.name] { chosen = name; });
    }
    long m = 0, n = 0;
    auto* demo = app.add_subcommand("demo-bs", "BS(M,N) subgroup pair and its Betti growth");
    demo->fallthrough();
    demo->add_option("M", m)->required();
    demo->add_option("N", n)->required();
    demo->callback([&chosen] { chosen = "demo-bs"; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return GOG_USAGE;
    }
    sh.opt.pointed = pointed ? 1 : 0;
    if (chosen == "demo-bs") {
        gog_report* r = nullptr;
        gog_status s = gog_demo_bs(m, n, &sh.opt, &r);
        return finish(s, r, sh);
    }
    return run_file_command(chosen, file, names, sh);
}
