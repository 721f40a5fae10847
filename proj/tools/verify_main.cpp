#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>

#include <CLI11.hpp>

#include "esp/commands.hpp"

namespace {

// Exit codes: 0 all checks pass, 1 verification failure, 2 usage or
// configuration problem.
int run(const std::function<esp::Report(const esp::CommandOptions&)>& command,
        const esp::CommandOptions& opt, const std::string& out_path) {
    auto start = std::chrono::steady_clock::now();
    esp::Report report;
    try {
        report = command(opt);
    } catch (const esp::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const esp::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    report.seed = opt.seed;
    report.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();

    std::cout << report.summary();
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "usage error: cannot write " << out_path << "\n";
            return 2;
        }
        out << report.to_json();
    }
    return report.any_fail() ? 1 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"extraspecial p-group structure and stability verifier"};
    app.require_subcommand(1);

    esp::CommandOptions opt;
    std::string out_path;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--p", opt.p, "prime p (default 3)");
        cmd->add_option("--n", opt.n, "rank n: |P| = p^(1+2n) (default 1)");
        cmd->add_option("--family", opt.family, "group family: 2+, 2-, p+ or p- (default p-)");
        cmd->add_option("--seed", opt.seed, "seed for randomized scopes (default 0)");
        cmd->add_flag("--exhaustive", opt.exhaustive,
                      "force exhaustive scopes where |P| <= 243");
        cmd->add_option("--out", out_path, "write the JSON report to this path");
        cmd->add_option("--cap", opt.cap, "enumeration cap (default 1000000)");
    };

    CLI::App* group = app.add_subcommand(
        "group", "group axioms, structure subgroups, and the derived forms");
    add_common(group);

    CLI::App* lemma = app.add_subcommand("lemma", "one named verification");
    add_common(lemma);
    lemma
        ->add_option("id", opt.lemma,
                     "centralizer-frattini | lambda | wittprep | prop-witt | lemma-z | "
                     "lemma-y | chern | remark8")
        ->required();

    CLI::App* gl3 = app.add_subcommand(
        "gl3", "GL_3(F_p) pipeline: enumerate, embed, and certify the moving class");
    add_common(gl3);

    CLI::App* semidirect = app.add_subcommand(
        "semidirect", "coprime semidirect product plus the stability checks");
    add_common(semidirect);
    semidirect->add_option("--alpha", opt.alpha_file,
                           "JSON file with generator images {a_images, b_images}");
    semidirect->add_option("--q", opt.q, "twist order (default: derived from the twist)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (group->parsed()) return run(esp::cmd_verify_group, opt, out_path);
    if (lemma->parsed()) return run(esp::cmd_verify_lemma, opt, out_path);
    if (gl3->parsed()) return run(esp::cmd_gl3, opt, out_path);
    return run(esp::cmd_semidirect, opt, out_path);
}
