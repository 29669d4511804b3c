// hdq: runs the verification suites and writes a JSON or text report.
// Exit status: 0 when every check came out as expected, 1 otherwise,
// 2 for usage or configuration errors.

#include "hdq/suites.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>

namespace {

struct Command {
    const char* name;
    const char* help;
    const char* suite;  // nullptr runs every suite
};

const Command kCommands[] = {
    {"verify-hd", "classical higher-derivation law, Hasse and FromDerivation families", "hd"},
    {"verify-ab", "twisted Leibniz expansion for (alpha, beta)-higher derivations", "ab"},
    {"collapse", "twisted expansion with alpha = beta = id against the classical law", "collapse"},
    {"filter-axioms", "Gabriel axioms for radical-power filters", "filter"},
    {"invariance", "base-power witnesses J with delta_i(J) inside (base^k)", "invariance"},
    {"invariance-trace", "the inductive invariance construction, sampled", "trace"},
    {"localize", "torsion submodule and module of quotients", "localize"},
    {"extend", "extension of higher derivations to the module of quotients", "extend"},
    {"agreement", "extensions along nested filters", "agreement"},
    {"symmetric", "lifted higher derivations on the enveloping algebra", "symmetric"},
    {"counterexample", "the Z[x] torsion class that is neither hereditary nor differential", "counterexample"},
    {"all", "every suite", nullptr},
};

}  // namespace

int main(int argc, char** argv)
{
    hdq::SuiteConfig cfg;
    std::string out_path;
    std::string format = "json";
    int k = 0;
    int n = -1;

    CLI::App app{"Exact verification of higher derivations, filters and modules of quotients"};
    app.set_config("--config", "", "flat key = value file; command-line flags override it");
    app.require_subcommand(1);
    app.fallthrough();
    app.allow_config_extras(CLI::config_extras_mode::error);

    app.add_option("--seed", cfg.seed, "sampler seed")->capture_default_str();
    app.add_option("--degree", cfg.degree, "degree bound for sampled polynomials")->capture_default_str();
    app.add_option("--coeff", cfg.coeff, "coefficient bound for sampled polynomials")->capture_default_str();
    app.add_option("--order", cfg.order, "order bound N")->capture_default_str();
    app.add_option("--samples", cfg.samples, "random samples per check")->capture_default_str();
    app.add_option("--out", out_path, "report path (stdout when omitted)");
    app.add_option("--format", format, "report format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
    app.add_flag("--timings", cfg.timings, "add elapsed_ms to every check");

    app.add_option("--base", cfg.base, "filter base polynomial")->capture_default_str();
    app.add_option("--base2", cfg.base2, "larger filter base for agreement")->capture_default_str();
    app.add_option("--module", cfg.module_file, "presentation matrix file")->check(CLI::ExistingFile);
    app.add_option("--derivation", cfg.derivation, "image of x under the derivation used on --module")
        ->capture_default_str();
    app.add_option("--algebra", cfg.algebra_file, "structure-constant file")->check(CLI::ExistingFile);
    app.add_option("--inner", cfg.inner, "basis index u of the inner derivation [u, -] on --algebra")
        ->capture_default_str();
    auto* k_opt = app.add_option("--k", k, "invariance: exponent of I = (base^k)");
    auto* n_opt = app.add_option("--n", n, "invariance: order n");
    k_opt->needs(n_opt);
    n_opt->needs(k_opt);
    app.add_option("--family", cfg.family, "invariance family")
        ->check(CLI::IsMember({"hasse", "derivation"}))
        ->capture_default_str();
    app.add_option("--suite", cfg.suites, "all: restrict to these suites")->delimiter(',');

    std::map<CLI::App*, const Command*> by_app;
    for (const auto& cmd : kCommands) {
        by_app[app.add_subcommand(cmd.name, cmd.help)] = &cmd;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const Command* cmd = by_app.at(app.get_subcommands().front());
    if (cmd->suite != nullptr) {
        cfg.suites = {cmd->suite};
    }
    if (k_opt->count() > 0) {
        cfg.k = k;
        cfg.n = n;
    }

    hdq::RunResult result;
    try {
        result = hdq::run_suites(cfg);
    } catch (const std::exception& e) {
        std::cerr << "hdq: " << e.what() << '\n';
        return 2;
    }

    const std::string report =
        format == "json" ? hdq::report_json(cfg, result).dump(2) + "\n" : hdq::report_text(cfg, result);
    if (out_path.empty()) {
        std::cout << report;
    } else {
        std::ofstream file(out_path, std::ios::binary);
        if (!file) {
            std::cerr << "hdq: cannot write " << out_path << '\n';
            return 2;
        }
        file << report;
    }
    return result.ok() ? 0 : 1;
}
