#include <iostream>

#include <CLI11.hpp>

#include "qgf/cli.hpp"
#include "qgf/errors.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Standard R-matrices, constants, twists and Yang-Baxter checks"};
    qgf::CliOptions opts;
    app.add_option("command", opts.command,
                   "constants | serre | rmatrix | yb-check | hopf-check | deform | twist | "
                   "classical | elliptic")
        ->required();
    app.add_option("--config", opts.config_path, "JSON config file");
    app.add_option("--grade", opts.grade, "grade cutoff (elliptic: number of factors M)");
    app.add_option("--eps-order", opts.eps_order, "order in eps");
    app.add_option("--tol", opts.tol, "numeric tolerance");
    app.add_option("--seed", opts.seed, "seed for random points");
    app.add_option("--out", opts.out, "text or json")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--eps", opts.eps, "deformation parameter, |eps| < 1");
    app.add_option("--u", opts.u, "spectral parameter, x = exp(2 pi i u)");
    app.add_option("--q", opts.q, "quantum parameter");
    app.add_flag("--timing", opts.timing, "append wall time to the report");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    try {
        opts.threads = qgf::threads_from_env();
    } catch (const qgf::Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    qgf::RunResult r = qgf::run(opts);
    std::cout << qgf::render(r.report, opts.out);
    return r.exit_code;
}
