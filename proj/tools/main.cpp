#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "modalstab/commands.hpp"
#include "modalstab/errors.hpp"

namespace {

struct Cli {
    std::string config_path;
    modalstab::CommandOptions options;
};

void add_common(CLI::App* cmd, Cli& cli) {
    cmd->add_option("config", cli.config_path, "Path to the run configuration file")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_flag("--assert-output-stabilizable", cli.options.assert_output_stabilizable,
                  "Exit with status 3 when the output-stabilizability verdict is no");
    cmd->add_option("--out", cli.options.out_dir,
                    "Directory for report.json and CSV output (default: current directory)");
}

int dispatch(const std::string& name, const Cli& cli) {
    const modalstab::RunConfig config = modalstab::parse_config(cli.config_path);
    if (name == "analyze") {
        return modalstab::run_analyze(config, cli.options, std::cout, std::cerr);
    }
    if (name == "synthesize") {
        return modalstab::run_synthesize(config, cli.options, std::cout, std::cerr);
    }
    if (name == "simulate") {
        return modalstab::run_simulate(config, cli.options, std::cout, std::cerr);
    }
    return modalstab::run_sweep(config, cli.options, std::cout, std::cerr);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Modal analysis, feedback synthesis, and simulation for the 1-D "
                 "advection-diffusion-reaction system"};
    app.set_version_flag("--version", std::string(modalstab::kToolName) + " " +
                                          modalstab::kToolVersion);
    app.require_subcommand(1);

    Cli cli;
    CLI::App* analyze =
        app.add_subcommand("analyze", "Verdicts, index sets, and the critical reaction rate");
    add_common(analyze, cli);

    CLI::App* synthesize =
        app.add_subcommand("synthesize", "Modal feedback gains with a verified spectrum");
    add_common(synthesize, cli);
    synthesize->add_flag("--best-effort", cli.options.best_effort,
                         "Proceed on the reachable modes when state stabilization is impossible");

    CLI::App* simulate = app.add_subcommand("simulate", "Trajectory CSV and fitted output rate");
    add_common(simulate, cli);
    simulate->add_flag("--closed-loop", cli.options.closed_loop,
                       "Synthesize feedback and simulate the closed loop");
    simulate->add_flag("--best-effort", cli.options.best_effort,
                       "Proceed on the reachable modes when state stabilization is impossible");

    CLI::App* sweep =
        app.add_subcommand("sweep", "Output-stabilizability verdict across a range of k");
    add_common(sweep, cli);
    sweep->add_option("--k-min", cli.options.k_min, "Lower end of the k grid (default 0)");
    sweep->add_option("--k-max", cli.options.k_max, "Upper end of the k grid (default 50)");
    sweep->add_option("--steps", cli.options.steps, "Number of grid points (default 51)");
    sweep->add_flag("--refine", cli.options.refine,
                    "Bisect the verdict flip down to a 1e-9 bracket");
    sweep->add_option("--threads", cli.options.threads,
                      "Worker threads for the sweep (default: hardware)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : modalstab::kExitError;
    }

    try {
        return dispatch(app.get_subcommands().front()->get_name(), cli);
    } catch (const modalstab::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return modalstab::kExitError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return modalstab::kExitError;
    }
}
