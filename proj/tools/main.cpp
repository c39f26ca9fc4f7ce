#include "cpgas/cli/config.hpp"
#include "cpgas/cli/runner.hpp"
#include "cpgas/errors.hpp"

#include "CLI11.hpp"

#include <iostream>

namespace {

constexpr const char* version = "cpgas 1.0.0";

enum ExitCode { ok = 0, config_error = 2, compute_error = 3, io_error = 4 };

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dispersion potentials and forces of an excited atom in an absorbing dilute gas"};
    app.set_version_flag("--version", version);
    std::string explain_task;
    app.add_option("--explain", explain_task, "print the formulas used by a task and exit");

    auto* run = app.add_subcommand("run", "execute a run configuration");
    std::string config_path;
    std::string output_path;
    run->add_option("--config", config_path, "run configuration file")->required();
    run->add_option("--output", output_path, "output file (overrides output.path)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : config_error;
    }

    if (!explain_task.empty()) {
        const auto task = cpgas::cli::task_from_name(explain_task);
        if (!task) {
            std::cerr << "error: unknown task '" << explain_task << "'\n";
            return config_error;
        }
        std::cout << cpgas::cli::explain(*task);
        return ok;
    }
    if (!run->parsed()) {
        std::cerr << app.help();
        return config_error;
    }

    try {
        auto cfg = cpgas::cli::load_config(config_path);
        if (!output_path.empty())
            cfg.output_path = output_path;
        cpgas::cli::run(cfg, std::cout);
    } catch (const cpgas::cli::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return config_error;
    } catch (const cpgas::cli::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return io_error;
    } catch (const cpgas::Error& e) {
        std::cerr << "compute error: " << e.what() << "\n";
        return compute_error;
    } catch (const std::exception& e) {
        std::cerr << "compute error: " << e.what() << "\n";
        return compute_error;
    }
    return ok;
}
