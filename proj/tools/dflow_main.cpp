#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "dflow/scenario.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"Darboux transformations and semi-discrete curve flows"};
    app.set_help_flag("--help", "print this help and exit");
    app.require_subcommand(1);

    dflow::RunOptions options;
    std::string config;
    std::string out_dir = ".";
    double h = 0.0;
    double tol = 0.0;

    const char* help[] = {
        "darboux: Darboux transform of a smooth polarized curve",
        "flow: infinitesimal Darboux transformation of a discrete curve",
        "motion: isoperimetric frame motion of a discrete curve",
        "verify: run the acceptance suite",
        "figure1: two transforms of the circle with different polarizations",
    };
    for (const char* entry : help) {
        const std::string text(entry);
        const auto colon = text.find(':');
        CLI::App* sub = app.add_subcommand(text.substr(0, colon), text.substr(colon + 2));
        sub->add_option("--config", config, "scenario file")->check(CLI::ExistingFile);
        sub->add_option("--out", out_dir, "output directory")->capture_default_str();
        sub->add_option("--h", h, "grid step, overrides grid.h");
        sub->add_option("--tol", tol, "check tolerance; for verify, a factor on every tolerance");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : dflow::kExitValidation;
    }

    CLI::App* sub = app.get_subcommands().front();
    options.command = *dflow::parse_command(sub->get_name());
    if (sub->count("--config") > 0) {
        options.config = config;
    }
    options.out_dir = out_dir;
    if (sub->count("--h") > 0) {
        options.h = h;
    }
    if (sub->count("--tol") > 0) {
        options.tol = tol;
    }
    return dflow::run(options, std::cout, std::cerr);
}
