#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chemflow/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"chemflow: chemotaxis-fluid simulator and verification harness"};
    app.require_subcommand(1);

    std::string config_path;
    std::string output_dir;
    std::vector<std::string> overrides;

    auto add_mode = [&](const std::string& name, const std::string& desc) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->add_option("--config", config_path, "JSON configuration file")->required();
        sub->add_option("--output", output_dir, "output directory (overrides config)");
        sub->add_option("--override", overrides, "dotted key=value config overrides");
        return sub;
    };
    add_mode("simulate", "time-integrate the full system");
    add_mode("picard", "run the frozen-coefficient fixed-point construction");
    add_mode("ladder", "run the regularization ladder study");
    add_mode("audit", "simulate and audit the energy inequality and monitors");

    CLI11_PARSE(app, argc, argv);
    const std::string mode = app.get_subcommands().front()->get_name();

    chemflow::RunConfig cfg;
    try {
        std::vector<std::string> all = overrides;
        all.push_back("mode=" + mode);
        if (!output_dir.empty()) all.push_back("output=" + output_dir);
        cfg = chemflow::load_config(config_path, all);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return chemflow::kExitConfigError;
    }

    const chemflow::RunResult result = chemflow::run(cfg);
    if (result.status == chemflow::kExitOk)
        std::printf("%s\n", result.message.c_str());
    else
        std::fprintf(stderr, "error: %s\n", result.message.c_str());
    return result.status;
}
