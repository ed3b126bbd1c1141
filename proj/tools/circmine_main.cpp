#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "circmine/commands.hpp"

using namespace circmine;

int main(int argc, char** argv) {
    CLI::App app{"circmine - library circulation analytics toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::string output_override;
    app.add_option("--config", config_path, "Run configuration file")
        ->required();
    app.add_option("--output", output_override, "Override output directory");

    auto* generate =
        app.add_subcommand("generate", "Write seeded synthetic CSV datasets");

    auto* mine_cmd = app.add_subcommand(
        "mine", "Mine association rules from patron baskets");
    std::optional<int> faculty;
    mine_cmd->add_option("--faculty", faculty,
                         "Restrict baskets to one faculty id (1-17)");

    auto* cluster_cmd =
        app.add_subcommand("cluster", "Cluster circulation instances");
    std::string schema;
    cluster_cmd
        ->add_option("--schema", schema,
                     "Instance schema: fsl (faculty/subclass/lifespan), "
                     "fsg (faculty/subclass/grade), sg (subclass/grade)")
        ->required();

    auto* report_cmd =
        app.add_subcommand("report", "Write a descriptive report table");
    std::string report_name;
    report_cmd->add_option("--name", report_name, "Report name")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    RunConfig config;
    try {
        config = load_config(config_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    if (!output_override.empty()) config.output_dir = output_override;

    if (generate->parsed()) return cmd_generate(config);
    if (mine_cmd->parsed()) {
        if (faculty && !is_valid_faculty_id(*faculty)) {
            std::cerr << "error: faculty id must be 1-17\n";
            return kExitUsage;
        }
        return cmd_mine(config, faculty);
    }
    if (cluster_cmd->parsed()) {
        auto kind = parse_schema_kind(schema);
        if (!kind) {
            std::cerr << "error: unknown schema \"" << schema
                      << "\" (want fsl, fsg, or sg)\n";
            return kExitUsage;
        }
        return cmd_cluster(config, *kind);
    }
    if (report_cmd->parsed()) return cmd_report(config, report_name);
    return kExitUsage;
}
