#pragma once

#include <optional>
#include <string>
#include <vector>

#include "circmine/config.hpp"
#include "circmine/preprocess.hpp"

namespace circmine {

// Exit codes shared by the CLI: 0 success, 1 runtime failure, 2 usage error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Writes the four synthetic CSVs into data_dir and prints record counts.
int cmd_generate(const RunConfig& config);

/// Builds baskets (optionally restricted to one faculty), runs the miner,
/// and writes the JSON rule list plus the text run report into output_dir.
int cmd_mine(const RunConfig& config, std::optional<int> faculty_filter = {});

/// Builds instances for the schema, clusters with multi-restart k-means,
/// and writes the model JSON plus the centroid summary table.
int cmd_cluster(const RunConfig& config, InstanceSchemaKind kind);

/// Writes the named report in csv, json, and markdown.
int cmd_report(const RunConfig& config, const std::string& report_name);

const std::vector<std::string>& report_names();

}  // namespace circmine
