#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include "circmine/apriori.hpp"
#include "circmine/datamodel.hpp"
#include "circmine/synthetic.hpp"

namespace circmine {

struct RunConfig {
    std::filesystem::path data_dir = "data";
    std::filesystem::path output_dir = "out";
    Date window_start{2015, 8, 1};
    Date window_end{2018, 7, 31};
    MiningParams apriori;
    int cluster_k = 5;
    std::vector<std::uint64_t> cluster_seeds = {1, 2, 3, 4, 5};
    double influencer_min_share = 1.0;
    std::size_t report_top_n = 10;
    std::optional<SyntheticConfig> synthetic;

    void validate() const;  // throws std::invalid_argument
};

/// Flat key=value config with dotted section prefixes; '#' starts a comment.
/// Recognized keys:
///   data.dir, output.dir, window.start, window.end,
///   apriori.num_rules, apriori.min_confidence, apriori.delta,
///   apriori.upper_support, apriori.lower_support,
///   cluster.k, cluster.seeds (comma separated),
///   report.influencer_min_share, report.top_n,
///   synthetic.seed, synthetic.students, synthetic.items,
///   synthetic.checkouts, synthetic.subject_affinity,
///   synthetic.faculty_weights (id:w,id:w,...),
///   synthetic.planted_rules (A+B=>C@p; ...)
/// Any synthetic.* key enables the synthetic section. Unknown keys fail.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace circmine
