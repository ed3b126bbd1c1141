#include "circmine/commands.hpp"

#include <algorithm>
#include <iostream>
#include <set>
#include <sstream>

#include "circmine/cluster.hpp"
#include "circmine/csv.hpp"
#include "circmine/report.hpp"

namespace circmine {

namespace {

namespace fs = std::filesystem;

Dataset load_accepted_dataset(const RunConfig& config) {
    Dataset raw;
    auto patrons = load_patrons_csv(config.data_dir / "patrons.csv");
    auto items = load_items_csv(config.data_dir / "items.csv");
    auto circulation =
        load_circulation_csv(config.data_dir / "circulation.csv");
    auto students = load_students_csv(config.data_dir / "students.csv");

    const std::size_t malformed =
        patrons.rejected.size() + items.rejected.size() +
        circulation.rejected.size() + students.rejected.size();
    if (malformed > 0)
        std::cerr << "note: skipped " << malformed << " malformed CSV rows\n";

    raw.patrons = std::move(patrons.records);
    raw.items = std::move(items.records);
    raw.circulation = std::move(circulation.records);
    raw.students = std::move(students.records);

    auto report = validate_dataset(raw);
    if (!report.rejected.empty())
        std::cerr << "note: dropped " << report.rejected.size()
                  << " records failing validation\n";
    return std::move(report.accepted);
}

void write_output(const RunConfig& config, const std::string& filename,
                  const std::string& text) {
    fs::create_directories(config.output_dir);
    write_text_file(config.output_dir / filename, text);
}

void write_table(const RunConfig& config, const std::string& stem,
                 const ReportTable& table) {
    for (RenderFormat format :
         {RenderFormat::Csv, RenderFormat::Json, RenderFormat::Markdown}) {
        write_output(config,
                     stem + "." + std::string(format_extension(format)),
                     render(table, format));
    }
}

std::string empty_run_report(const MiningParams& params) {
    std::ostringstream os;
    os << "==== Run information ====\n\n";
    os << "Scheme:       Apriori -N " << params.num_rules << "\n";
    os << "Instances:    0\n";
    os << "Attributes:   0\n\n";
    os << "==== Associator model ====\n\n";
    os << "No instances to mine.\n\nBest rules found:\n\n";
    return os.str();
}

std::vector<int> window_years(const RunConfig& config) {
    std::vector<int> years;
    for (int y = academic_year(config.window_start);
         y <= academic_year(config.window_end); ++y)
        years.push_back(y);
    return years;
}

}  // namespace

int cmd_generate(const RunConfig& config) {
    if (!config.synthetic) {
        std::cerr << "error: no synthetic config\n";
        return kExitUsage;
    }
    try {
        const Dataset data = generate_synthetic(*config.synthetic);
        fs::create_directories(config.data_dir);
        write_text_file(config.data_dir / "patrons.csv",
                        patrons_to_csv(data.patrons));
        write_text_file(config.data_dir / "items.csv",
                        items_to_csv(data.items));
        write_text_file(config.data_dir / "circulation.csv",
                        circulation_to_csv(data.circulation));
        write_text_file(config.data_dir / "students.csv",
                        students_to_csv(data.students));
        std::cout << "patrons: " << data.patrons.size() << "\n"
                  << "items: " << data.items.size() << "\n"
                  << "circulation: " << data.circulation.size() << "\n"
                  << "students: " << data.students.size() << "\n";
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}

int cmd_mine(const RunConfig& config, std::optional<int> faculty_filter) {
    const std::string tag =
        faculty_filter ? "fac" + std::to_string(*faculty_filter) : "all";
    try {
        const Dataset data = load_accepted_dataset(config);
        const auto baskets = build_baskets(data, faculty_filter);

        std::vector<Transaction> transactions;
        std::set<std::string> attributes;
        for (const auto& basket : baskets) {
            transactions.push_back(basket.labels);
            attributes.insert(basket.labels.begin(), basket.labels.end());
        }

        std::string report_text;
        std::string rules_json;
        if (transactions.empty()) {
            report_text = empty_run_report(config.apriori);
            rules_json = mining_result_to_json(MiningResult{}, 0, 0);
        } else {
            const auto result = mine(transactions, config.apriori);
            const long n = static_cast<long>(transactions.size());
            const long n_attributes = static_cast<long>(attributes.size());
            report_text =
                format_run_report(result, config.apriori, n, n_attributes);
            rules_json = mining_result_to_json(result, n, n_attributes);
        }
        write_output(config, "apriori_" + tag + ".txt", report_text);
        write_output(config, "rules_" + tag + ".json", rules_json);
        std::cout << "mined " << transactions.size() << " baskets -> "
                  << config.output_dir.string() << "/apriori_" << tag
                  << ".txt\n";
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}

int cmd_cluster(const RunConfig& config, InstanceSchemaKind kind) {
    try {
        const Dataset data = load_accepted_dataset(config);
        const auto instance_set = build_cluster_instances(data, kind);
        const auto model = kmeans_multi_restart(
            instance_set.instances, instance_set.schema, config.cluster_k,
            config.cluster_seeds);
        const std::string stem =
            "cluster_" + std::string(to_string(kind));
        write_output(config, stem + "_model.json",
                     cluster_model_to_json(model, instance_set.schema));
        write_table(config, stem + "_summary",
                    summarize_clusters(model, instance_set.instances,
                                       instance_set.schema));
        std::cout << "clustered " << instance_set.instances.size()
                  << " instances into " << model.k << " clusters (sse "
                  << model.sse << ")\n";
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}

const std::vector<std::string>& report_names() {
    static const std::vector<std::string> names = {
        "checkout_share_by_patron_type",
        "collection_by_patron_type",
        "collection_by_class_year",
        "top_faculties",
        "faculty_category_matrix",
        "category_influencers",
        "grade_category_distribution",
        "checkout_cgpa_scatter",
        "category_usage",
        "lifespan_distribution",
        "lifespan_twoband",
    };
    return names;
}

int cmd_report(const RunConfig& config, const std::string& report_name) {
    const auto& names = report_names();
    if (std::find(names.begin(), names.end(), report_name) == names.end()) {
        std::cerr << "error: unknown report \"" << report_name
                  << "\"; valid names:\n";
        for (const auto& name : names) std::cerr << "  " << name << "\n";
        return kExitUsage;
    }
    try {
        const Dataset data = load_accepted_dataset(config);
        if (report_name == "checkout_share_by_patron_type") {
            for (int year : window_years(config))
                write_table(config, report_name + "_" + std::to_string(year),
                            checkout_share_by_patron_type(data, year));
        } else if (report_name == "collection_by_patron_type") {
            for (int year : window_years(config))
                write_table(config, report_name + "_" + std::to_string(year),
                            checkout_share_by_collection(
                                data, year, CollectionGroupBy::PatronType));
        } else if (report_name == "collection_by_class_year") {
            for (int year : window_years(config))
                write_table(config, report_name + "_" + std::to_string(year),
                            checkout_share_by_collection(
                                data, year, CollectionGroupBy::ClassYear));
        } else if (report_name == "top_faculties") {
            for (int year : window_years(config))
                write_table(config, report_name + "_" + std::to_string(year),
                            top_faculties(data, year, config.report_top_n));
        } else if (report_name == "faculty_category_matrix") {
            write_table(config, report_name + "_all",
                        faculty_category_matrix(data));
        } else if (report_name == "category_influencers") {
            write_table(config, report_name + "_all",
                        category_influencers(faculty_category_matrix(data),
                                             config.influencer_min_share));
        } else if (report_name == "grade_category_distribution") {
            write_table(config, report_name + "_all",
                        grade_category_distribution(data));
            write_table(config, "checkout_cgpa_scatter_all",
                        checkout_cgpa_scatter(data));
        } else if (report_name == "checkout_cgpa_scatter") {
            write_table(config, report_name + "_all",
                        checkout_cgpa_scatter(data));
        } else if (report_name == "category_usage") {
            write_table(config, report_name + "_all",
                        category_usage(data.items));
        } else if (report_name == "lifespan_distribution") {
            write_table(config, report_name + "_all",
                        lifespan_distribution(data.items, false));
        } else if (report_name == "lifespan_twoband") {
            write_table(config, report_name + "_all",
                        lifespan_distribution(data.items, true));
        }
        std::cout << "wrote " << report_name << " to "
                  << config.output_dir.string() << "\n";
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}

}  // namespace circmine
