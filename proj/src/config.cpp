#include "circmine/config.hpp"

#include <charconv>
#include <stdexcept>

#include "circmine/csv.hpp"

namespace circmine {

void RunConfig::validate() const {
    if (window_end < window_start)
        throw std::invalid_argument("window.start must not exceed window.end");
    if (cluster_k < 1) throw std::invalid_argument("cluster.k must be >= 1");
    if (cluster_seeds.empty())
        throw std::invalid_argument("cluster.seeds must not be empty");
    if (influencer_min_share < 0)
        throw std::invalid_argument("influencer_min_share must be >= 0");
    if (report_top_n < 1)
        throw std::invalid_argument("report.top_n must be >= 1");
    apriori.validate();
    if (synthetic) synthetic->validate();
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                          s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (start <= s.size()) {
        std::size_t end = s.find(sep, start);
        if (end == std::string_view::npos) end = s.size();
        auto part = trim(s.substr(start, end - start));
        if (!part.empty()) parts.push_back(part);
        start = end + 1;
    }
    return parts;
}

template <typename T>
T number(std::string_view value, const std::string& key) {
    T out{};
    auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(),
                                   out);
    if (ec != std::errc{} || p != value.data() + value.size())
        throw std::invalid_argument("bad value for " + key + ": " +
                                    std::string(value));
    return out;
}

Date date_value(std::string_view value, const std::string& key) {
    auto d = Date::parse(value);
    if (!d)
        throw std::invalid_argument("bad date for " + key + ": " +
                                    std::string(value));
    return *d;
}

// "QA+QC=>QD@1.0"
PlantedRule parse_planted_rule(std::string_view text) {
    PlantedRule rule;
    const auto arrow = text.find("=>");
    if (arrow == std::string_view::npos)
        throw std::invalid_argument("planted rule needs '=>': " +
                                    std::string(text));
    for (auto code : split(text.substr(0, arrow), '+'))
        rule.antecedent.emplace_back(code);
    auto rhs = trim(text.substr(arrow + 2));
    const auto at = rhs.find('@');
    if (at == std::string_view::npos) {
        rule.consequent = std::string(trim(rhs));
    } else {
        rule.consequent = std::string(trim(rhs.substr(0, at)));
        rule.probability =
            number<double>(trim(rhs.substr(at + 1)), "planted rule");
    }
    return rule;
}

}  // namespace

RunConfig parse_config(std::string_view text) {
    RunConfig config;
    bool has_synthetic = false;
    SyntheticConfig synthetic;

    std::size_t line_start = 0;
    while (line_start <= text.size()) {
        std::size_t line_end = text.find('\n', line_start);
        if (line_end == std::string_view::npos) line_end = text.size();
        auto line = trim(text.substr(line_start, line_end - line_start));
        line_start = line_end + 1;
        if (line.empty() || line.front() == '#') continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw std::invalid_argument("config line without '=': " +
                                        std::string(line));
        const std::string key{trim(line.substr(0, eq))};
        const auto value = trim(line.substr(eq + 1));

        if (key == "data.dir") {
            config.data_dir = std::string(value);
        } else if (key == "output.dir") {
            config.output_dir = std::string(value);
        } else if (key == "window.start") {
            config.window_start = date_value(value, key);
        } else if (key == "window.end") {
            config.window_end = date_value(value, key);
        } else if (key == "apriori.num_rules") {
            config.apriori.num_rules = number<long>(value, key);
        } else if (key == "apriori.min_confidence") {
            config.apriori.min_metric = number<double>(value, key);
        } else if (key == "apriori.delta") {
            config.apriori.delta = number<double>(value, key);
        } else if (key == "apriori.upper_support") {
            config.apriori.upper_bound_support = number<double>(value, key);
        } else if (key == "apriori.lower_support") {
            config.apriori.lower_bound_support = number<double>(value, key);
        } else if (key == "cluster.k") {
            config.cluster_k = number<int>(value, key);
        } else if (key == "cluster.seeds") {
            config.cluster_seeds.clear();
            for (auto part : split(value, ','))
                config.cluster_seeds.push_back(
                    number<std::uint64_t>(part, key));
        } else if (key == "report.influencer_min_share") {
            config.influencer_min_share = number<double>(value, key);
        } else if (key == "report.top_n") {
            config.report_top_n = number<std::size_t>(value, key);
        } else if (key == "synthetic.seed") {
            synthetic.seed = number<std::uint64_t>(value, key);
            has_synthetic = true;
        } else if (key == "synthetic.students") {
            synthetic.n_students = number<std::size_t>(value, key);
            has_synthetic = true;
        } else if (key == "synthetic.items") {
            synthetic.n_items = number<std::size_t>(value, key);
            has_synthetic = true;
        } else if (key == "synthetic.checkouts") {
            synthetic.n_checkouts = number<std::size_t>(value, key);
            has_synthetic = true;
        } else if (key == "synthetic.subject_affinity") {
            synthetic.subject_affinity = number<double>(value, key);
            has_synthetic = true;
        } else if (key == "synthetic.faculty_weights") {
            synthetic.faculty_weights.clear();
            for (auto part : split(value, ',')) {
                const auto colon = part.find(':');
                if (colon == std::string_view::npos)
                    throw std::invalid_argument("bad faculty weight: " +
                                                std::string(part));
                synthetic.faculty_weights
                    [number<int>(trim(part.substr(0, colon)), key)] =
                    number<double>(trim(part.substr(colon + 1)), key);
            }
            has_synthetic = true;
        } else if (key == "synthetic.planted_rules") {
            synthetic.planted_rules.clear();
            for (auto part : split(value, ';'))
                synthetic.planted_rules.push_back(parse_planted_rule(part));
            has_synthetic = true;
        } else {
            throw std::invalid_argument("unknown config key: " + key);
        }
    }

    if (has_synthetic) config.synthetic = std::move(synthetic);
    config.validate();
    return config;
}

RunConfig load_config(const std::filesystem::path& path) {
    return parse_config(read_text_file(path));
}

}  // namespace circmine
