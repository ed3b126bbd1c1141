#include "circmine/report.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "circmine/csv.hpp"
#include "circmine/lc_table.hpp"
#include "circmine/preprocess.hpp"

namespace circmine {

std::string format_percent(double value) {
    const double scaled = value * 100.0;
    const long long rounded =
        scaled >= 0 ? static_cast<long long>(scaled + 0.5)
                    : -static_cast<long long>(-scaled + 0.5);
    const long long mag = rounded < 0 ? -rounded : rounded;
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%s%lld.%02lld", rounded < 0 ? "-" : "",
                  mag / 100, mag % 100);
    return buf;
}

namespace {

std::string format_decimal(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.4f", value);
    std::string out = buf;
    while (out.back() == '0') out.pop_back();
    if (out.back() == '.') out.pop_back();
    return out;
}

std::string cell_text(const ReportTable::Cell& cell, bool percent) {
    if (const auto* s = std::get_if<std::string>(&cell)) return *s;
    if (const auto* i = std::get_if<long long>(&cell))
        return std::to_string(*i);
    const double v = std::get<double>(cell);
    return percent ? format_percent(v) : format_decimal(v);
}

}  // namespace

std::optional<RenderFormat> parse_render_format(std::string_view s) {
    if (s == "csv") return RenderFormat::Csv;
    if (s == "json") return RenderFormat::Json;
    if (s == "markdown" || s == "md") return RenderFormat::Markdown;
    return std::nullopt;
}

std::string_view format_extension(RenderFormat format) {
    switch (format) {
        case RenderFormat::Csv: return "csv";
        case RenderFormat::Json: return "json";
        case RenderFormat::Markdown: return "md";
    }
    throw std::logic_error("bad RenderFormat");
}

std::string render(const ReportTable& table, RenderFormat format) {
    switch (format) {
        case RenderFormat::Csv: {
            std::string out;
            for (std::size_t i = 0; i < table.columns.size(); ++i) {
                if (i) out += ',';
                out += csv_escape(table.columns[i]);
            }
            out += '\n';
            for (const auto& row : table.rows) {
                for (std::size_t i = 0; i < row.size(); ++i) {
                    if (i) out += ',';
                    out += csv_escape(
                        cell_text(row[i], table.percent_columns.count(i)));
                }
                out += '\n';
            }
            return out;
        }
        case RenderFormat::Markdown: {
            std::ostringstream os;
            os << "### " << table.caption << "\n\n";
            os << "|";
            for (const auto& col : table.columns) os << " " << col << " |";
            os << "\n|";
            for (std::size_t i = 0; i < table.columns.size(); ++i)
                os << " --- |";
            os << "\n";
            for (const auto& row : table.rows) {
                os << "|";
                for (std::size_t i = 0; i < row.size(); ++i)
                    os << " "
                       << cell_text(row[i], table.percent_columns.count(i))
                       << " |";
                os << "\n";
            }
            return os.str();
        }
        case RenderFormat::Json: {
            nlohmann::ordered_json doc;
            doc["caption"] = table.caption;
            doc["columns"] = table.columns;
            doc["percent_columns"] = table.percent_columns;
            doc["rows"] = nlohmann::ordered_json::array();
            doc["formatted_rows"] = nlohmann::ordered_json::array();
            for (const auto& row : table.rows) {
                nlohmann::ordered_json raw = nlohmann::ordered_json::array();
                nlohmann::ordered_json text = nlohmann::ordered_json::array();
                for (std::size_t i = 0; i < row.size(); ++i) {
                    if (const auto* s = std::get_if<std::string>(&row[i]))
                        raw.push_back(*s);
                    else if (const auto* n = std::get_if<long long>(&row[i]))
                        raw.push_back(*n);
                    else
                        raw.push_back(std::get<double>(row[i]));
                    text.push_back(
                        cell_text(row[i], table.percent_columns.count(i)));
                }
                doc["rows"].push_back(std::move(raw));
                doc["formatted_rows"].push_back(std::move(text));
            }
            return doc.dump(2) + "\n";
        }
    }
    throw std::invalid_argument("unknown render format");
}

namespace {

struct Indexes {
    std::unordered_map<std::string, const PatronRecord*> patrons;
    std::unordered_map<std::string, const ItemRecord*> items;
    std::unordered_map<std::string, const StudentRecord*> students;

    explicit Indexes(const Dataset& data) {
        for (const auto& p : data.patrons)
            patrons.emplace(p.patron_barcode, &p);
        for (const auto& it : data.items) items.emplace(it.item_barcode, &it);
        for (const auto& s : data.students) students.emplace(s.student_id, &s);
    }
};

std::optional<char> item_class(const ItemRecord& item) {
    try {
        return parse_lc(item.call_number).cls;
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
}

std::string year_window_text(int year) {
    return "academic year " + std::to_string(year);
}

}  // namespace

ReportTable checkout_share_by_patron_type(const Dataset& data, int year) {
    Indexes index(data);
    std::map<PatronType, long> checkouts;
    std::map<PatronType, std::set<std::string>> distinct_patrons;
    long total = 0;
    for (const auto& c : data.circulation) {
        if (academic_year(c.checkout_date) != year) continue;
        auto patron = index.patrons.find(c.patron_barcode);
        if (patron == index.patrons.end()) continue;
        ++checkouts[patron->second->patron_type];
        distinct_patrons[patron->second->patron_type].insert(
            c.patron_barcode);
        ++total;
    }

    ReportTable table;
    table.columns = {"Patron type", "% of total check-outs", "Patrons"};
    table.percent_columns = {1};
    if (total == 0) {
        table.caption = "Check-out share by patron type, " +
                        year_window_text(year) + " (no check-outs)";
        return table;
    }
    table.caption =
        "Check-out share by patron type, " + year_window_text(year);
    for (PatronType type : kAllPatronTypes) {
        const long count = checkouts.count(type) ? checkouts[type] : 0;
        table.rows.push_back(
            {std::string(to_string(type)),
             100.0 * static_cast<double>(count) / static_cast<double>(total),
             static_cast<long long>(distinct_patrons[type].size())});
    }
    return table;
}

ReportTable checkout_share_by_collection(const Dataset& data, int year,
                                         CollectionGroupBy group_by) {
    Indexes index(data);
    // group key -> collection -> count
    std::map<std::string, std::map<Collection, long>> counts;
    std::map<std::string, long> totals;
    std::vector<std::string> group_order;
    if (group_by == CollectionGroupBy::PatronType) {
        for (PatronType t : kAllPatronTypes)
            group_order.emplace_back(to_string(t));
    } else {
        for (ClassYear y : kAllClassYears)
            group_order.emplace_back(to_string(y));
    }

    for (const auto& c : data.circulation) {
        if (academic_year(c.checkout_date) != year) continue;
        auto patron = index.patrons.find(c.patron_barcode);
        auto item = index.items.find(c.item_barcode);
        if (patron == index.patrons.end() || item == index.items.end())
            continue;
        std::string key;
        if (group_by == CollectionGroupBy::PatronType) {
            key = to_string(patron->second->patron_type);
        } else {
            if (!patron->second->class_year) continue;
            key = to_string(*patron->second->class_year);
        }
        ++counts[key][item->second->collection];
        ++totals[key];
    }

    ReportTable table;
    table.caption =
        std::string("Check-out distribution by collection and ") +
        (group_by == CollectionGroupBy::PatronType ? "patron type"
                                                   : "undergraduate class") +
        ", " + year_window_text(year);
    table.columns = {"Collection"};
    std::vector<std::string> groups;
    for (const auto& g : group_order) {
        if (totals.count(g) && totals[g] > 0) {
            groups.push_back(g);
            table.columns.push_back(g);
            table.percent_columns.insert(table.columns.size() - 1);
        }
    }
    for (Collection coll : kAllCollections) {
        std::vector<ReportTable::Cell> row;
        row.emplace_back(std::string(to_string(coll)));
        for (const auto& g : groups) {
            const long count = counts[g].count(coll) ? counts[g][coll] : 0;
            row.emplace_back(100.0 * static_cast<double>(count) /
                             static_cast<double>(totals[g]));
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

ReportTable top_faculties(const Dataset& data, int year, std::size_t top_n) {
    if (top_n < 1) throw std::invalid_argument("top_n must be >= 1");
    Indexes index(data);
    std::map<int, long> by_faculty;
    long total = 0;
    for (const auto& c : data.circulation) {
        if (academic_year(c.checkout_date) != year) continue;
        auto patron = index.patrons.find(c.patron_barcode);
        if (patron == index.patrons.end() ||
            patron->second->patron_type != PatronType::Undergraduate)
            continue;
        ++by_faculty[patron->second->faculty_id];
        ++total;
    }

    ReportTable table;
    table.columns = {"Faculty", "% of total check-outs"};
    table.percent_columns = {1};
    if (total == 0) {
        table.caption = "Top faculties by undergraduate check-outs, " +
                        year_window_text(year) + " (no check-outs)";
        return table;
    }
    table.caption = "Top " + std::to_string(top_n) +
                    " faculties by undergraduate check-outs, " +
                    year_window_text(year);

    std::vector<std::pair<int, long>> ranked(by_faculty.begin(),
                                             by_faculty.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });

    long listed = 0;
    for (std::size_t i = 0; i < ranked.size() && i < top_n; ++i) {
        table.rows.push_back(
            {std::string(faculty_name(ranked[i].first)),
             100.0 * static_cast<double>(ranked[i].second) /
                 static_cast<double>(total)});
        listed += ranked[i].second;
    }
    table.rows.push_back({std::string("Others"),
                          100.0 * static_cast<double>(total - listed) /
                              static_cast<double>(total)});
    return table;
}

ReportTable faculty_category_matrix(const Dataset& data) {
    Indexes index(data);
    // faculty -> class letter -> count
    std::map<int, std::map<char, long>> counts;
    std::map<int, long> totals;
    for (const auto& c : data.circulation) {
        auto patron = index.patrons.find(c.patron_barcode);
        auto item = index.items.find(c.item_barcode);
        if (patron == index.patrons.end() || item == index.items.end())
            continue;
        auto cls = item_class(*item->second);
        if (!cls) continue;
        ++counts[patron->second->faculty_id][*cls];
        ++totals[patron->second->faculty_id];
    }

    ReportTable table;
    table.caption = "Percentage of patron loan by faculty and LC class";
    table.columns = {"Category"};
    std::vector<int> faculties;
    for (const auto& [id, total] : totals) {
        if (total > 0) {
            faculties.push_back(id);
            table.columns.push_back(std::to_string(id));
            table.percent_columns.insert(table.columns.size() - 1);
        }
    }
    for (char cls : lc_class_letters()) {
        std::vector<ReportTable::Cell> row;
        row.emplace_back(std::string(1, cls));
        for (int id : faculties) {
            const long count =
                counts[id].count(cls) ? counts[id][cls] : 0;
            row.emplace_back(100.0 * static_cast<double>(count) /
                             static_cast<double>(totals[id]));
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

ReportTable category_influencers(const ReportTable& matrix,
                                 double min_share) {
    if (min_share < 0) throw std::invalid_argument("min_share must be >= 0");
    ReportTable table;
    table.caption = "Faculty influencers per LC class (share >= " +
                    format_percent(min_share) + "%)";
    table.columns = {"Category", "Influencers"};
    for (const auto& row : matrix.rows) {
        std::vector<std::pair<double, int>> qualifying;
        for (std::size_t col = 1; col < row.size(); ++col) {
            const double share = std::get<double>(row[col]);
            if (share >= min_share)
                qualifying.emplace_back(share,
                                        std::stoi(matrix.columns[col]));
        }
        std::sort(qualifying.begin(), qualifying.end(),
                  [](const auto& a, const auto& b) {
                      if (a.first != b.first) return a.first > b.first;
                      return a.second < b.second;
                  });
        std::string ids;
        for (const auto& [share, id] : qualifying) {
            if (!ids.empty()) ids += ',';
            ids += std::to_string(id);
        }
        if (ids.empty()) ids = "-";
        table.rows.push_back({std::get<std::string>(row[0]), ids});
    }
    return table;
}

ReportTable grade_category_distribution(const Dataset& data) {
    Indexes index(data);
    std::map<char, std::map<GradeLevel, long>> counts;
    long total = 0;
    for (const auto& c : data.circulation) {
        auto student = index.students.find(c.patron_barcode);
        auto item = index.items.find(c.item_barcode);
        if (student == index.students.end() || item == index.items.end())
            continue;
        auto cls = item_class(*item->second);
        if (!cls) continue;
        ++counts[*cls][grade_level(student->second->cgpa)];
        ++total;
    }

    ReportTable table;
    table.caption =
        "Check-out distribution by grade level and LC category (% of all "
        "check-outs)";
    table.columns = {"Category"};
    for (GradeLevel g : kAllGradeLevels) {
        table.columns.emplace_back(to_string(g));
        table.percent_columns.insert(table.columns.size() - 1);
    }
    if (total == 0) return table;
    for (char cls : lc_class_letters()) {
        std::vector<ReportTable::Cell> row;
        row.emplace_back(std::string(1, cls));
        for (GradeLevel g : kAllGradeLevels) {
            const long count =
                counts.count(cls) && counts[cls].count(g) ? counts[cls][g]
                                                          : 0;
            row.emplace_back(100.0 * static_cast<double>(count) /
                             static_cast<double>(total));
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

ReportTable checkout_cgpa_scatter(const Dataset& data) {
    Indexes index(data);
    std::map<std::string, long> checkout_counts;
    for (const auto& c : data.circulation) {
        if (index.students.count(c.patron_barcode))
            ++checkout_counts[c.patron_barcode];
    }
    ReportTable table;
    table.caption = "Check-outs vs CGPA per borrowing student";
    table.columns = {"student_id", "checkouts", "cgpa"};
    for (const auto& [id, count] : checkout_counts) {
        table.rows.push_back({id, static_cast<long long>(count),
                              index.students.at(id)->cgpa});
    }
    return table;
}

ReportTable category_usage(const std::vector<ItemRecord>& items) {
    std::map<char, std::pair<long, long>> usage;  // circulated, uncirculated
    for (const auto& item : items) {
        auto cls = item_class(item);
        if (!cls) continue;
        if (item.total_checkouts > 0)
            ++usage[*cls].first;
        else
            ++usage[*cls].second;
    }
    ReportTable table;
    table.caption = "Circulated vs uncirculated items by LC category";
    table.columns = {"Category", "Circulated", "Uncirculated",
                     "Circulated %", "Uncirculated %"};
    table.percent_columns = {3, 4};
    for (const auto& [cls, split] : usage) {
        const double total =
            static_cast<double>(split.first + split.second);
        table.rows.push_back(
            {std::string(1, cls), static_cast<long long>(split.first),
             static_cast<long long>(split.second),
             100.0 * static_cast<double>(split.first) / total,
             100.0 * static_cast<double>(split.second) / total});
    }
    return table;
}

ReportTable lifespan_distribution(const std::vector<ItemRecord>& items,
                                  bool remove_uncirculated) {
    // class -> bucket counts (+ uncirculated tail slot)
    std::map<char, std::array<long, 5>> counts;
    for (const auto& item : items) {
        auto cls = item_class(item);
        if (!cls) continue;
        auto& slots = counts[*cls];
        auto years = lifespan_years(item);
        if (years)
            ++slots[static_cast<std::size_t>(lifespan_bucket(*years))];
        else
            ++slots[4];
    }

    ReportTable table;
    if (!remove_uncirculated) {
        table.caption = "Item lifespan distribution by LC category";
        table.columns = {"Category"};
        for (LifespanBucket b : kAllLifespanBuckets)
            table.columns.emplace_back(to_string(b));
        table.columns.emplace_back("Uncirculated");
        for (const auto& [cls, slots] : counts) {
            std::vector<ReportTable::Cell> row;
            row.emplace_back(std::string(1, cls));
            for (long slot : slots)
                row.emplace_back(static_cast<long long>(slot));
            table.rows.push_back(std::move(row));
        }
        return table;
    }

    table.caption =
        "Circulated-item lifespan share by LC category (two bands)";
    table.columns = {"Category", "0-10", "11-20"};
    table.percent_columns = {1, 2};
    for (const auto& [cls, slots] : counts) {
        const long young = slots[0] + slots[1];
        const long old = slots[2] + slots[3];
        if (young + old == 0) continue;  // only uncirculated items
        const double total = static_cast<double>(young + old);
        table.rows.push_back(
            {std::string(1, cls),
             100.0 * static_cast<double>(young) / total,
             100.0 * static_cast<double>(old) / total});
    }
    return table;
}

}  // namespace circmine
