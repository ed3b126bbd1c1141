#pragma once

#include <set>
#include <string>
#include <variant>
#include <vector>

#include "circmine/datamodel.hpp"

namespace circmine {

/// Universal tabular report output. Cells are strings, counts, or decimals;
/// columns listed in percent_columns render as percentages with 2 decimals.
struct ReportTable {
    using Cell = std::variant<std::string, long long, double>;

    std::string caption;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::set<std::size_t> percent_columns;
};

/// Round-half-up to 2 decimals, e.g. 63.1391 -> "63.14".
std::string format_percent(double value);

enum class RenderFormat { Csv, Json, Markdown };

std::optional<RenderFormat> parse_render_format(std::string_view s);
std::string_view format_extension(RenderFormat format);

/// Deterministic serialization of a table. CSV uses RFC 4180 quoting;
/// JSON keeps full-precision values alongside the formatted strings.
std::string render(const ReportTable& table, RenderFormat format);

// --- Descriptive reports. All take the validated dataset. ---

/// Share of an academic year's checkouts per patron type, with the number
/// of distinct patrons of that type seen in the year.
ReportTable checkout_share_by_patron_type(const Dataset& data, int year);

enum class CollectionGroupBy { PatronType, ClassYear };

/// Collection x group percentage matrix; every group column sums to 100.
ReportTable checkout_share_by_collection(const Dataset& data, int year,
                                         CollectionGroupBy group_by);

/// Faculties ranked by undergraduate checkout share, with an "Others" row
/// completing 100.
ReportTable top_faculties(const Dataset& data, int year, std::size_t top_n);

/// LC class x faculty matrix; each faculty column is that faculty's checkout
/// share per class and sums to 100.
ReportTable faculty_category_matrix(const Dataset& data);

/// Per LC class, the faculties whose matrix cell meets min_share, ordered by
/// share descending (ties by id). Empty lists render as "-".
ReportTable category_influencers(const ReportTable& matrix, double min_share);

/// LC class x grade level checkout percentages of the grand total.
ReportTable grade_category_distribution(const Dataset& data);

/// Companion scatter data: per-student checkout count and CGPA.
ReportTable checkout_cgpa_scatter(const Dataset& data);

/// Per LC class: circulated vs uncirculated item counts and row shares.
ReportTable category_usage(const std::vector<ItemRecord>& items);

/// Per LC class x lifespan bucket counts, with an Uncirculated column.
/// With remove_uncirculated set, uncirculated items are dropped and rows
/// become two-band percentages (0-10 / 11-20) summing to 100.
ReportTable lifespan_distribution(const std::vector<ItemRecord>& items,
                                  bool remove_uncirculated);

}  // namespace circmine
