#include "circmine/csv.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace circmine {

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot read file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::filesystem::path& path,
                     std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write file: " + path.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out)
        throw std::runtime_error("write failed: " + path.string());
}

std::string csv_escape(std::string_view field) {
    const bool needs_quotes =
        field.find_first_of(",\"\r\n") != std::string_view::npos;
    if (!needs_quotes) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::vector<CsvRow> parse_csv(std::string_view text) {
    std::vector<CsvRow> rows;
    std::size_t line = 1;
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        CsvRow row;
        row.line = line;
        std::string field;
        bool in_quotes = false;
        bool row_done = false;
        while (i < n && !row_done) {
            char c = text[i];
            if (in_quotes) {
                if (c == '"') {
                    if (i + 1 < n && text[i + 1] == '"') {
                        field += '"';
                        i += 2;
                    } else {
                        in_quotes = false;
                        ++i;
                    }
                } else {
                    if (c == '\n') ++line;
                    field += c;
                    ++i;
                }
            } else if (c == '"') {
                in_quotes = true;
                ++i;
            } else if (c == ',') {
                row.fields.push_back(std::move(field));
                field.clear();
                ++i;
            } else if (c == '\r' || c == '\n') {
                if (c == '\r' && i + 1 < n && text[i + 1] == '\n') ++i;
                ++i;
                ++line;
                row_done = true;
            } else {
                field += c;
                ++i;
            }
        }
        row.fields.push_back(std::move(field));
        // skip a completely blank trailing line
        if (row.fields.size() == 1 && row.fields[0].empty() && i >= n)
            break;
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

// Maps schema column names to their index in the header, rejecting files
// with missing or unknown columns.
std::vector<std::size_t> resolve_header(const CsvRow& header,
                                        const std::vector<std::string>& schema,
                                        const std::filesystem::path& path) {
    std::vector<std::size_t> indices;
    for (const auto& name : schema) {
        bool found = false;
        for (std::size_t i = 0; i < header.fields.size(); ++i) {
            if (header.fields[i] == name) {
                indices.push_back(i);
                found = true;
                break;
            }
        }
        if (!found)
            throw std::runtime_error("missing column \"" + name + "\" in " +
                                     path.string());
    }
    for (const auto& col : header.fields) {
        if (std::find(schema.begin(), schema.end(), col) == schema.end())
            throw std::runtime_error("unexpected column \"" + col + "\" in " +
                                     path.string());
    }
    return indices;
}

struct FieldError {
    std::string reason;
};

class RowReader {
public:
    RowReader(const CsvRow& row, const std::vector<std::size_t>& indices)
        : row_(row), indices_(indices) {}

    bool arity_ok(std::size_t expected) const {
        return row_.fields.size() == expected;
    }

    const std::string& raw(std::size_t schema_idx) const {
        return row_.fields[indices_[schema_idx]];
    }

    Date date(std::size_t idx, const char* what) const {
        auto d = Date::parse(raw(idx));
        if (!d) throw FieldError{std::string(what) + " date"};
        return *d;
    }

    std::optional<Date> optional_date(std::size_t idx, const char* what) const {
        if (raw(idx).empty()) return std::nullopt;
        return date(idx, what);
    }

    long integer(std::size_t idx, const char* what) const {
        const std::string& s = raw(idx);
        long value = 0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
        if (ec != std::errc{} || p != s.data() + s.size())
            throw FieldError{std::string(what)};
        return value;
    }

    double decimal(std::size_t idx, const char* what) const {
        const std::string& s = raw(idx);
        double value = 0.0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
        if (ec != std::errc{} || p != s.data() + s.size())
            throw FieldError{std::string(what)};
        return value;
    }

private:
    const CsvRow& row_;
    const std::vector<std::size_t>& indices_;
};

template <typename Record, typename ParseRow>
LoadResult<Record> load_schema(const std::filesystem::path& path,
                               const std::vector<std::string>& schema,
                               ParseRow parse_row) {
    const std::string text = read_text_file(path);
    auto rows = parse_csv(text);
    if (rows.empty())
        throw std::runtime_error("missing header row in " + path.string());
    const auto indices = resolve_header(rows.front(), schema, path);

    LoadResult<Record> result;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        RowReader reader(row, indices);
        if (!reader.arity_ok(schema.size())) {
            result.rejected.push_back({row.line, "field count"});
            continue;
        }
        try {
            result.records.push_back(parse_row(reader));
        } catch (const FieldError& e) {
            result.rejected.push_back({row.line, e.reason});
        }
    }
    return result;
}

int faculty_field(const RowReader& reader, std::size_t idx) {
    long id = reader.integer(idx, "faculty id");
    if (!is_valid_faculty_id(static_cast<int>(id)))
        throw FieldError{"faculty id range"};
    return static_cast<int>(id);
}

}  // namespace

LoadResult<PatronRecord> load_patrons_csv(const std::filesystem::path& path) {
    return load_schema<PatronRecord>(
        path, {"patron_barcode", "patron_type", "class_year", "faculty_id"},
        [](const RowReader& r) {
            PatronRecord rec;
            rec.patron_barcode = r.raw(0);
            if (rec.patron_barcode.empty()) throw FieldError{"empty barcode"};
            auto type = parse_patron_type(r.raw(1));
            if (!type) throw FieldError{"patron type"};
            rec.patron_type = *type;
            if (!r.raw(2).empty()) {
                auto year = parse_class_year(r.raw(2));
                if (!year) throw FieldError{"class year"};
                rec.class_year = *year;
            }
            rec.faculty_id = faculty_field(r, 3);
            return rec;
        });
}

LoadResult<ItemRecord> load_items_csv(const std::filesystem::path& path) {
    return load_schema<ItemRecord>(
        path,
        {"item_barcode", "title", "collection", "call_number", "catalog_date",
         "last_checkin_date", "last_checkout_date", "total_checkouts"},
        [](const RowReader& r) {
            ItemRecord rec;
            rec.item_barcode = r.raw(0);
            if (rec.item_barcode.empty()) throw FieldError{"empty barcode"};
            rec.title = r.raw(1);
            auto coll = parse_collection(r.raw(2));
            if (!coll) throw FieldError{"collection"};
            rec.collection = *coll;
            rec.call_number = r.raw(3);
            rec.catalog_date = r.date(4, "catalog");
            rec.last_checkin_date = r.optional_date(5, "checkin");
            rec.last_checkout_date = r.optional_date(6, "checkout");
            rec.total_checkouts = r.integer(7, "total checkouts");
            if (rec.total_checkouts < 0) throw FieldError{"total checkouts"};
            return rec;
        });
}

LoadResult<CirculationRecord> load_circulation_csv(
    const std::filesystem::path& path) {
    return load_schema<CirculationRecord>(
        path, {"patron_barcode", "item_barcode", "checkout_date"},
        [](const RowReader& r) {
            CirculationRecord rec;
            rec.patron_barcode = r.raw(0);
            rec.item_barcode = r.raw(1);
            if (rec.patron_barcode.empty() || rec.item_barcode.empty())
                throw FieldError{"empty barcode"};
            rec.checkout_date = r.date(2, "checkout");
            return rec;
        });
}

LoadResult<StudentRecord> load_students_csv(
    const std::filesystem::path& path) {
    return load_schema<StudentRecord>(
        path, {"student_id", "faculty_id", "cgpa"}, [](const RowReader& r) {
            StudentRecord rec;
            rec.student_id = r.raw(0);
            if (rec.student_id.empty()) throw FieldError{"empty id"};
            rec.faculty_id = faculty_field(r, 1);
            rec.cgpa = r.decimal(2, "cgpa");
            if (rec.cgpa < 0.0 || rec.cgpa > 4.0)
                throw FieldError{"cgpa range"};
            return rec;
        });
}

namespace {

std::string format_cgpa(double cgpa) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%.2f", cgpa);
    return buf;
}

void append_row(std::string& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += csv_escape(fields[i]);
    }
    out += '\n';
}

}  // namespace

std::string patrons_to_csv(const std::vector<PatronRecord>& records) {
    std::string out = "patron_barcode,patron_type,class_year,faculty_id\n";
    for (const auto& p : records) {
        append_row(out, {p.patron_barcode, std::string(to_string(p.patron_type)),
                         p.class_year ? std::string(to_string(*p.class_year))
                                      : std::string(),
                         std::to_string(p.faculty_id)});
    }
    return out;
}

std::string items_to_csv(const std::vector<ItemRecord>& records) {
    std::string out =
        "item_barcode,title,collection,call_number,catalog_date,"
        "last_checkin_date,last_checkout_date,total_checkouts\n";
    for (const auto& it : records) {
        append_row(out,
                   {it.item_barcode, it.title,
                    std::string(to_string(it.collection)), it.call_number,
                    it.catalog_date.to_string(),
                    it.last_checkin_date ? it.last_checkin_date->to_string()
                                         : std::string(),
                    it.last_checkout_date ? it.last_checkout_date->to_string()
                                          : std::string(),
                    std::to_string(it.total_checkouts)});
    }
    return out;
}

std::string circulation_to_csv(const std::vector<CirculationRecord>& records) {
    std::string out = "patron_barcode,item_barcode,checkout_date\n";
    for (const auto& c : records) {
        append_row(out, {c.patron_barcode, c.item_barcode,
                         c.checkout_date.to_string()});
    }
    return out;
}

std::string students_to_csv(const std::vector<StudentRecord>& records) {
    std::string out = "student_id,faculty_id,cgpa\n";
    for (const auto& s : records) {
        append_row(out, {s.student_id, std::to_string(s.faculty_id),
                         format_cgpa(s.cgpa)});
    }
    return out;
}

}  // namespace circmine
