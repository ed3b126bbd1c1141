#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "circmine/datamodel.hpp"

namespace circmine {

struct CsvRejection {
    std::size_t line = 0;  // 1-based line of the offending row
    std::string reason;
};

template <typename Record>
struct LoadResult {
    std::vector<Record> records;
    std::vector<CsvRejection> rejected;
};

// Loaders parse the fixed schemas below. Unreadable files and header
// mismatches throw std::runtime_error naming the file/column; malformed
// rows land in `rejected` with their line number.
//
//   patrons.csv      patron_barcode,patron_type,class_year,faculty_id
//   items.csv        item_barcode,title,collection,call_number,catalog_date,
//                    last_checkin_date,last_checkout_date,total_checkouts
//   circulation.csv  patron_barcode,item_barcode,checkout_date
//   students.csv     student_id,faculty_id,cgpa
//
// Dates are ISO-8601; an empty string is an absent optional.
LoadResult<PatronRecord> load_patrons_csv(const std::filesystem::path& path);
LoadResult<ItemRecord> load_items_csv(const std::filesystem::path& path);
LoadResult<CirculationRecord> load_circulation_csv(
    const std::filesystem::path& path);
LoadResult<StudentRecord> load_students_csv(const std::filesystem::path& path);

std::string patrons_to_csv(const std::vector<PatronRecord>& records);
std::string items_to_csv(const std::vector<ItemRecord>& records);
std::string circulation_to_csv(const std::vector<CirculationRecord>& records);
std::string students_to_csv(const std::vector<StudentRecord>& records);

/// RFC 4180 field quoting.
std::string csv_escape(std::string_view field);

struct CsvRow {
    std::size_t line = 0;
    std::vector<std::string> fields;
};

/// Splits CSV text into rows, honoring quoted fields (embedded commas,
/// quotes, newlines). Includes the header row.
std::vector<CsvRow> parse_csv(std::string_view text);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path,
                     std::string_view text);

}  // namespace circmine
