#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace circmine {

/// Timezone-less calendar date. Circulation data never carries time-of-day.
struct Date {
    int year = 0;
    int month = 0;  // 1..12
    int day = 0;    // 1..31

    auto operator<=>(const Date&) const = default;

    // Days since 1970-01-01 (proleptic Gregorian, negative before).
    long serial() const;

    std::string to_string() const;  // ISO-8601 YYYY-MM-DD
    static std::optional<Date> parse(std::string_view iso);
    static bool is_valid(int y, int m, int d);
};

long days_between(Date from, Date to);

enum class PatronType { Undergraduate, Graduate, AcademicStaff, Other };
enum class ClassYear { Freshman, Sophomore, Junior, Senior };
enum class Collection {
    Books,
    Multimedia,
    Serials,
    Projects,
    Theses,
    Fictions,
    Juvenile,
    FacilitiesEquipment,
    Others
};

/// Five-level academic standing derived from CGPA, ordered best to worst.
enum class GradeLevel { Excellent, VeryGood, Good, Average, Poor };

/// Whole-year lifespan buckets; years past 20 clamp into Y16_20.
enum class LifespanBucket { Y0_5, Y6_10, Y11_15, Y16_20 };

std::string_view to_string(PatronType v);
std::string_view to_string(ClassYear v);
std::string_view to_string(Collection v);
std::string_view to_string(GradeLevel v);
std::string_view to_string(LifespanBucket v);

std::optional<PatronType> parse_patron_type(std::string_view s);
std::optional<ClassYear> parse_class_year(std::string_view s);
std::optional<Collection> parse_collection(std::string_view s);
std::optional<GradeLevel> parse_grade_level(std::string_view s);
std::optional<LifespanBucket> parse_lifespan_bucket(std::string_view s);

inline constexpr PatronType kAllPatronTypes[] = {
    PatronType::Undergraduate, PatronType::Graduate, PatronType::AcademicStaff,
    PatronType::Other};
inline constexpr ClassYear kAllClassYears[] = {
    ClassYear::Freshman, ClassYear::Sophomore, ClassYear::Junior,
    ClassYear::Senior};
inline constexpr Collection kAllCollections[] = {
    Collection::Books,    Collection::Multimedia, Collection::Serials,
    Collection::Projects, Collection::Theses,     Collection::Fictions,
    Collection::Juvenile, Collection::FacilitiesEquipment,
    Collection::Others};
inline constexpr GradeLevel kAllGradeLevels[] = {
    GradeLevel::Excellent, GradeLevel::VeryGood, GradeLevel::Good,
    GradeLevel::Average, GradeLevel::Poor};
inline constexpr LifespanBucket kAllLifespanBuckets[] = {
    LifespanBucket::Y0_5, LifespanBucket::Y6_10, LifespanBucket::Y11_15,
    LifespanBucket::Y16_20};

struct PatronRecord {
    std::string patron_barcode;
    PatronType patron_type = PatronType::Other;
    std::optional<ClassYear> class_year;  // present iff undergraduate
    int faculty_id = 0;                   // 1..17
};

struct ItemRecord {
    std::string item_barcode;
    std::string title;
    Collection collection = Collection::Books;
    std::string call_number;  // LC call number
    Date catalog_date;
    std::optional<Date> last_checkin_date;
    std::optional<Date> last_checkout_date;
    long total_checkouts = 0;
};

struct CirculationRecord {
    std::string patron_barcode;
    std::string item_barcode;
    Date checkout_date;
};

struct StudentRecord {
    std::string student_id;  // equals the student's patron barcode
    int faculty_id = 0;
    double cgpa = 0.0;  // [0.00, 4.00]
};

struct CategoryRecord {
    std::string category_code;  // 1-3 uppercase letters
    std::string description;
};

struct FacultyRecord {
    int faculty_id = 0;
    std::string name;
};

inline constexpr int kFacultyCount = 17;

/// The 17 faculties, ids 1..17.
const std::vector<FacultyRecord>& faculty_table();
std::string_view faculty_name(int faculty_id);  // throws on unknown id
bool is_valid_faculty_id(int faculty_id);

struct Dataset {
    std::vector<PatronRecord> patrons;
    std::vector<ItemRecord> items;
    std::vector<CirculationRecord> circulation;
    std::vector<StudentRecord> students;
};

struct Rejection {
    std::string dataset;    // "patrons" | "items" | "circulation" | "students"
    std::string record_id;  // offending barcode/id
    std::string reason;
};

struct ValidationReport {
    Dataset accepted;
    std::vector<Rejection> rejected;

    std::size_t accepted_count() const {
        return accepted.patrons.size() + accepted.items.size() +
               accepted.circulation.size() + accepted.students.size();
    }
    std::size_t rejected_count() const { return rejected.size(); }
};

/// Checks record invariants and referential integrity. Rejected records are
/// reported, never thrown; the accepted subset is internally consistent
/// (re-validating it yields zero rejections).
ValidationReport validate_dataset(const Dataset& data);

}  // namespace circmine
