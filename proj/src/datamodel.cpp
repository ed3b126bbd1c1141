#include "circmine/datamodel.hpp"

#include <array>
#include <cstdio>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace circmine {

namespace {

// Howard Hinnant's civil-days conversion; exact over the full int range.
long days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const long era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<long>(doe) - 719468;
}

bool is_leap(int y) { return y % 4 == 0 && (y % 100 != 0 || y % 400 == 0); }

int days_in_month(int y, int m) {
    static constexpr std::array<int, 12> lengths{31, 28, 31, 30, 31, 30,
                                                 31, 31, 30, 31, 30, 31};
    if (m == 2 && is_leap(y)) return 29;
    return lengths[m - 1];
}

}  // namespace

long Date::serial() const { return days_from_civil(year, month, day); }

std::string Date::to_string() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
    return buf;
}

bool Date::is_valid(int y, int m, int d) {
    if (m < 1 || m > 12 || d < 1) return false;
    return d <= days_in_month(y, m);
}

std::optional<Date> Date::parse(std::string_view iso) {
    if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-') return std::nullopt;
    auto digits = [&](std::size_t pos, std::size_t len, int& out) {
        out = 0;
        for (std::size_t i = pos; i < pos + len; ++i) {
            if (iso[i] < '0' || iso[i] > '9') return false;
            out = out * 10 + (iso[i] - '0');
        }
        return true;
    };
    int y = 0, m = 0, d = 0;
    if (!digits(0, 4, y) || !digits(5, 2, m) || !digits(8, 2, d))
        return std::nullopt;
    if (!is_valid(y, m, d)) return std::nullopt;
    return Date{y, m, d};
}

long days_between(Date from, Date to) { return to.serial() - from.serial(); }

std::string_view to_string(PatronType v) {
    switch (v) {
        case PatronType::Undergraduate: return "Undergraduate";
        case PatronType::Graduate: return "Graduate";
        case PatronType::AcademicStaff: return "Academic Staff";
        case PatronType::Other: return "Others";
    }
    throw std::logic_error("bad PatronType");
}

std::string_view to_string(ClassYear v) {
    switch (v) {
        case ClassYear::Freshman: return "Freshman";
        case ClassYear::Sophomore: return "Sophomore";
        case ClassYear::Junior: return "Junior";
        case ClassYear::Senior: return "Senior";
    }
    throw std::logic_error("bad ClassYear");
}

std::string_view to_string(Collection v) {
    switch (v) {
        case Collection::Books: return "Books";
        case Collection::Multimedia: return "Multimedia";
        case Collection::Serials: return "Serials";
        case Collection::Projects: return "Projects";
        case Collection::Theses: return "Theses";
        case Collection::Fictions: return "Fictions";
        case Collection::Juvenile: return "Juvenile";
        case Collection::FacilitiesEquipment: return "Facilities & Equipment";
        case Collection::Others: return "Others";
    }
    throw std::logic_error("bad Collection");
}

std::string_view to_string(GradeLevel v) {
    switch (v) {
        case GradeLevel::Excellent: return "Excellent";
        case GradeLevel::VeryGood: return "Very Good";
        case GradeLevel::Good: return "Good";
        case GradeLevel::Average: return "Average";
        case GradeLevel::Poor: return "Poor";
    }
    throw std::logic_error("bad GradeLevel");
}

std::string_view to_string(LifespanBucket v) {
    switch (v) {
        case LifespanBucket::Y0_5: return "0-5";
        case LifespanBucket::Y6_10: return "6-10";
        case LifespanBucket::Y11_15: return "11-15";
        case LifespanBucket::Y16_20: return "16-20";
    }
    throw std::logic_error("bad LifespanBucket");
}

namespace {
template <typename E, std::size_t N>
std::optional<E> parse_enum(const E (&all)[N], std::string_view s) {
    for (E v : all)
        if (to_string(v) == s) return v;
    return std::nullopt;
}
}  // namespace

std::optional<PatronType> parse_patron_type(std::string_view s) {
    return parse_enum(kAllPatronTypes, s);
}
std::optional<ClassYear> parse_class_year(std::string_view s) {
    return parse_enum(kAllClassYears, s);
}
std::optional<Collection> parse_collection(std::string_view s) {
    return parse_enum(kAllCollections, s);
}
std::optional<GradeLevel> parse_grade_level(std::string_view s) {
    return parse_enum(kAllGradeLevels, s);
}
std::optional<LifespanBucket> parse_lifespan_bucket(std::string_view s) {
    return parse_enum(kAllLifespanBuckets, s);
}

const std::vector<FacultyRecord>& faculty_table() {
    static const std::vector<FacultyRecord> table = {
        {1, "Faculty of Agro-Industry"},
        {2, "Faculty of Dentistry"},
        {3, "Faculty of Economics"},
        {4, "Faculty of Engineering"},
        {5, "Faculty of Law"},
        {6, "Faculty of Liberal Arts"},
        {7, "Faculty of Management Sciences"},
        {8, "Faculty of Medical Technology"},
        {9, "Faculty of Medicine"},
        {10, "Faculty of Natural Resources"},
        {11, "Faculty of Nursing"},
        {12, "Faculty of Pharmaceutical Sciences"},
        {13, "Faculty of Science"},
        {14, "Faculty of Traditional Thai Medicine"},
        {15, "Faculty of Veterinary Science"},
        {16, "International College"},
        {17, "Faculty of SINO-Thai"},
    };
    return table;
}

bool is_valid_faculty_id(int faculty_id) {
    return faculty_id >= 1 && faculty_id <= kFacultyCount;
}

std::string_view faculty_name(int faculty_id) {
    if (!is_valid_faculty_id(faculty_id))
        throw std::out_of_range("unknown faculty id " +
                                std::to_string(faculty_id));
    return faculty_table()[static_cast<std::size_t>(faculty_id - 1)].name;
}

ValidationReport validate_dataset(const Dataset& data) {
    ValidationReport report;

    std::unordered_set<std::string> patron_ids;
    for (const auto& p : data.patrons) {
        if (p.patron_barcode.empty()) {
            report.rejected.push_back({"patrons", "", "empty barcode"});
            continue;
        }
        if (patron_ids.count(p.patron_barcode)) {
            report.rejected.push_back(
                {"patrons", p.patron_barcode, "duplicate barcode"});
            continue;
        }
        if (!is_valid_faculty_id(p.faculty_id)) {
            report.rejected.push_back(
                {"patrons", p.patron_barcode, "faculty id range"});
            continue;
        }
        const bool undergrad = p.patron_type == PatronType::Undergraduate;
        if (undergrad != p.class_year.has_value()) {
            report.rejected.push_back(
                {"patrons", p.patron_barcode, "class year mismatch"});
            continue;
        }
        patron_ids.insert(p.patron_barcode);
        report.accepted.patrons.push_back(p);
    }

    std::unordered_set<std::string> item_ids;
    for (const auto& it : data.items) {
        if (it.item_barcode.empty()) {
            report.rejected.push_back({"items", "", "empty barcode"});
            continue;
        }
        if (item_ids.count(it.item_barcode)) {
            report.rejected.push_back(
                {"items", it.item_barcode, "duplicate barcode"});
            continue;
        }
        if (it.total_checkouts < 0) {
            report.rejected.push_back(
                {"items", it.item_barcode, "negative checkout count"});
            continue;
        }
        if (it.last_checkin_date && *it.last_checkin_date < it.catalog_date) {
            report.rejected.push_back(
                {"items", it.item_barcode, "checkin before catalog"});
            continue;
        }
        if (it.total_checkouts == 0 && it.last_checkout_date) {
            report.rejected.push_back(
                {"items", it.item_barcode, "checkout date without checkouts"});
            continue;
        }
        item_ids.insert(it.item_barcode);
        report.accepted.items.push_back(it);
    }

    std::unordered_set<std::string> student_ids;
    for (const auto& s : data.students) {
        if (s.student_id.empty()) {
            report.rejected.push_back({"students", "", "empty id"});
            continue;
        }
        if (student_ids.count(s.student_id)) {
            report.rejected.push_back(
                {"students", s.student_id, "duplicate id"});
            continue;
        }
        if (!is_valid_faculty_id(s.faculty_id)) {
            report.rejected.push_back(
                {"students", s.student_id, "faculty id range"});
            continue;
        }
        if (s.cgpa < 0.0 || s.cgpa > 4.0) {
            report.rejected.push_back({"students", s.student_id, "cgpa range"});
            continue;
        }
        student_ids.insert(s.student_id);
        report.accepted.students.push_back(s);
    }

    for (const auto& c : data.circulation) {
        if (!patron_ids.count(c.patron_barcode)) {
            report.rejected.push_back(
                {"circulation", c.patron_barcode, "dangling patron"});
            continue;
        }
        if (!item_ids.count(c.item_barcode)) {
            report.rejected.push_back(
                {"circulation", c.item_barcode, "dangling item"});
            continue;
        }
        report.accepted.circulation.push_back(c);
    }

    return report;
}

}  // namespace circmine
