#include "circmine/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "circmine/lc_table.hpp"

namespace circmine {

GradeLevel grade_level(double cgpa) {
    if (cgpa < 0.0 || cgpa > 4.0)
        throw std::invalid_argument("cgpa outside [0,4]");
    // Compare on integer hundredths so 3.4999 and 3.50 land where the
    // two-decimal ranges say they should.
    const long hundredths = std::lround(cgpa * 100.0);
    if (hundredths >= 350) return GradeLevel::Excellent;
    if (hundredths >= 300) return GradeLevel::VeryGood;
    if (hundredths >= 250) return GradeLevel::Good;
    if (hundredths >= 200) return GradeLevel::Average;
    return GradeLevel::Poor;
}

LcCode parse_lc(std::string_view call_number) {
    std::string run;
    for (char c : call_number) {
        if (c < 'A' || c > 'Z' || run.size() == 3) break;
        run += c;
    }
    if (run.empty() || !is_lc_class_letter(run.front()))
        throw std::invalid_argument("unclassifiable call number: " +
                                    std::string(call_number));
    return LcCode{run.front(), run};
}

std::optional<int> lifespan_years(const ItemRecord& item) {
    if (!item.last_checkin_date) return std::nullopt;
    const long days = days_between(item.catalog_date, *item.last_checkin_date);
    return static_cast<int>(
        std::floor(static_cast<double>(days) / 365.25));
}

LifespanBucket lifespan_bucket(int years) {
    if (years < 0) throw std::invalid_argument("negative lifespan");
    if (years <= 5) return LifespanBucket::Y0_5;
    if (years <= 10) return LifespanBucket::Y6_10;
    if (years <= 15) return LifespanBucket::Y11_15;
    return LifespanBucket::Y16_20;
}

int academic_year(Date date) {
    return date.month >= 8 ? date.year : date.year - 1;
}

std::string faculty_tag(int faculty_id) {
    return "FAC" + std::to_string(faculty_id);
}

namespace {

std::optional<std::string> item_subclass(const ItemRecord& item) {
    try {
        return parse_lc(item.call_number).subclass;
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
}

}  // namespace

std::vector<Basket> build_baskets(const Dataset& data,
                                  std::optional<int> faculty_filter) {
    std::unordered_map<std::string, const ItemRecord*> items;
    for (const auto& it : data.items) items.emplace(it.item_barcode, &it);

    // student_id doubles as the patron barcode for student borrowers
    std::map<std::string, const StudentRecord*> students;
    for (const auto& s : data.students) {
        if (faculty_filter && s.faculty_id != *faculty_filter) continue;
        students.emplace(s.student_id, &s);
    }

    std::map<std::string, std::set<std::string>> borrowed;
    for (const auto& c : data.circulation) {
        auto student = students.find(c.patron_barcode);
        if (student == students.end()) continue;
        auto item = items.find(c.item_barcode);
        if (item == items.end()) continue;
        auto subclass = item_subclass(*item->second);
        if (!subclass) continue;
        borrowed[c.patron_barcode].insert(*subclass);
    }

    std::vector<Basket> baskets;
    baskets.reserve(borrowed.size());
    for (auto& [student_id, labels] : borrowed) {
        Basket basket;
        basket.student_id = student_id;
        basket.labels = std::move(labels);
        basket.labels.insert(faculty_tag(students.at(student_id)->faculty_id));
        baskets.push_back(std::move(basket));
    }
    return baskets;
}

std::optional<InstanceSchemaKind> parse_schema_kind(std::string_view s) {
    if (s == "fsl" || s == "FacultySubclassLifespan")
        return InstanceSchemaKind::FacultySubclassLifespan;
    if (s == "fsg" || s == "FacultySubclassGrade")
        return InstanceSchemaKind::FacultySubclassGrade;
    if (s == "sg" || s == "SubclassGrade")
        return InstanceSchemaKind::SubclassGrade;
    return std::nullopt;
}

std::string_view to_string(InstanceSchemaKind kind) {
    switch (kind) {
        case InstanceSchemaKind::FacultySubclassLifespan: return "fsl";
        case InstanceSchemaKind::FacultySubclassGrade: return "fsg";
        case InstanceSchemaKind::SubclassGrade: return "sg";
    }
    throw std::logic_error("bad InstanceSchemaKind");
}

namespace {

std::vector<std::string> all_faculty_names() {
    std::vector<std::string> names;
    for (const auto& f : faculty_table()) names.push_back(f.name);
    std::sort(names.begin(), names.end());
    return names;
}

std::vector<std::string> all_grade_labels() {
    std::vector<std::string> labels;
    for (GradeLevel g : kAllGradeLevels)
        labels.emplace_back(to_string(g));
    return labels;
}

std::vector<std::string> all_bucket_labels() {
    std::vector<std::string> labels;
    for (LifespanBucket b : kAllLifespanBuckets)
        labels.emplace_back(to_string(b));
    return labels;
}

std::vector<std::string> all_subclass_codes() {
    std::vector<std::string> codes;
    for (const auto& rec : builtin_lc_table())
        codes.push_back(rec.category_code);
    std::sort(codes.begin(), codes.end());
    return codes;
}

}  // namespace

InstanceSet build_cluster_instances(const Dataset& data,
                                    InstanceSchemaKind kind) {
    std::unordered_map<std::string, const ItemRecord*> items;
    for (const auto& it : data.items) items.emplace(it.item_barcode, &it);
    std::unordered_map<std::string, const PatronRecord*> patrons;
    for (const auto& p : data.patrons) patrons.emplace(p.patron_barcode, &p);
    std::unordered_map<std::string, const StudentRecord*> students;
    for (const auto& s : data.students) students.emplace(s.student_id, &s);

    // subclasses outside the builtin table can still occur in real call
    // numbers; fold them into the category universe as observed
    std::vector<std::string> subclasses = all_subclass_codes();
    auto note_subclass = [&subclasses](const std::string& code) {
        auto pos = std::lower_bound(subclasses.begin(), subclasses.end(), code);
        if (pos == subclasses.end() || *pos != code)
            subclasses.insert(pos, code);
    };
    for (const auto& it : data.items) {
        if (auto sub = item_subclass(it)) note_subclass(*sub);
    }

    InstanceSet out;
    const bool wants_faculty = kind != InstanceSchemaKind::SubclassGrade;
    const bool wants_grade = kind != InstanceSchemaKind::FacultySubclassLifespan;
    if (wants_faculty)
        out.schema.attributes.push_back(
            {"Faculty", NominalAttribute{all_faculty_names()}});
    out.schema.attributes.push_back(
        {"Subcategory", NominalAttribute{subclasses}});
    if (wants_grade)
        out.schema.attributes.push_back(
            {"Grade Level", NominalAttribute{all_grade_labels()}});
    else
        out.schema.attributes.push_back(
            {"Book Lifespan", NominalAttribute{all_bucket_labels()}});

    for (const auto& c : data.circulation) {
        auto item = items.find(c.item_barcode);
        if (item == items.end()) continue;
        auto subclass = item_subclass(*item->second);
        if (!subclass) continue;

        ClusterInstance instance;
        if (wants_grade) {
            auto student = students.find(c.patron_barcode);
            if (student == students.end()) continue;
            if (wants_faculty)
                instance.values.emplace_back(
                    std::string(faculty_name(student->second->faculty_id)));
            instance.values.emplace_back(*subclass);
            instance.values.emplace_back(
                std::string(to_string(grade_level(student->second->cgpa))));
        } else {
            auto patron = patrons.find(c.patron_barcode);
            if (patron == patrons.end()) continue;
            auto years = lifespan_years(*item->second);
            if (!years) continue;  // circulated rows normally carry a check-in
            instance.values.emplace_back(
                std::string(faculty_name(patron->second->faculty_id)));
            instance.values.emplace_back(*subclass);
            instance.values.emplace_back(
                std::string(to_string(lifespan_bucket(*years))));
        }
        out.instances.push_back(std::move(instance));
    }
    return out;
}

}  // namespace circmine
