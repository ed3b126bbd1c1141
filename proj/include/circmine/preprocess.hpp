#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "circmine/cluster.hpp"
#include "circmine/datamodel.hpp"

namespace circmine {

/// Five-level standing from CGPA. Boundaries are evaluated on the value
/// rounded to 2 decimals: >=3.50 Excellent, 3.00-3.49 Very Good,
/// 2.50-2.99 Good, 2.00-2.49 Average, <2.00 Poor.
GradeLevel grade_level(double cgpa);

struct LcCode {
    char cls = '\0';       // top-level class letter
    std::string subclass;  // leading letter group, 1-3 letters
};

/// Splits an LC call number into its class letter and subclass (the maximal
/// leading run of 1-3 uppercase letters). Throws std::invalid_argument
/// ("unclassifiable") when there is no leading letter or the first letter is
/// not one of the 21 classes.
LcCode parse_lc(std::string_view call_number);

/// Whole years between catalog date and last check-in, floor(days/365.25);
/// absent for uncirculated items (no check-in date).
std::optional<int> lifespan_years(const ItemRecord& item);

LifespanBucket lifespan_bucket(int years);

/// Label of the academic year [1 Aug y, 31 Jul y+1] containing the date.
int academic_year(Date date);

/// One mining transaction: a student's faculty tag plus every LC subclass
/// they ever borrowed.
struct Basket {
    std::string student_id;
    std::set<std::string> labels;  // one "FAC<n>" tag + subclass codes
};

std::string faculty_tag(int faculty_id);

/// One basket per student with at least one resolvable checkout. Checkouts
/// whose item is missing or unclassifiable are skipped. With faculty_filter
/// set, only that faculty's students are included.
std::vector<Basket> build_baskets(const Dataset& data,
                                  std::optional<int> faculty_filter = {});

enum class InstanceSchemaKind {
    FacultySubclassLifespan,
    FacultySubclassGrade,
    SubclassGrade
};

std::optional<InstanceSchemaKind> parse_schema_kind(std::string_view s);
std::string_view to_string(InstanceSchemaKind kind);

struct InstanceSet {
    AttributeSchema schema;
    std::vector<ClusterInstance> instances;
};

/// One instance per circulation row whose item parses. Lifespan instances
/// take the borrower's faculty from the patron record; grade instances need
/// the borrower's StudentRecord and skip rows without one. Nominal category
/// sets cover every value observable in the dataset.
InstanceSet build_cluster_instances(const Dataset& data,
                                    InstanceSchemaKind kind);

}  // namespace circmine
