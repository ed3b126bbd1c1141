#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "circmine/datamodel.hpp"

using namespace circmine;

TEST_CASE("date parsing and arithmetic") {
    auto d = Date::parse("2016-07-31");
    REQUIRE(d.has_value());
    CHECK(d->year == 2016);
    CHECK(d->month == 7);
    CHECK(d->day == 31);
    CHECK(d->to_string() == "2016-07-31");

    CHECK(!Date::parse("2016-13-01"));
    CHECK(!Date::parse("2016-02-30"));
    CHECK(!Date::parse("2016/07/31"));
    CHECK(!Date::parse("16-07-31"));
    CHECK(Date::parse("2016-02-29"));  // leap year
    CHECK(!Date::parse("2015-02-29"));

    CHECK(days_between({2000, 1, 1}, {2000, 1, 1}) == 0);
    CHECK(days_between({2000, 1, 1}, {2000, 1, 2}) == 1);
    CHECK(days_between({2000, 1, 1}, {2003, 6, 1}) == 1247);
    CHECK(days_between({2000, 1, 2}, {2000, 1, 1}) == -1);
    CHECK(Date{2015, 8, 1} < Date{2016, 7, 31});
}

TEST_CASE("every enum round-trips through its string form bijectively") {
    std::set<std::string> seen;
    for (auto v : kAllPatronTypes) {
        const std::string s{to_string(v)};
        CHECK(seen.insert(s).second);
        CHECK(parse_patron_type(s) == v);
    }
    seen.clear();
    for (auto v : kAllClassYears) {
        const std::string s{to_string(v)};
        CHECK(seen.insert(s).second);
        CHECK(parse_class_year(s) == v);
    }
    seen.clear();
    for (auto v : kAllCollections) {
        const std::string s{to_string(v)};
        CHECK(seen.insert(s).second);
        CHECK(parse_collection(s) == v);
    }
    seen.clear();
    for (auto v : kAllGradeLevels) {
        const std::string s{to_string(v)};
        CHECK(seen.insert(s).second);
        CHECK(parse_grade_level(s) == v);
    }
    seen.clear();
    for (auto v : kAllLifespanBuckets) {
        const std::string s{to_string(v)};
        CHECK(seen.insert(s).second);
        CHECK(parse_lifespan_bucket(s) == v);
    }
    CHECK(!parse_patron_type("Undergrad"));
    CHECK(!parse_collection(""));
}

TEST_CASE("faculty table") {
    CHECK(faculty_table().size() == 17);
    CHECK(faculty_name(13) == "Faculty of Science");
    CHECK(faculty_name(5) == "Faculty of Law");
    CHECK(faculty_name(16) == "International College");
    CHECK(faculty_name(17) == "Faculty of SINO-Thai");
    CHECK(!is_valid_faculty_id(0));
    CHECK(!is_valid_faculty_id(18));
    CHECK_THROWS_AS(faculty_name(18), std::out_of_range);
}

namespace {

Dataset small_fixture() {
    Dataset data;
    data.patrons.push_back(
        {"P1", PatronType::Undergraduate, ClassYear::Junior, 13});
    data.patrons.push_back({"P2", PatronType::Graduate, std::nullopt, 5});
    data.items.push_back({"I1", "t", Collection::Books, "QA1",
                          Date{2000, 1, 1}, Date{2005, 1, 1},
                          Date{2005, 1, 1}, 3});
    data.circulation.push_back({"P1", "I1", Date{2016, 1, 1}});
    data.students.push_back({"P1", 13, 3.2});
    return data;
}

}  // namespace

TEST_CASE("validate_dataset accepts a consistent fixture") {
    auto report = validate_dataset(small_fixture());
    CHECK(report.rejected.empty());
    CHECK(report.accepted_count() == 5);
}

TEST_CASE("validate_dataset on empty collections") {
    auto report = validate_dataset(Dataset{});
    CHECK(report.accepted_count() == 0);
    CHECK(report.rejected_count() == 0);
}

TEST_CASE("validate_dataset rejection reasons") {
    auto data = small_fixture();
    data.circulation.push_back({"P1", "NOPE", Date{2016, 1, 1}});
    data.circulation.push_back({"GHOST", "I1", Date{2016, 1, 1}});
    data.students.push_back({"S-bad", 13, 4.20});
    data.items.push_back({"I2", "t", Collection::Books, "QA2",
                          Date{2010, 1, 1}, Date{2009, 1, 1}, std::nullopt,
                          0});
    data.patrons.push_back(
        {"P3", PatronType::Graduate, ClassYear::Senior, 5});
    data.patrons.push_back({"P1", PatronType::Graduate, std::nullopt, 5});

    auto report = validate_dataset(data);
    REQUIRE(report.rejected.size() == 5);
    auto has = [&](const std::string& ds, const std::string& id,
                   const std::string& reason) {
        for (const auto& r : report.rejected)
            if (r.dataset == ds && r.record_id == id && r.reason == reason)
                return true;
        return false;
    };
    CHECK(has("circulation", "NOPE", "dangling item"));
    CHECK(has("circulation", "GHOST", "dangling patron"));
    CHECK(has("students", "S-bad", "cgpa range"));
    CHECK(has("items", "I2", "checkin before catalog"));
    CHECK(has("patrons", "P3", "class year mismatch"));
    CHECK(has("patrons", "P1", "duplicate barcode"));
}

TEST_CASE("validate_dataset is idempotent on the accepted subset") {
    auto data = small_fixture();
    data.circulation.push_back({"P1", "NOPE", Date{2016, 1, 1}});
    data.students.push_back({"S-bad", 1, -0.5});
    data.items.push_back({"", "t", Collection::Books, "Q1", Date{2000, 1, 1},
                          std::nullopt, std::nullopt, 0});
    data.items.push_back({"I3", "t", Collection::Books, "Q1",
                          Date{2000, 1, 1}, std::nullopt, Date{2001, 1, 1},
                          0});

    auto first = validate_dataset(data);
    CHECK(first.rejected.size() == 4);
    auto second = validate_dataset(first.accepted);
    CHECK(second.rejected.empty());
    CHECK(second.accepted_count() == first.accepted_count());
}
