#include "circmine/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "circmine/lc_table.hpp"
#include "circmine/preprocess.hpp"
#include "circmine/rng.hpp"

namespace circmine {

namespace {

constexpr double kUncirculatedShare = 0.3;
constexpr double kAntecedentSeedRate = 0.12;

std::string padded_id(char prefix, std::size_t n, int width) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%c%0*zu", prefix, width, n);
    return buf;
}

const std::vector<std::string>& all_codes() {
    static const std::vector<std::string> codes = [] {
        std::vector<std::string> out;
        for (const auto& rec : builtin_lc_table())
            out.push_back(rec.category_code);
        return out;
    }();
    return codes;
}

struct CollectionWeight {
    Collection collection;
    double weight;
};

const std::vector<CollectionWeight>& collection_weights() {
    static const std::vector<CollectionWeight> weights = {
        {Collection::Books, 0.62},    {Collection::Multimedia, 0.05},
        {Collection::Serials, 0.05},  {Collection::Projects, 0.03},
        {Collection::Theses, 0.06},   {Collection::Fictions, 0.08},
        {Collection::Juvenile, 0.03}, {Collection::FacilitiesEquipment, 0.05},
        {Collection::Others, 0.03},
    };
    return weights;
}

}  // namespace

std::map<int, double> default_faculty_weights() {
    // proportional to per-faculty borrowing population
    static const std::map<int, long> counts = {
        {1, 183},  {2, 75},   {3, 170}, {4, 970},  {5, 293},  {6, 387},
        {7, 741},  {8, 139},  {9, 390}, {10, 442}, {11, 409}, {12, 351},
        {13, 1641}, {14, 276}, {15, 49}, {16, 16},  {17, 2},
    };
    long total = 0;
    for (const auto& [id, c] : counts) total += c;
    std::map<int, double> weights;
    for (const auto& [id, c] : counts)
        weights[id] = static_cast<double>(c) / static_cast<double>(total);
    return weights;
}

const std::map<int, char>& faculty_class_map() {
    static const std::map<int, char> map = {
        {1, 'T'}, {2, 'Q'}, {3, 'H'},  {4, 'T'},  {5, 'K'},  {6, 'P'},
        {7, 'H'}, {8, 'Q'}, {9, 'Q'},  {10, 'S'}, {11, 'Q'}, {12, 'Q'},
        {13, 'Q'}, {14, 'Q'}, {15, 'Q'}, {16, 'T'}, {17, 'Q'},
    };
    return map;
}

Date synthetic_reference_date() { return Date{2018, 7, 31}; }
Date synthetic_window_start() { return Date{2015, 8, 1}; }

void SyntheticConfig::validate() const {
    if (subject_affinity < 0.0 || subject_affinity > 1.0)
        throw std::invalid_argument("subject_affinity outside [0,1]");
    if (!faculty_weights.empty()) {
        double sum = 0.0;
        for (const auto& [id, w] : faculty_weights) {
            if (!is_valid_faculty_id(id))
                throw std::invalid_argument("faculty weight id out of range");
            if (w < 0.0 || w > 1.0)
                throw std::invalid_argument("faculty weight outside [0,1]");
            sum += w;
        }
        if (std::abs(sum - 1.0) > 1e-9)
            throw std::invalid_argument("faculty weights must sum to 1");
    }
    for (const auto& rule : planted_rules) {
        if (rule.antecedent.empty())
            throw std::invalid_argument("planted rule has empty antecedent");
        if (rule.probability < 0.0 || rule.probability > 1.0)
            throw std::invalid_argument(
                "planted rule probability outside [0,1]");
        for (const auto& code : rule.antecedent) {
            if (!is_classifiable_code(code))
                throw std::invalid_argument("planted rule code " + code);
        }
        if (!is_classifiable_code(rule.consequent))
            throw std::invalid_argument("planted rule code " +
                                        rule.consequent);
        if (std::find(rule.antecedent.begin(), rule.antecedent.end(),
                      rule.consequent) != rule.antecedent.end())
            throw std::invalid_argument(
                "planted rule consequent inside antecedent");
    }
    if (n_checkouts > 0 && n_items == 0)
        throw std::invalid_argument("checkouts requested without items");
}

namespace {

Date date_from_serial(long serial) {
    // walk back from a known anchor; spans here are a few decades at most
    long lo_year = 1900, hi_year = 2200;
    Date d{static_cast<int>(lo_year), 1, 1};
    // binary search on the year, then scan month/day
    while (lo_year < hi_year) {
        long mid = (lo_year + hi_year + 1) / 2;
        if ((Date{static_cast<int>(mid), 1, 1}).serial() <= serial)
            lo_year = mid;
        else
            hi_year = mid - 1;
    }
    d.year = static_cast<int>(lo_year);
    for (int m = 12; m >= 1; --m) {
        if ((Date{d.year, m, 1}).serial() <= serial) {
            d.month = m;
            break;
        }
    }
    d.day = static_cast<int>(serial - (Date{d.year, d.month, 1}).serial()) + 1;
    return d;
}

struct ItemPools {
    std::vector<std::size_t> circulated;  // indices into items
    std::unordered_map<std::string, std::vector<std::size_t>> by_subclass;
    std::unordered_map<char, std::vector<std::size_t>> by_class;
};

}  // namespace

Dataset generate_synthetic(const SyntheticConfig& config) {
    config.validate();
    Rng rng(config.seed);
    Dataset data;

    const auto weights_map = config.faculty_weights.empty()
                                 ? default_faculty_weights()
                                 : config.faculty_weights;
    std::vector<double> weights(kFacultyCount, 0.0);
    for (const auto& [id, w] : weights_map)
        weights[static_cast<std::size_t>(id - 1)] = w;
    auto draw_faculty = [&]() {
        return static_cast<int>(rng.pick_weighted(weights)) + 1;
    };

    // students double as undergraduate patrons
    for (std::size_t i = 0; i < config.n_students; ++i) {
        StudentRecord student;
        student.student_id = padded_id('S', i + 1, 5);
        student.faculty_id = draw_faculty();
        student.cgpa =
            static_cast<double>(150 + rng.next_below(251)) / 100.0;
        data.students.push_back(student);

        PatronRecord patron;
        patron.patron_barcode = student.student_id;
        patron.patron_type = PatronType::Undergraduate;
        patron.class_year = kAllClassYears[i % 4];
        patron.faculty_id = student.faculty_id;
        data.patrons.push_back(std::move(patron));
    }
    std::vector<std::size_t> undergrads(config.n_students);
    for (std::size_t i = 0; i < config.n_students; ++i) undergrads[i] = i;

    auto add_extras = [&](char prefix, std::size_t count, PatronType type) {
        std::vector<std::size_t> indices;
        for (std::size_t i = 0; i < count; ++i) {
            PatronRecord patron;
            patron.patron_barcode = padded_id(prefix, i + 1, 5);
            patron.patron_type = type;
            patron.faculty_id = draw_faculty();
            indices.push_back(data.patrons.size());
            data.patrons.push_back(std::move(patron));
        }
        return indices;
    };
    const auto graduates =
        add_extras('G', config.n_students / 5, PatronType::Graduate);
    const auto staff =
        add_extras('A', config.n_students / 12, PatronType::AcademicStaff);
    const auto others =
        add_extras('O', config.n_students / 8, PatronType::Other);

    // items: the leading slice of the circulated pool cycles through every
    // category code so affinity sampling and planted rules always have stock
    const Date reference = synthetic_reference_date();
    const std::size_t n_uncirculated = static_cast<std::size_t>(
        static_cast<double>(config.n_items) * kUncirculatedShare);
    const std::size_t n_circulated = config.n_items - n_uncirculated;
    const auto& codes = all_codes();

    ItemPools pools;
    for (std::size_t i = 0; i < config.n_items; ++i) {
        ItemRecord item;
        item.item_barcode = padded_id('I', i + 1, 6);
        item.title = "Synthetic title " + std::to_string(i + 1);
        {
            std::vector<double> w;
            for (const auto& cw : collection_weights()) w.push_back(cw.weight);
            item.collection = collection_weights()[rng.pick_weighted(w)]
                                  .collection;
        }
        const std::string& code =
            i < codes.size() && i < n_circulated
                ? codes[i]
                : codes[rng.next_below(codes.size())];
        item.call_number = code + std::to_string(1 + rng.next_below(9999));

        if (i < n_circulated) {
            // lifespans cycle 0..22 years so every bucket fills and a few
            // items land past the 20-year mark
            const long years = static_cast<long>(i % 23);
            const long checkin_serial =
                reference.serial() - static_cast<long>(rng.next_below(330));
            const long min_days = static_cast<long>(
                std::ceil(static_cast<double>(years) * 365.25));
            const long max_days = static_cast<long>(std::ceil(
                                      static_cast<double>(years + 1) * 365.25)) -
                                  1;
            const long days = std::min(
                min_days + static_cast<long>(rng.next_below(300)), max_days);
            item.last_checkin_date = date_from_serial(checkin_serial);
            item.catalog_date = date_from_serial(checkin_serial - days);
            pools.circulated.push_back(i);
            pools.by_subclass[code].push_back(i);
            pools.by_class[code.front()].push_back(i);
        } else {
            item.catalog_date = date_from_serial(
                reference.serial() -
                static_cast<long>(rng.next_below(20 * 365)));
        }
        data.items.push_back(std::move(item));
    }

    // circulation
    const long window_days =
        days_between(synthetic_window_start(), reference);
    auto draw_date = [&]() {
        return date_from_serial(
            synthetic_window_start().serial() +
            static_cast<long>(rng.next_below(
                static_cast<std::uint64_t>(window_days) + 1)));
    };
    auto add_checkout = [&](const std::string& patron_barcode,
                            std::size_t item_index) {
        data.circulation.push_back({patron_barcode,
                                    data.items[item_index].item_barcode,
                                    draw_date()});
    };
    auto draw_item_for = [&](int faculty_id) {
        if (rng.bernoulli(config.subject_affinity)) {
            const char cls = faculty_class_map().at(faculty_id);
            auto pool = pools.by_class.find(cls);
            if (pool != pools.by_class.end() && !pool->second.empty())
                return pool->second[rng.next_below(pool->second.size())];
        }
        return pools.circulated[rng.next_below(pools.circulated.size())];
    };

    if (!data.patrons.empty() && !pools.circulated.empty()) {
        struct Group {
            const std::vector<std::size_t>* members;
            double weight;
        };
        std::vector<Group> groups;
        if (!undergrads.empty()) groups.push_back({&undergrads, 0.70});
        if (!graduates.empty()) groups.push_back({&graduates, 0.14});
        if (!staff.empty()) groups.push_back({&staff, 0.05});
        if (!others.empty()) groups.push_back({&others, 0.11});
        std::vector<double> group_weights;
        for (const auto& g : groups) group_weights.push_back(g.weight);

        for (std::size_t i = 0; i < config.n_checkouts && !groups.empty();
             ++i) {
            const auto& group = groups[rng.pick_weighted(group_weights)];
            const std::size_t member =
                (*group.members)[rng.next_below(group.members->size())];
            const PatronRecord& patron = data.patrons[member];
            add_checkout(patron.patron_barcode,
                         draw_item_for(patron.faculty_id));
        }
    }

    // planted rules: seed antecedents into a slice of students, then close
    // every decided implication until nothing changes
    if (!config.planted_rules.empty() && !data.students.empty() &&
        !pools.circulated.empty()) {
        auto pool_item = [&](const std::string& code) {
            auto it = pools.by_subclass.find(code);
            if (it == pools.by_subclass.end() || it->second.empty())
                throw std::runtime_error(
                    "no circulated item for planted subclass " + code +
                    "; increase n_items");
            return it->second[rng.next_below(it->second.size())];
        };

        std::unordered_map<std::string, std::set<std::string>> labels;
        std::unordered_map<std::string, const ItemRecord*> item_index;
        for (const auto& it : data.items)
            item_index.emplace(it.item_barcode, &it);
        for (const auto& c : data.circulation) {
            if (c.patron_barcode.front() != 'S') continue;
            labels[c.patron_barcode].insert(
                parse_lc(item_index.at(c.item_barcode)->call_number).subclass);
        }

        std::vector<std::vector<bool>> decided(config.planted_rules.size());
        for (std::size_t r = 0; r < config.planted_rules.size(); ++r) {
            decided[r].resize(data.students.size());
            for (std::size_t s = 0; s < data.students.size(); ++s)
                decided[r][s] =
                    rng.bernoulli(config.planted_rules[r].probability);
        }
        for (std::size_t r = 0; r < config.planted_rules.size(); ++r) {
            for (std::size_t s = 0; s < data.students.size(); ++s) {
                if (!rng.bernoulli(kAntecedentSeedRate)) continue;
                auto& basket = labels[data.students[s].student_id];
                for (const auto& code : config.planted_rules[r].antecedent) {
                    if (basket.count(code)) continue;
                    add_checkout(data.students[s].student_id,
                                 pool_item(code));
                    basket.insert(code);
                }
            }
        }
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t r = 0; r < config.planted_rules.size(); ++r) {
                const auto& rule = config.planted_rules[r];
                for (std::size_t s = 0; s < data.students.size(); ++s) {
                    if (!decided[r][s]) continue;
                    auto& basket = labels[data.students[s].student_id];
                    if (basket.count(rule.consequent)) continue;
                    const bool has_antecedent = std::all_of(
                        rule.antecedent.begin(), rule.antecedent.end(),
                        [&](const std::string& code) {
                            return basket.count(code) > 0;
                        });
                    if (!has_antecedent) continue;
                    add_checkout(data.students[s].student_id,
                                 pool_item(rule.consequent));
                    basket.insert(rule.consequent);
                    changed = true;
                }
            }
        }
    }

    // reconcile per-item usage stats with the circulation just generated
    std::unordered_map<std::string, std::size_t> index_of;
    for (std::size_t i = 0; i < data.items.size(); ++i)
        index_of.emplace(data.items[i].item_barcode, i);
    for (const auto& c : data.circulation) {
        ItemRecord& item = data.items[index_of.at(c.item_barcode)];
        item.total_checkouts += 1;
        if (!item.last_checkout_date || *item.last_checkout_date < c.checkout_date)
            item.last_checkout_date = c.checkout_date;
    }
    for (std::size_t i : pools.circulated) {
        ItemRecord& item = data.items[i];
        if (item.total_checkouts == 0) {
            // checked out before the window; keep the check-in consistent
            item.total_checkouts = 1;
            item.last_checkout_date = item.last_checkin_date;
        }
    }

    return data;
}

}  // namespace circmine
