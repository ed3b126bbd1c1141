#include "circmine/apriori.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>

namespace circmine {

void MiningParams::validate() const {
    if (num_rules < 0)
        throw std::invalid_argument("num_rules must be non-negative");
    if (!(lower_bound_support > 0.0 &&
          lower_bound_support <= upper_bound_support &&
          upper_bound_support <= 1.0))
        throw std::invalid_argument(
            "need 0 < lower_bound_support <= upper_bound_support <= 1");
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("need 0 < delta < 1");
    if (!(min_metric > 0.0 && min_metric <= 1.0))
        throw std::invalid_argument("need 0 < min_metric <= 1");
}

long support_count(double min_support, long n) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (!(min_support > 0.0 && min_support <= 1.0))
        throw std::invalid_argument("min_support must be in (0,1]");
    return std::max(1L, std::lround(min_support * static_cast<double>(n)));
}

long AssociationRule::leverage_instances() const {
    const double expected = static_cast<double>(premise_count) *
                            static_cast<double>(consequent_count) /
                            static_cast<double>(n);
    return static_cast<long>(
        std::floor(static_cast<double>(both_count) - expected));
}

namespace {

// Internal mining works on label ids (indices into a sorted label list);
// id order equals lexicographic label order, so sorted id vectors map
// straight back to sorted label vectors.
struct LabelSpace {
    std::vector<std::string> labels;  // sorted
    std::vector<std::vector<int>> transactions;  // sorted ids per basket

    explicit LabelSpace(const std::vector<Transaction>& input) {
        std::set<std::string> distinct;
        for (const auto& t : input) distinct.insert(t.begin(), t.end());
        labels.assign(distinct.begin(), distinct.end());
        std::unordered_map<std::string, int> index;
        for (std::size_t i = 0; i < labels.size(); ++i)
            index.emplace(labels[i], static_cast<int>(i));
        transactions.reserve(input.size());
        for (const auto& t : input) {
            std::vector<int> ids;
            ids.reserve(t.size());
            for (const auto& label : t) ids.push_back(index.at(label));
            std::sort(ids.begin(), ids.end());
            transactions.push_back(std::move(ids));
        }
    }

    std::vector<std::string> to_labels(const std::vector<int>& ids) const {
        std::vector<std::string> out;
        out.reserve(ids.size());
        for (int id : ids) out.push_back(labels[static_cast<std::size_t>(id)]);
        return out;
    }
};

struct VecHash {
    std::size_t operator()(const std::vector<int>& v) const {
        std::size_t h = v.size();
        for (int x : v)
            h ^= static_cast<std::size_t>(x) + 0x9E3779B9u + (h << 6) +
                 (h >> 2);
        return h;
    }
};

bool contains_sorted(const std::vector<int>& transaction,
                     const std::vector<int>& itemset) {
    auto it = transaction.begin();
    for (int id : itemset) {
        it = std::lower_bound(it, transaction.end(), id);
        if (it == transaction.end() || *it != id) return false;
        ++it;
    }
    return true;
}

using IdItemsetCounts =
    std::unordered_map<std::vector<int>, long, VecHash>;

// Level-wise apriori over id vectors; returns all frequent itemsets and,
// via level_sizes, the count of frequent itemsets per size.
IdItemsetCounts mine_frequent(const LabelSpace& space, long min_count,
                              std::vector<long>* level_sizes) {
    IdItemsetCounts all;
    if (level_sizes) level_sizes->clear();

    std::vector<long> single(space.labels.size(), 0);
    for (const auto& t : space.transactions)
        for (int id : t) ++single[static_cast<std::size_t>(id)];

    std::vector<std::vector<int>> current;  // frequent sets of current size
    for (std::size_t id = 0; id < single.size(); ++id) {
        if (single[id] >= min_count) {
            std::vector<int> set{static_cast<int>(id)};
            all.emplace(set, single[id]);
            current.push_back(std::move(set));
        }
    }
    if (level_sizes && !current.empty())
        level_sizes->push_back(static_cast<long>(current.size()));

    while (!current.empty()) {
        std::unordered_set<std::vector<int>, VecHash> previous(
            current.begin(), current.end());

        // join: pairs sharing all but the last element
        std::vector<std::vector<int>> candidates;
        for (std::size_t i = 0; i < current.size(); ++i) {
            for (std::size_t j = i + 1; j < current.size(); ++j) {
                const auto& a = current[i];
                const auto& b = current[j];
                if (!std::equal(a.begin(), a.end() - 1, b.begin(),
                                b.end() - 1))
                    continue;
                std::vector<int> candidate(a);
                candidate.push_back(std::max(a.back(), b.back()));
                candidate[candidate.size() - 2] = std::min(a.back(), b.back());

                // downward-closure prune
                bool all_subsets_frequent = true;
                std::vector<int> subset(candidate.begin(), candidate.end() - 1);
                for (std::size_t drop = 0; drop + 1 < candidate.size();
                     ++drop) {
                    subset[drop] = candidate[drop + 1];
                    std::vector<int> check(candidate);
                    check.erase(check.begin() + static_cast<long>(drop));
                    if (!previous.count(check)) {
                        all_subsets_frequent = false;
                        break;
                    }
                }
                if (all_subsets_frequent)
                    candidates.push_back(std::move(candidate));
            }
        }
        if (candidates.empty()) break;

        std::vector<long> counts(candidates.size(), 0);
        for (const auto& t : space.transactions) {
            for (std::size_t c = 0; c < candidates.size(); ++c) {
                if (candidates[c].size() <= t.size() &&
                    contains_sorted(t, candidates[c]))
                    ++counts[c];
            }
        }

        std::vector<std::vector<int>> next;
        for (std::size_t c = 0; c < candidates.size(); ++c) {
            if (counts[c] >= min_count) {
                all.emplace(candidates[c], counts[c]);
                next.push_back(std::move(candidates[c]));
            }
        }
        if (level_sizes && !next.empty())
            level_sizes->push_back(static_cast<long>(next.size()));
        current = std::move(next);
    }
    return all;
}

AssociationRule make_rule(std::vector<std::string> antecedent,
                          std::vector<std::string> consequent, long p, long b,
                          long c, long n) {
    AssociationRule rule;
    rule.antecedent = std::move(antecedent);
    rule.consequent = std::move(consequent);
    rule.premise_count = p;
    rule.both_count = b;
    rule.consequent_count = c;
    rule.n = n;
    const double pd = static_cast<double>(p);
    const double bd = static_cast<double>(b);
    const double cd = static_cast<double>(c);
    const double nd = static_cast<double>(n);
    rule.confidence = bd / pd;
    rule.lift = bd * nd / (pd * cd);
    rule.leverage = bd / nd - pd * cd / (nd * nd);
    rule.conviction = pd * (nd - cd) / (nd * (pd - bd + 1.0));
    return rule;
}

bool rule_order(const AssociationRule& a, const AssociationRule& b) {
    if (a.confidence != b.confidence) return a.confidence > b.confidence;
    if (a.both_count != b.both_count) return a.both_count > b.both_count;
    if (a.antecedent != b.antecedent) return a.antecedent < b.antecedent;
    return a.consequent < b.consequent;
}

std::vector<AssociationRule> rules_from_id_counts(const IdItemsetCounts& counts,
                                                  const LabelSpace& space,
                                                  double min_conf, long n) {
    std::vector<AssociationRule> rules;
    for (const auto& [itemset, both] : counts) {
        const std::size_t size = itemset.size();
        if (size < 2) continue;
        // every nonempty proper subset, as the consequent
        const unsigned full = (1u << size) - 1u;
        for (unsigned mask = 1; mask < full; ++mask) {
            std::vector<int> antecedent, consequent;
            for (std::size_t bit = 0; bit < size; ++bit) {
                if (mask & (1u << bit))
                    consequent.push_back(itemset[bit]);
                else
                    antecedent.push_back(itemset[bit]);
            }
            auto premise_it = counts.find(antecedent);
            auto consequent_it = counts.find(consequent);
            if (premise_it == counts.end() || consequent_it == counts.end())
                throw std::logic_error(
                    "itemset counts are not downward closed");
            const long p = premise_it->second;
            if (static_cast<double>(both) <
                min_conf * static_cast<double>(p))
                continue;
            rules.push_back(make_rule(space.to_labels(antecedent),
                                      space.to_labels(consequent), p, both,
                                      consequent_it->second, n));
        }
    }
    std::sort(rules.begin(), rules.end(), rule_order);
    return rules;
}

}  // namespace

ItemsetCounts frequent_itemsets(const std::vector<Transaction>& transactions,
                                long min_count) {
    if (min_count < 1) throw std::invalid_argument("min_count must be >= 1");
    LabelSpace space(transactions);
    auto by_id = mine_frequent(space, min_count, nullptr);
    ItemsetCounts out;
    for (const auto& [ids, count] : by_id)
        out.emplace(space.to_labels(ids), count);
    return out;
}

std::vector<AssociationRule> rules_from_itemsets(const ItemsetCounts& counts,
                                                 double min_conf, long n) {
    std::vector<AssociationRule> rules;
    for (const auto& [itemset, both] : counts) {
        const std::size_t size = itemset.size();
        if (size < 2) continue;
        const unsigned full = (1u << size) - 1u;
        for (unsigned mask = 1; mask < full; ++mask) {
            std::vector<std::string> antecedent, consequent;
            for (std::size_t bit = 0; bit < size; ++bit) {
                if (mask & (1u << bit))
                    consequent.push_back(itemset[bit]);
                else
                    antecedent.push_back(itemset[bit]);
            }
            auto premise_it = counts.find(antecedent);
            auto consequent_it = counts.find(consequent);
            if (premise_it == counts.end() || consequent_it == counts.end())
                throw std::logic_error(
                    "itemset counts are not downward closed");
            const long p = premise_it->second;
            if (static_cast<double>(both) < min_conf * static_cast<double>(p))
                continue;
            rules.push_back(make_rule(std::move(antecedent),
                                      std::move(consequent), p, both,
                                      consequent_it->second, n));
        }
    }
    std::sort(rules.begin(), rules.end(), rule_order);
    return rules;
}

MiningResult mine(const std::vector<Transaction>& transactions,
                  const MiningParams& params) {
    params.validate();
    if (transactions.empty())
        throw std::invalid_argument("no transactions to mine");

    const long n = static_cast<long>(transactions.size());
    LabelSpace space(transactions);

    MiningResult result;
    double support = params.upper_bound_support;
    while (true) {
        support = std::max(support - params.delta,
                           params.lower_bound_support);
        const long min_count = support_count(support, n);

        std::vector<long> level_sizes;
        auto counts = mine_frequent(space, min_count, &level_sizes);
        auto rules = rules_from_id_counts(counts, space, params.min_metric, n);

        ++result.cycles;
        result.final_min_support = support;
        result.level_sizes = std::move(level_sizes);
        result.rules = std::move(rules);

        const bool quota_met =
            static_cast<long>(result.rules.size()) >= params.num_rules;
        const bool at_floor = support <= params.lower_bound_support;
        if (quota_met || at_floor) break;
    }
    if (static_cast<long>(result.rules.size()) > params.num_rules)
        result.rules.resize(static_cast<std::size_t>(params.num_rules));
    return result;
}

std::string format_metric(double value) {
    const double scaled = value * 100.0;
    long long rounded;
    if (scaled >= 0)
        rounded = static_cast<long long>(scaled + 0.5);
    else
        rounded = -static_cast<long long>(-scaled + 0.5);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%lld", rounded < 0 ? -rounded : rounded);
    std::string digits = buf;
    while (digits.size() < 3) digits.insert(digits.begin(), '0');
    std::string out = digits.substr(0, digits.size() - 2) + "." +
                      digits.substr(digits.size() - 2);
    while (out.back() == '0') out.pop_back();
    if (out.back() == '.') out.pop_back();
    if (rounded < 0) out.insert(out.begin(), '-');
    return out;
}

std::string format_rule_metrics(const AssociationRule& rule) {
    std::ostringstream os;
    os << "conf:(" << format_metric(rule.confidence) << ")"
       << " lift:(" << format_metric(rule.lift) << ")"
       << " lev:(" << format_metric(rule.leverage) << ")"
       << " [" << rule.leverage_instances() << "]"
       << " conv:(" << format_metric(rule.conviction) << ")";
    return os.str();
}

namespace {

std::string format_flag(double value) {
    std::string s = format_metric(value);
    if (s.find('.') == std::string::npos) s += ".0";
    return s;
}

std::string format_labels(const std::vector<std::string>& labels) {
    std::string out;
    for (const auto& label : labels) {
        if (!out.empty()) out += ' ';
        out += label;
        out += "=t";
    }
    return out;
}

}  // namespace

std::string format_run_report(const MiningResult& result,
                              const MiningParams& params, long n,
                              long n_attributes) {
    std::ostringstream os;
    os << "==== Run information ====\n\n";
    os << "Scheme:       Apriori -N " << params.num_rules << " -T 0 -C "
       << format_flag(params.min_metric) << " -D " << format_flag(params.delta)
       << " -U " << format_flag(params.upper_bound_support) << " -M "
       << format_flag(params.lower_bound_support) << "\n";
    os << "Instances:    " << n << "\n";
    os << "Attributes:   " << n_attributes << "\n\n";
    os << "==== Associator model ====\n\n";
    os << "Apriori\n=======\n\n";
    os << "Minimum support: " << format_metric(result.final_min_support)
       << " (" << support_count(result.final_min_support, n)
       << " instances)\n";
    os << "Minimum metric <confidence>: " << format_metric(params.min_metric)
       << "\n";
    os << "Number of cycles performed: " << result.cycles << "\n\n";
    os << "Generated sets of large itemsets:\n\n";
    for (std::size_t size = 0; size < result.level_sizes.size(); ++size) {
        os << "Size of set of large itemsets L(" << size + 1
           << "): " << result.level_sizes[size] << "\n";
    }
    os << "\nBest rules found:\n\n";
    const int width =
        static_cast<int>(std::to_string(result.rules.size()).size());
    for (std::size_t i = 0; i < result.rules.size(); ++i) {
        const auto& rule = result.rules[i];
        char idx[16];
        std::snprintf(idx, sizeof(idx), "%*zu", width, i + 1);
        os << idx << ". " << format_labels(rule.antecedent) << " "
           << rule.premise_count << " ==> " << format_labels(rule.consequent)
           << " " << rule.both_count << "    <conf:("
           << format_metric(rule.confidence) << ")> lift:("
           << format_metric(rule.lift) << ") lev:("
           << format_metric(rule.leverage) << ") ["
           << rule.leverage_instances() << "] conv:("
           << format_metric(rule.conviction) << ")\n";
    }
    return os.str();
}

std::string mining_result_to_json(const MiningResult& result, long n,
                                  long n_attributes) {
    nlohmann::ordered_json doc;
    doc["instances"] = n;
    doc["attributes"] = n_attributes;
    doc["cycles"] = result.cycles;
    doc["final_min_support"] = result.final_min_support;
    doc["level_sizes"] = result.level_sizes;
    doc["rules"] = nlohmann::ordered_json::array();
    for (const auto& rule : result.rules) {
        nlohmann::ordered_json r;
        r["antecedent"] = rule.antecedent;
        r["consequent"] = rule.consequent;
        r["premise_count"] = rule.premise_count;
        r["both_count"] = rule.both_count;
        r["consequent_count"] = rule.consequent_count;
        r["n"] = rule.n;
        r["confidence"] = rule.confidence;
        r["lift"] = rule.lift;
        r["leverage"] = rule.leverage;
        r["conviction"] = rule.conviction;
        doc["rules"].push_back(std::move(r));
    }
    return doc.dump(2) + "\n";
}

}  // namespace circmine
