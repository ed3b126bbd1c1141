// Test-only brute-force oracles, independent of the mining implementation.
#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "circmine/apriori.hpp"

namespace oracle {

struct BruteRule {
    std::vector<std::string> antecedent;
    std::vector<std::string> consequent;
    long premise = 0;
    long both = 0;
    long consequent_count = 0;
    double confidence = 0;
    double lift = 0;
    double leverage = 0;
    double conviction = 0;
};

// Counts every one of the 2^L - 1 label subsets by scanning all baskets.
inline std::map<std::vector<std::string>, long> all_subset_counts(
    const std::vector<circmine::Transaction>& baskets) {
    std::set<std::string> distinct;
    for (const auto& b : baskets) distinct.insert(b.begin(), b.end());
    const std::vector<std::string> labels(distinct.begin(), distinct.end());

    std::map<std::vector<std::string>, long> counts;
    const std::size_t total = 1u << labels.size();
    for (std::size_t mask = 1; mask < total; ++mask) {
        std::vector<std::string> subset;
        for (std::size_t bit = 0; bit < labels.size(); ++bit)
            if (mask & (1u << bit)) subset.push_back(labels[bit]);
        long count = 0;
        for (const auto& basket : baskets) {
            bool contained = true;
            for (const auto& label : subset) {
                if (!basket.count(label)) {
                    contained = false;
                    break;
                }
            }
            if (contained) ++count;
        }
        counts.emplace(std::move(subset), count);
    }
    return counts;
}

inline std::map<std::vector<std::string>, long> frequent_by_enumeration(
    const std::vector<circmine::Transaction>& baskets, long min_count) {
    std::map<std::vector<std::string>, long> out;
    for (const auto& [subset, count] : all_subset_counts(baskets))
        if (count >= min_count) out.emplace(subset, count);
    return out;
}

// Same split enumeration and the same ordering contract as the miner, built
// directly from exhaustive counts.
inline std::vector<BruteRule> rules_by_enumeration(
    const std::vector<circmine::Transaction>& baskets, long min_count,
    double min_conf) {
    const auto counts = all_subset_counts(baskets);
    const long n = static_cast<long>(baskets.size());

    std::vector<BruteRule> rules;
    for (const auto& [itemset, both] : counts) {
        if (both < min_count || itemset.size() < 2) continue;
        const unsigned full = (1u << itemset.size()) - 1u;
        for (unsigned mask = 1; mask < full; ++mask) {
            BruteRule rule;
            for (std::size_t bit = 0; bit < itemset.size(); ++bit) {
                if (mask & (1u << bit))
                    rule.consequent.push_back(itemset[bit]);
                else
                    rule.antecedent.push_back(itemset[bit]);
            }
            rule.both = both;
            rule.premise = counts.at(rule.antecedent);
            rule.consequent_count = counts.at(rule.consequent);
            rule.confidence = double(rule.both) / double(rule.premise);
            if (rule.confidence < min_conf) continue;
            rule.lift = double(rule.both) * double(n) /
                        (double(rule.premise) * double(rule.consequent_count));
            rule.leverage =
                double(rule.both) / double(n) -
                double(rule.premise) * double(rule.consequent_count) /
                    (double(n) * double(n));
            rule.conviction =
                double(rule.premise) * (double(n) - double(rule.consequent_count)) /
                (double(n) * (double(rule.premise) - double(rule.both) + 1.0));
            rules.push_back(std::move(rule));
        }
    }
    std::sort(rules.begin(), rules.end(),
              [](const BruteRule& a, const BruteRule& b) {
                  if (a.confidence != b.confidence)
                      return a.confidence > b.confidence;
                  if (a.both != b.both) return a.both > b.both;
                  if (a.antecedent != b.antecedent)
                      return a.antecedent < b.antecedent;
                  return a.consequent < b.consequent;
              });
    return rules;
}

// Decimal-string rounding oracle: round-half-up to 2 decimals without
// binary floating-point in the rounding step.
inline std::string round_percent_by_strings(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10f", value);
    std::string digits(buf);
    const auto dot = digits.find('.');
    std::string whole = digits.substr(0, dot);
    std::string frac = digits.substr(dot + 1);
    bool negative = false;
    if (whole.front() == '-') {
        negative = true;
        whole.erase(whole.begin());
    }
    std::string kept = frac.substr(0, 2);
    const bool round_up = frac[2] >= '5';
    long long cents = std::stoll(whole) * 100 + std::stoll(kept);
    if (round_up) ++cents;
    std::string out = std::to_string(cents / 100) + "." +
                      (cents % 100 < 10 ? "0" : "") +
                      std::to_string(cents % 100);
    return negative && cents != 0 ? "-" + out : out;
}

}  // namespace oracle
