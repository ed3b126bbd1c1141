#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

namespace circmine {

/// One mining transaction: a set of attribute labels.
using Transaction = std::set<std::string>;

struct MiningParams {
    long num_rules = 50;                // -N
    double min_metric = 0.9;            // -C, confidence threshold
    double delta = 0.05;                // -D, per-cycle support decrement
    double upper_bound_support = 1.0;   // -U
    double lower_bound_support = 0.01;  // -M

    void validate() const;  // throws std::invalid_argument
};

struct AssociationRule {
    std::vector<std::string> antecedent;  // sorted, nonempty
    std::vector<std::string> consequent;  // sorted, nonempty, disjoint
    long premise_count = 0;     // transactions containing the antecedent
    long both_count = 0;        // transactions containing both sides
    long consequent_count = 0;  // transactions containing the consequent
    long n = 0;                 // total transactions
    double confidence = 0.0;    // b/p
    double lift = 0.0;          // b*n/(p*c)
    double leverage = 0.0;      // b/n - p*c/n^2
    double conviction = 0.0;    // p*(n-c)/(n*(p-b+1))

    /// Extra co-occurrences beyond independence: floor(b - p*c/n).
    long leverage_instances() const;
};

/// Itemsets keyed by their sorted label list.
using ItemsetCounts = std::map<std::vector<std::string>, long>;

/// Number of transactions a fractional support stands for: the nearest
/// integer (half rounds up), never below 1.
long support_count(double min_support, long n);

/// Level-wise frequent-itemset mining: exactly the itemsets contained in at
/// least min_count transactions, with exact counts. Candidates of size k are
/// joined from frequent (k-1)-sets and pruned by downward closure.
ItemsetCounts frequent_itemsets(const std::vector<Transaction>& transactions,
                                long min_count);

/// Every antecedent => consequent split of every frequent itemset of size
/// >= 2 whose confidence reaches min_conf, metrics filled in. The counts
/// map must be downward closed. Rules come back sorted by confidence desc,
/// both_count desc, then antecedent/consequent label order.
std::vector<AssociationRule> rules_from_itemsets(const ItemsetCounts& counts,
                                                 double min_conf, long n);

struct MiningResult {
    std::vector<AssociationRule> rules;  // sorted, truncated to num_rules
    long cycles = 0;
    double final_min_support = 0.0;
    std::vector<long> level_sizes;  // itemset counts per size, last cycle
};

/// The iterative support-reduction loop: each cycle lowers the support by
/// delta (the last one clamps to the lower bound) and mines at that level,
/// stopping as soon as num_rules rules meet the confidence threshold or the
/// lower bound is reached.
MiningResult mine(const std::vector<Transaction>& transactions,
                  const MiningParams& params);

/// Rounded to 2 decimals with trailing zeros trimmed: 2.604 -> "2.6",
/// 0.985 -> "0.99", 1.0 -> "1".
std::string format_metric(double value);

/// "conf:(0.99) lift:(2.67) lev:(0.01) [41] conv:(21.15)"
std::string format_rule_metrics(const AssociationRule& rule);

/// The full run-information text report: parameter echo, instance and
/// attribute counts, support with its instance count, cycles, level sizes,
/// and the numbered best-rules list.
std::string format_run_report(const MiningResult& result,
                              const MiningParams& params, long n,
                              long n_attributes);

/// Rule list with unrounded metrics as a JSON document.
std::string mining_result_to_json(const MiningResult& result, long n,
                                  long n_attributes);

}  // namespace circmine
