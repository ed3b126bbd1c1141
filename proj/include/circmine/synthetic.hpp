#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "circmine/datamodel.hpp"

namespace circmine {

struct PlantedRule {
    std::vector<std::string> antecedent;  // subclass codes
    std::string consequent;               // subclass code
    double probability = 1.0;
};

struct SyntheticConfig {
    std::uint64_t seed = 1;
    std::size_t n_students = 500;
    std::size_t n_items = 2000;
    std::size_t n_checkouts = 4000;
    std::map<int, double> faculty_weights;  // empty -> built-in defaults
    double subject_affinity = 0.7;  // P(checkout stays in the borrower's
                                    // faculty-relevant LC class)
    std::vector<PlantedRule> planted_rules;

    void validate() const;  // throws std::invalid_argument
};

/// Faculty-size weights proportional to the per-faculty basket counts the
/// pipeline is tuned around; they sum to 1.
std::map<int, double> default_faculty_weights();

/// faculty_id -> the LC class its members gravitate to.
const std::map<int, char>& faculty_class_map();

/// All checkout dates fall in the three academic years ending here; item
/// catalog dates reach up to 20 years further back.
Date synthetic_reference_date();
Date synthetic_window_start();

/// Deterministic dataset for a seed: every circulation row references
/// generated barcodes, catalog dates populate every lifespan bucket, and
/// each planted rule's implication holds with at least its configured
/// probability over the generated baskets.
Dataset generate_synthetic(const SyntheticConfig& config);

}  // namespace circmine
