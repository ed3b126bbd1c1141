#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "circmine/report.hpp"

namespace circmine {

using Value = std::variant<std::string, double>;

struct NominalAttribute {
    std::vector<std::string> categories;
};

struct NumericAttribute {
    double min = 0.0;
    double max = 1.0;
};

struct Attribute {
    std::string name;
    std::variant<NominalAttribute, NumericAttribute> kind;

    bool is_nominal() const {
        return std::holds_alternative<NominalAttribute>(kind);
    }
};

struct AttributeSchema {
    std::vector<Attribute> attributes;

    std::size_t arity() const { return attributes.size(); }
};

struct ClusterInstance {
    std::vector<Value> values;
};

/// Squared distance under the schema: numeric slots are min-max normalized
/// to [0,1] before subtracting; nominal slots contribute 0 on match, 1 on
/// mismatch. Throws std::invalid_argument for values outside the schema.
double distance(const ClusterInstance& instance,
                const std::vector<Value>& centroid,
                const AttributeSchema& schema);

struct ClusterModel {
    int k = 0;
    std::vector<std::vector<Value>> centroids;  // mode/mean per attribute
    std::vector<int> assignments;               // instance index -> cluster
    double sse = 0.0;
    long iterations = 0;
    std::uint64_t seed = 0;
    std::vector<double> sse_history;  // objective after each iteration
};

/// Lloyd iterations with mode centroids for nominal attributes. Seeding
/// samples k distinct start points from the content-sorted instance list,
/// so the partition does not depend on input order. Deterministic per seed.
ClusterModel kmeans(const std::vector<ClusterInstance>& instances,
                    const AttributeSchema& schema, int k, std::uint64_t seed,
                    long max_iterations = 100);

/// Runs kmeans once per seed and keeps the lowest-sse model (ties go to the
/// earliest seed in the list).
ClusterModel kmeans_multi_restart(const std::vector<ClusterInstance>& instances,
                                  const AttributeSchema& schema, int k,
                                  const std::vector<std::uint64_t>& seeds,
                                  long max_iterations = 100);

/// Centroid table with one column per cluster plus a Full Data column,
/// and a per-cluster instance count row.
ReportTable summarize_clusters(const ClusterModel& model,
                               const std::vector<ClusterInstance>& instances,
                               const AttributeSchema& schema);

/// JSON export: schema, centroids, cluster sizes, sse, iterations, seed.
std::string cluster_model_to_json(const ClusterModel& model,
                                  const AttributeSchema& schema);

}  // namespace circmine
