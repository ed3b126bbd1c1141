#include "circmine/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "circmine/rng.hpp"

namespace circmine {

namespace {

double numeric_span(const NumericAttribute& attr) {
    const double span = attr.max - attr.min;
    return span > 0.0 ? span : 1.0;
}

void check_value(const Value& value, const Attribute& attr) {
    if (const auto* nominal = std::get_if<NominalAttribute>(&attr.kind)) {
        const auto* s = std::get_if<std::string>(&value);
        if (!s)
            throw std::invalid_argument("expected nominal value for " +
                                        attr.name);
        if (std::find(nominal->categories.begin(), nominal->categories.end(),
                      *s) == nominal->categories.end())
            throw std::invalid_argument("value \"" + *s +
                                        "\" outside categories of " +
                                        attr.name);
    } else {
        const auto* x = std::get_if<double>(&value);
        if (!x)
            throw std::invalid_argument("expected numeric value for " +
                                        attr.name);
        const auto& numeric = std::get<NumericAttribute>(attr.kind);
        if (*x < numeric.min || *x > numeric.max)
            throw std::invalid_argument("value outside range of " + attr.name);
    }
}

void check_instance(const std::vector<Value>& values,
                    const AttributeSchema& schema) {
    if (values.size() != schema.arity())
        throw std::invalid_argument("instance arity mismatch");
    for (std::size_t a = 0; a < values.size(); ++a)
        check_value(values[a], schema.attributes[a]);
}

double value_distance(const Value& a, const Value& b, const Attribute& attr) {
    if (attr.is_nominal())
        return std::get<std::string>(a) == std::get<std::string>(b) ? 0.0
                                                                    : 1.0;
    const auto& numeric = std::get<NumericAttribute>(attr.kind);
    const double diff =
        (std::get<double>(a) - std::get<double>(b)) / numeric_span(numeric);
    return diff * diff;
}

bool value_less(const Value& a, const Value& b) {
    if (a.index() != b.index()) return a.index() < b.index();
    if (const auto* s = std::get_if<std::string>(&a))
        return *s < std::get<std::string>(b);
    return std::get<double>(a) < std::get<double>(b);
}

bool instance_less(const ClusterInstance& a, const ClusterInstance& b) {
    return std::lexicographical_compare(a.values.begin(), a.values.end(),
                                        b.values.begin(), b.values.end(),
                                        value_less);
}

/// Attribute-wise mean (numeric) / lexicographically-smallest mode (nominal)
/// of a group of instances.
std::vector<Value> centroid_of(const std::vector<const ClusterInstance*>& group,
                               const AttributeSchema& schema) {
    std::vector<Value> centroid;
    centroid.reserve(schema.arity());
    for (std::size_t a = 0; a < schema.arity(); ++a) {
        if (schema.attributes[a].is_nominal()) {
            std::map<std::string, long> tally;
            for (const auto* inst : group)
                ++tally[std::get<std::string>(inst->values[a])];
            const std::string* best = nullptr;
            long best_count = -1;
            for (const auto& [category, count] : tally) {
                if (count > best_count) {  // map order breaks ties low
                    best = &category;
                    best_count = count;
                }
            }
            centroid.emplace_back(*best);
        } else {
            double sum = 0.0;
            for (const auto* inst : group)
                sum += std::get<double>(inst->values[a]);
            centroid.emplace_back(sum / static_cast<double>(group.size()));
        }
    }
    return centroid;
}

}  // namespace

double distance(const ClusterInstance& instance,
                const std::vector<Value>& centroid,
                const AttributeSchema& schema) {
    check_instance(instance.values, schema);
    if (centroid.size() != schema.arity())
        throw std::invalid_argument("centroid arity mismatch");
    double total = 0.0;
    for (std::size_t a = 0; a < schema.arity(); ++a)
        total +=
            value_distance(instance.values[a], centroid[a],
                           schema.attributes[a]);
    return total;
}

ClusterModel kmeans(const std::vector<ClusterInstance>& instances,
                    const AttributeSchema& schema, int k, std::uint64_t seed,
                    long max_iterations) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (max_iterations < 1)
        throw std::invalid_argument("max_iterations must be >= 1");
    for (const auto& inst : instances) check_instance(inst.values, schema);

    // work on the content-sorted order so results are independent of input
    // order; original indices come along for the final assignment map
    std::vector<std::size_t> order(instances.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (instance_less(instances[a], instances[b])) return true;
        if (instance_less(instances[b], instances[a])) return false;
        return a < b;
    });
    std::vector<const ClusterInstance*> sorted;
    sorted.reserve(instances.size());
    for (std::size_t idx : order) sorted.push_back(&instances[idx]);

    long distinct = 0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (i == 0 || instance_less(*sorted[i - 1], *sorted[i])) ++distinct;
    }
    if (static_cast<long>(k) > distinct)
        throw std::invalid_argument("k exceeds distinct instance count");

    const std::size_t n = sorted.size();

    // seed-driven sampling of k starting points with distinct contents
    Rng rng(seed);
    std::vector<std::vector<Value>> centroids;
    std::vector<std::size_t> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    std::size_t remaining = n;
    while (centroids.size() < static_cast<std::size_t>(k)) {
        const std::size_t pick =
            static_cast<std::size_t>(rng.next_below(remaining));
        const auto& candidate = sorted[pool[pick]]->values;
        pool[pick] = pool[--remaining];
        const bool duplicate =
            std::any_of(centroids.begin(), centroids.end(),
                        [&](const std::vector<Value>& c) {
                            return c == candidate;
                        });
        if (!duplicate) centroids.push_back(candidate);
    }

    std::vector<int> assignment(n, -1);
    ClusterModel model;
    model.k = k;
    model.seed = seed;
    bool converged = false;

    for (long iter = 0; iter < max_iterations; ++iter) {
        bool changed = false;
        std::vector<double> nearest_dist(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            int best = 0;
            double best_dist = std::numeric_limits<double>::infinity();
            for (int c = 0; c < k; ++c) {
                double d = 0.0;
                for (std::size_t a = 0; a < schema.arity(); ++a)
                    d += value_distance(sorted[i]->values[a],
                                        centroids[static_cast<std::size_t>(c)][a],
                                        schema.attributes[a]);
                if (d < best_dist) {
                    best_dist = d;
                    best = c;
                }
            }
            nearest_dist[i] = best_dist;
            if (assignment[i] != best) {
                assignment[i] = best;
                changed = true;
            }
        }
        model.iterations = iter + 1;
        model.sse =
            std::accumulate(nearest_dist.begin(), nearest_dist.end(), 0.0);
        model.sse_history.push_back(model.sse);
        if (!changed) {
            converged = true;
            break;
        }

        std::vector<std::vector<const ClusterInstance*>> groups(
            static_cast<std::size_t>(k));
        for (std::size_t i = 0; i < n; ++i)
            groups[static_cast<std::size_t>(assignment[i])].push_back(
                sorted[i]);

        std::set<std::size_t> claimed;  // farthest instances already reused
        for (int c = 0; c < k; ++c) {
            auto& group = groups[static_cast<std::size_t>(c)];
            if (!group.empty()) {
                centroids[static_cast<std::size_t>(c)] =
                    centroid_of(group, schema);
                continue;
            }
            // empty-cluster repair: restart on the instance farthest from
            // its current centroid, keeping k constant
            std::size_t farthest = 0;
            double far_dist = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (claimed.count(i)) continue;
                if (nearest_dist[i] > far_dist) {
                    far_dist = nearest_dist[i];
                    farthest = i;
                }
            }
            claimed.insert(farthest);
            centroids[static_cast<std::size_t>(c)] = sorted[farthest]->values;
        }
    }

    // when the iteration cap cut the loop after a centroid update, re-anchor
    // the objective to the final centroids
    if (!converged) {
        double sse = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const auto& centroid =
                centroids[static_cast<std::size_t>(assignment[i])];
            for (std::size_t a = 0; a < schema.arity(); ++a)
                sse += value_distance(sorted[i]->values[a], centroid[a],
                                      schema.attributes[a]);
        }
        model.sse = sse;
        model.sse_history.push_back(sse);
    }

    model.centroids = std::move(centroids);
    model.assignments.assign(instances.size(), -1);
    for (std::size_t pos = 0; pos < order.size(); ++pos)
        model.assignments[order[pos]] = assignment[pos];
    return model;
}

ClusterModel kmeans_multi_restart(const std::vector<ClusterInstance>& instances,
                                  const AttributeSchema& schema, int k,
                                  const std::vector<std::uint64_t>& seeds,
                                  long max_iterations) {
    if (seeds.empty()) throw std::invalid_argument("no seeds given");
    ClusterModel best;
    bool first = true;
    for (std::uint64_t seed : seeds) {
        ClusterModel model = kmeans(instances, schema, k, seed, max_iterations);
        if (first || model.sse < best.sse) {
            best = std::move(model);
            first = false;
        }
    }
    return best;
}

namespace {

std::string value_text(const Value& value) {
    if (const auto* s = std::get_if<std::string>(&value)) return *s;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", std::get<double>(value));
    std::string out = buf;
    while (out.back() == '0') out.pop_back();
    if (out.back() == '.') out.pop_back();
    return out;
}

}  // namespace

ReportTable summarize_clusters(const ClusterModel& model,
                               const std::vector<ClusterInstance>& instances,
                               const AttributeSchema& schema) {
    ReportTable table;
    table.caption = "Cluster centroids";
    table.columns.push_back("Attribute");
    table.columns.push_back("Full Data");
    for (int c = 0; c < model.k; ++c)
        table.columns.push_back("c_" + std::to_string(c + 1));

    std::vector<long long> sizes(static_cast<std::size_t>(model.k), 0);
    for (int a : model.assignments) ++sizes[static_cast<std::size_t>(a)];

    std::vector<ReportTable::Cell> count_row;
    count_row.emplace_back(std::string("Instances"));
    count_row.emplace_back(static_cast<long long>(instances.size()));
    for (long long size : sizes) count_row.emplace_back(size);
    table.rows.push_back(std::move(count_row));

    std::vector<const ClusterInstance*> everything;
    everything.reserve(instances.size());
    for (const auto& inst : instances) everything.push_back(&inst);
    const auto full_data = centroid_of(everything, schema);

    for (std::size_t a = 0; a < schema.arity(); ++a) {
        std::vector<ReportTable::Cell> row;
        row.emplace_back(schema.attributes[a].name);
        row.emplace_back(value_text(full_data[a]));
        for (int c = 0; c < model.k; ++c)
            row.emplace_back(
                value_text(model.centroids[static_cast<std::size_t>(c)][a]));
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::string cluster_model_to_json(const ClusterModel& model,
                                  const AttributeSchema& schema) {
    nlohmann::ordered_json doc;
    doc["k"] = model.k;
    doc["seed"] = model.seed;
    doc["iterations"] = model.iterations;
    doc["sse"] = model.sse;

    doc["schema"] = nlohmann::ordered_json::array();
    for (const auto& attr : schema.attributes) {
        nlohmann::ordered_json a;
        a["name"] = attr.name;
        if (const auto* nominal = std::get_if<NominalAttribute>(&attr.kind)) {
            a["kind"] = "nominal";
            a["categories"] = nominal->categories;
        } else {
            const auto& numeric = std::get<NumericAttribute>(attr.kind);
            a["kind"] = "numeric";
            a["min"] = numeric.min;
            a["max"] = numeric.max;
        }
        doc["schema"].push_back(std::move(a));
    }

    std::vector<long> sizes(static_cast<std::size_t>(model.k), 0);
    for (int a : model.assignments) ++sizes[static_cast<std::size_t>(a)];
    doc["cluster_sizes"] = sizes;

    doc["centroids"] = nlohmann::ordered_json::array();
    for (const auto& centroid : model.centroids) {
        nlohmann::ordered_json values = nlohmann::ordered_json::array();
        for (const auto& value : centroid) {
            if (const auto* s = std::get_if<std::string>(&value))
                values.push_back(*s);
            else
                values.push_back(std::get<double>(value));
        }
        doc["centroids"].push_back(std::move(values));
    }
    return doc.dump(2) + "\n";
}

}  // namespace circmine
