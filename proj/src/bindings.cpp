#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <stdexcept>

#include "circmine/apriori.hpp"
#include "circmine/cluster.hpp"
#include "circmine/commands.hpp"
#include "circmine/config.hpp"
#include "circmine/csv.hpp"
#include "circmine/lc_table.hpp"
#include "circmine/preprocess.hpp"
#include "circmine/report.hpp"
#include "circmine/synthetic.hpp"

namespace py = pybind11;
using namespace circmine;

namespace {

Date parse_date_arg(const std::string& iso) {
    auto d = Date::parse(iso);
    if (!d) throw std::invalid_argument("bad ISO date: " + iso);
    return *d;
}

MiningParams params_from_kwargs(long num_rules, double min_confidence,
                                double delta, double upper_support,
                                double lower_support) {
    MiningParams params;
    params.num_rules = num_rules;
    params.min_metric = min_confidence;
    params.delta = delta;
    params.upper_bound_support = upper_support;
    params.lower_bound_support = lower_support;
    params.validate();
    return params;
}

py::dict rule_to_dict(const AssociationRule& rule) {
    py::dict out;
    out["antecedent"] = rule.antecedent;
    out["consequent"] = rule.consequent;
    out["premise_count"] = rule.premise_count;
    out["both_count"] = rule.both_count;
    out["consequent_count"] = rule.consequent_count;
    out["n"] = rule.n;
    out["confidence"] = rule.confidence;
    out["lift"] = rule.lift;
    out["leverage"] = rule.leverage;
    out["conviction"] = rule.conviction;
    return out;
}

std::vector<Transaction> to_transactions(
    const std::vector<std::vector<std::string>>& baskets) {
    std::vector<Transaction> out;
    out.reserve(baskets.size());
    for (const auto& basket : baskets)
        out.emplace_back(basket.begin(), basket.end());
    return out;
}

SyntheticConfig synthetic_from_args(
    std::uint64_t seed, std::size_t students, std::size_t items,
    std::size_t checkouts, double subject_affinity,
    const std::vector<std::tuple<std::vector<std::string>, std::string,
                                 double>>& planted_rules) {
    SyntheticConfig config;
    config.seed = seed;
    config.n_students = students;
    config.n_items = items;
    config.n_checkouts = checkouts;
    config.subject_affinity = subject_affinity;
    for (const auto& [antecedent, consequent, probability] : planted_rules)
        config.planted_rules.push_back(
            {antecedent, consequent, probability});
    config.validate();
    return config;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Library-circulation analytics: Apriori rule mining, nominal "
              "k-means, preprocessing, and synthetic data generation";

    m.def("support_count", &support_count, py::arg("min_support"),
          py::arg("n"),
          "Transactions a fractional support stands for (half rounds up, "
          "floored at 1)");

    m.def("grade_level",
          [](double cgpa) { return std::string(to_string(grade_level(cgpa))); },
          py::arg("cgpa"));

    m.def("parse_lc",
          [](const std::string& call_number) {
              auto code = parse_lc(call_number);
              return py::make_tuple(std::string(1, code.cls), code.subclass);
          },
          py::arg("call_number"),
          "(class letter, subclass) of an LC call number");

    m.def("lifespan_bucket",
          [](int years) {
              return std::string(to_string(lifespan_bucket(years)));
          },
          py::arg("years"));

    m.def("academic_year",
          [](const std::string& iso) {
              return academic_year(parse_date_arg(iso));
          },
          py::arg("date"));

    m.def("lc_table", [] {
        py::dict out;
        for (const auto& rec : builtin_lc_table())
            out[py::str(rec.category_code)] = rec.description;
        return out;
    });

    m.def("frequent_itemsets",
          [](const std::vector<std::vector<std::string>>& baskets,
             long min_count) {
              auto counts = frequent_itemsets(to_transactions(baskets),
                                              min_count);
              std::vector<std::pair<std::vector<std::string>, long>> out(
                  counts.begin(), counts.end());
              return out;
          },
          py::arg("baskets"), py::arg("min_count"));

    m.def("mine",
          [](const std::vector<std::vector<std::string>>& baskets,
             long num_rules, double min_confidence, double delta,
             double upper_support, double lower_support, bool with_report) {
              const auto transactions = to_transactions(baskets);
              const auto params =
                  params_from_kwargs(num_rules, min_confidence, delta,
                                     upper_support, lower_support);
              const auto result = mine(transactions, params);

              std::set<std::string> attributes;
              for (const auto& t : transactions)
                  attributes.insert(t.begin(), t.end());

              py::dict out;
              out["cycles"] = result.cycles;
              out["final_min_support"] = result.final_min_support;
              out["level_sizes"] = result.level_sizes;
              py::list rules;
              for (const auto& rule : result.rules)
                  rules.append(rule_to_dict(rule));
              out["rules"] = rules;
              if (with_report)
                  out["report"] = format_run_report(
                      result, params, static_cast<long>(transactions.size()),
                      static_cast<long>(attributes.size()));
              return out;
          },
          py::arg("baskets"), py::arg("num_rules") = 50,
          py::arg("min_confidence") = 0.9, py::arg("delta") = 0.05,
          py::arg("upper_support") = 1.0, py::arg("lower_support") = 0.01,
          py::arg("with_report") = false,
          "Iterative-support-reduction Apriori over label baskets");

    m.def("kmeans_nominal",
          [](const std::vector<std::vector<std::string>>& instances, int k,
             const std::vector<std::uint64_t>& seeds, long max_iterations) {
              if (instances.empty())
                  throw std::invalid_argument("no instances");
              AttributeSchema schema;
              const std::size_t arity = instances.front().size();
              for (std::size_t a = 0; a < arity; ++a) {
                  std::set<std::string> categories;
                  for (const auto& inst : instances) {
                      if (inst.size() != arity)
                          throw std::invalid_argument(
                              "ragged instance list");
                      categories.insert(inst[a]);
                  }
                  schema.attributes.push_back(
                      {"a" + std::to_string(a),
                       NominalAttribute{{categories.begin(),
                                         categories.end()}}});
              }
              std::vector<ClusterInstance> converted;
              for (const auto& inst : instances) {
                  ClusterInstance c;
                  for (const auto& v : inst) c.values.emplace_back(v);
                  converted.push_back(std::move(c));
              }
              const auto model =
                  kmeans_multi_restart(converted, schema, k, seeds,
                                       max_iterations);
              py::dict out;
              out["k"] = model.k;
              out["sse"] = model.sse;
              out["iterations"] = model.iterations;
              out["seed"] = model.seed;
              out["assignments"] = model.assignments;
              py::list centroids;
              for (const auto& centroid : model.centroids) {
                  py::list values;
                  for (const auto& v : centroid)
                      values.append(std::get<std::string>(v));
                  centroids.append(values);
              }
              out["centroids"] = centroids;
              return out;
          },
          py::arg("instances"), py::arg("k"),
          py::arg("seeds") = std::vector<std::uint64_t>{1, 2, 3, 4, 5},
          py::arg("max_iterations") = 100,
          "Multi-restart k-means over all-nominal instances; categories are "
          "taken from the data");

    m.def("generate_csv",
          [](std::uint64_t seed, std::size_t students, std::size_t items,
             std::size_t checkouts, double subject_affinity,
             const std::vector<std::tuple<std::vector<std::string>,
                                          std::string, double>>& planted) {
              const auto data = generate_synthetic(synthetic_from_args(
                  seed, students, items, checkouts, subject_affinity,
                  planted));
              py::dict out;
              out["patrons"] = patrons_to_csv(data.patrons);
              out["items"] = items_to_csv(data.items);
              out["circulation"] = circulation_to_csv(data.circulation);
              out["students"] = students_to_csv(data.students);
              return out;
          },
          py::arg("seed") = 1, py::arg("students") = 500,
          py::arg("items") = 2000, py::arg("checkouts") = 4000,
          py::arg("subject_affinity") = 0.7,
          py::arg("planted_rules") =
              std::vector<std::tuple<std::vector<std::string>, std::string,
                                     double>>{},
          "Seeded synthetic dataset as the four CSV texts");

    m.attr("__version__") = "0.1.0";
}
