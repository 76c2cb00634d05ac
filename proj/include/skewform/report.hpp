#pragma once

#include "skewform/identities.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace skewform {

struct RunConfig {
    std::string command;
    std::string check_set;  // verify's positional selector
    std::string family;     // empty = all applicable
    std::size_t n = 0;      // half-size parameter (0 = unset)
    std::size_t m = 0;      // ambient size (0 = unset)
    std::size_t max_n = 2;
    std::optional<std::size_t> degree;
    bool oracle = false;
    std::string format = "text";  // text | json | csv
    int jobs = 0;
    Budgets budgets;
    bool strict = false;
    std::optional<unsigned> seed;
    std::string out_path;

    // Canonical echo; its dump is what gets hashed, so timings and
    // anything run-dependent stay out of it.
    nlohmann::ordered_json to_json() const;
    std::string hash() const;
};

struct DimensionTable {
    std::string kind;  // "invariants" | "covariants"
    std::string family;
    std::map<std::size_t, std::size_t> rows;  // degree -> count
    std::size_t total = 0;
    std::size_t closed_form_total = 0;
    std::optional<std::map<std::size_t, std::size_t>> oracle;  // degree -> kernel dim
    std::vector<std::size_t> oracle_skipped;
};

struct Report {
    std::string version = "0.1.0";
    RunConfig config;
    std::vector<CheckReport> checks;
    std::vector<DimensionTable> tables;

    bool any_failed() const;
    bool any_skipped() const;
    std::string overall() const;  // holds iff every non-skipped check holds

    nlohmann::ordered_json to_json() const;
    std::string to_csv() const;
    std::string to_text() const;
};

nlohmann::ordered_json check_to_json(const CheckReport& rep);

// Fills the diagram-side tables (and the oracle columns on request).
DimensionTable dims_table(const Family& family, CountKind kind, bool with_oracle,
                          const Budgets& budgets);

}  // namespace skewform
