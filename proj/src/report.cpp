#include "skewform/report.hpp"

#include "skewform/hash.hpp"
#include "skewform/oracle.hpp"

#include <sstream>

namespace skewform {

nlohmann::ordered_json RunConfig::to_json() const {
    nlohmann::ordered_json j;
    j["command"] = command;
    if (!check_set.empty())
        j["check_set"] = check_set;
    if (!family.empty())
        j["family"] = family;
    if (n > 0)
        j["n"] = n;
    if (m > 0)
        j["m"] = m;
    j["max_n"] = max_n;
    if (degree)
        j["degree"] = *degree;
    j["oracle"] = oracle;
    j["format"] = format;
    j["jobs"] = jobs;
    j["budget_entries"] = budgets.max_entries;
    j["budget_columns"] = budgets.max_columns;
    j["max_dim"] = budgets.max_dim;
    j["force"] = budgets.force;
    j["strict"] = strict;
    if (seed)
        j["seed"] = *seed;
    return j;
}

std::string RunConfig::hash() const {
    return fnv1a_hex(to_json().dump());
}

nlohmann::ordered_json check_to_json(const CheckReport& rep) {
    nlohmann::ordered_json j;
    j["name"] = rep.name;
    j["family"] = rep.family;
    j["n"] = rep.size_param;
    j["verdict"] = verdict_name(rep.verdict);
    if (rep.witness) {
        nlohmann::ordered_json w;
        w["subset"] = rep.witness->subset;
        w["entry"] = {rep.witness->entry_row, rep.witness->entry_col};
        w["value"] = rep.witness->value;
        j["witness"] = w;
    }
    if (!rep.detail.empty())
        j["detail"] = rep.detail;
    if (rep.advisory)
        j["advisory"] = true;
    j["timing_ms"] = rep.timing_ms;
    return j;
}

bool Report::any_failed() const {
    for (const auto& c : checks)
        if (!c.advisory && c.verdict == Verdict::fails)
            return true;
    return false;
}

bool Report::any_skipped() const {
    for (const auto& c : checks)
        if (c.verdict == Verdict::skipped_budget)
            return true;
    return false;
}

std::string Report::overall() const {
    return any_failed() ? "fails" : "holds";
}

nlohmann::ordered_json Report::to_json() const {
    nlohmann::ordered_json j;
    j["version"] = version;
    j["config"] = config.to_json();
    j["config_hash"] = config.hash();
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : checks)
        j["checks"].push_back(check_to_json(c));
    j["tables"] = nlohmann::ordered_json::array();
    for (const auto& t : tables) {
        nlohmann::ordered_json tj;
        tj["kind"] = t.kind;
        tj["family"] = t.family;
        tj["rows"] = nlohmann::ordered_json::array();
        for (const auto& [deg, count] : t.rows) {
            nlohmann::ordered_json row;
            row["degree"] = deg;
            row["count"] = count;
            if (t.oracle && t.oracle->count(deg))
                row["oracle"] = t.oracle->at(deg);
            tj["rows"].push_back(row);
        }
        nlohmann::ordered_json totalrow;
        totalrow["degree"] = "total";
        totalrow["count"] = t.total;
        totalrow["closed_form"] = t.closed_form_total;
        if (t.oracle) {
            std::size_t s = 0;
            for (const auto& [deg, v] : *t.oracle)
                s += v;
            totalrow["oracle"] = s;
        }
        tj["rows"].push_back(totalrow);
        if (!t.oracle_skipped.empty())
            tj["oracle_skipped"] = t.oracle_skipped;
        j["tables"].push_back(tj);
    }
    nlohmann::ordered_json skipped = nlohmann::ordered_json::array();
    for (const auto& c : checks)
        if (c.verdict == Verdict::skipped_budget)
            skipped.push_back(c.name);
    j["skipped"] = skipped;
    j["overall"] = overall();
    return j;
}

std::string Report::to_csv() const {
    std::ostringstream os;
    os << "kind,family,degree,count,closed_form,oracle\n";
    for (const auto& t : tables) {
        for (const auto& [deg, count] : t.rows) {
            os << t.kind << ',' << t.family << ',' << deg << ',' << count << ",,";
            if (t.oracle && t.oracle->count(deg))
                os << t.oracle->at(deg);
            os << '\n';
        }
        os << t.kind << ',' << t.family << ",total," << t.total << ',' << t.closed_form_total
           << ',';
        if (t.oracle) {
            std::size_t s = 0;
            for (const auto& [deg, v] : *t.oracle)
                s += v;
            os << s;
        }
        os << '\n';
    }
    return os.str();
}

std::string Report::to_text() const {
    std::ostringstream os;
    for (const auto& t : tables) {
        os << t.kind << " of " << t.family << " (closed form " << t.closed_form_total << ")\n";
        for (const auto& [deg, count] : t.rows) {
            os << "  degree " << deg << ": " << count;
            if (t.oracle && t.oracle->count(deg))
                os << "   oracle " << t.oracle->at(deg);
            os << '\n';
        }
        os << "  total: " << t.total;
        if (t.oracle) {
            std::size_t s = 0;
            for (const auto& [deg, v] : *t.oracle)
                s += v;
            os << "   oracle " << s;
        }
        os << '\n';
        if (!t.oracle_skipped.empty()) {
            os << "  oracle skipped degrees:";
            for (auto k : t.oracle_skipped)
                os << ' ' << k;
            os << '\n';
        }
    }
    for (const auto& c : checks) {
        os << (c.verdict == Verdict::holds ? "PASS " : c.verdict == Verdict::fails ? "FAIL " : "SKIP ")
           << c.name << " [" << c.family << " n=" << c.size_param << "]";
        if (c.advisory)
            os << " (advisory)";
        if (!c.detail.empty())
            os << "  " << c.detail;
        if (c.witness) {
            os << "  witness subset {";
            for (auto i : c.witness->subset)
                os << i << ' ';
            os << "} value " << c.witness->value;
        }
        os << '\n';
    }
    os << "overall: " << overall() << '\n';
    return os.str();
}

DimensionTable dims_table(const Family& family, CountKind kind, bool with_oracle,
                          const Budgets& budgets) {
    DimensionTable t;
    t.kind = kind == CountKind::invariants ? "invariants" : "covariants";
    t.family = family.name();
    t.rows = kind == CountKind::invariants ? invariant_dims(family) : covariant_dims(family);
    for (const auto& [deg, c] : t.rows)
        t.total += c;
    t.closed_form_total = closed_form(family, kind);
    if (with_oracle) {
        PairSpec pair = make_matrix_pair(
            family, kind == CountKind::invariants ? TargetKind::trivial : TargetKind::full_matrix,
            budgets);
        OracleTable ot = invariant_table(pair);
        t.oracle = ot.dims;
        t.oracle_skipped = ot.skipped;
    }
    return t;
}

}  // namespace skewform
