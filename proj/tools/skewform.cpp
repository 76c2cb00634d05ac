#include "skewform/hash.hpp"
#include "skewform/oracle.hpp"
#include "skewform/report.hpp"

#include <CLI11.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace skewform {
namespace {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Family resolve_family(const RunConfig& cfg, bool structure = true) {
    if (cfg.family.empty())
        throw ConfigError("--family is required for this command");
    std::size_t m = cfg.m;
    if (cfg.family == "full") {
        if (m == 0)
            m = cfg.n;
        if (m == 0)
            throw ConfigError("full family needs --m");
    } else if (cfg.family == "sympl-plus" || cfg.family == "sympl-minus") {
        if (m == 0) {
            if (cfg.n == 0)
                throw ConfigError("symplectic family needs --n or --m");
            m = 2 * cfg.n;
        }
        if (m % 2 != 0)
            throw ConfigError("symplectic family needs even ambient size");
    } else if (cfg.family == "orth-plus" || cfg.family == "orth-minus") {
        if (m == 0) {
            if (cfg.n == 0)
                throw ConfigError("orthogonal family needs --n or --m");
            m = 2 * cfg.n + 1;
        }
        if (structure && m % 2 == 0)
            throw ConfigError("orthogonal structure checks need odd ambient size");
    } else {
        throw ConfigError("unknown family '" + cfg.family + "'");
    }
    return family_from_name(cfg.family, m);
}

// Deterministic advisory pre-check: the relation image evaluated at a
// few pseudo-random tuples. Never decides anything.
CheckReport advisory_relation_probe(Workspace& ws, unsigned seed) {
    CheckReport rep;
    rep.name = "relation-fuzz-probe";
    rep.family = ws.family().name();
    rep.size_param = ws.size_param();
    rep.advisory = true;
    rep.config_hash = fnv1a_hex("probe|" + std::to_string(seed));
    try {
        if (ws.family().kind == FamilyKind::orth_plus) {
            rep.detail = "printed relation inhomogeneous; probe skipped";
            return rep;
        }
        AltForm image = apply_pi(ws, printed_relation(ws));
        std::uint64_t state = seed;
        auto next = [&]() {
            state = state * 6364136223846793005ull + 1442695040888963407ull;
            return static_cast<long>((state >> 33) % 7) - 3;
        };
        bool ok = true;
        for (int trial = 0; trial < 3 && ok; ++trial) {
            EvalTuple tuple;
            for (std::size_t i = 0; i < image.degree(); ++i) {
                std::vector<Rational> v(ws.space()->dim());
                for (auto& x : v)
                    x = Rational(next());
                tuple.vectors.push_back(std::move(v));
            }
            ok = evaluate(image, tuple).is_zero();
        }
        rep.verdict = ok ? Verdict::holds : Verdict::fails;
        rep.detail = "3 random tuples, seed " + std::to_string(seed);
    } catch (const BudgetExceeded& e) {
        rep.verdict = Verdict::skipped_budget;
        rep.detail = e.what();
    }
    return rep;
}

std::size_t power_vanishing_degree(const Family& f) {
    const std::size_t n = f.half();
    switch (f.kind) {
        case FamilyKind::full: return 2 * f.m;
        case FamilyKind::sympl_plus: return 4 * n - 2;
        case FamilyKind::sympl_minus: return 4 * n;
        case FamilyKind::orth_minus: return 4 * n;
        case FamilyKind::orth_plus: return 4 * n + 2;
        default: throw ConfigError("no vanishing degree for " + f.name());
    }
}

void run_family_suite(Report& rep, const Family& f, const Budgets& budgets) {
    std::optional<Workspace> made;
    try {
        made.emplace(f, budgets);
    } catch (const std::invalid_argument& e) {
        // Families over the dimension guardrail skip as a block; the
        // rest of a composite run still proceeds.
        CheckReport c;
        c.name = "family-suite";
        c.family = f.name();
        c.size_param = f.kind == FamilyKind::full ? f.m : f.half();
        c.verdict = Verdict::skipped_budget;
        c.detail = e.what();
        rep.checks.push_back(c);
        return;
    }
    Workspace& ws = *made;
    // Even traces vanish everywhere; the odd vanishing degree depends on
    // the family (4k+3 on plus, 4k+1 on minus, none on full where all
    // odd traces are generators).
    const std::vector<std::size_t> trace_degrees =
        f.kind == FamilyKind::full ? std::vector<std::size_t>{2, 4, 6}
        : f.is_plus()              ? std::vector<std::size_t>{2, 3}
                                   : std::vector<std::size_t>{2, 5};
    for (auto deg : trace_degrees)
        rep.checks.push_back(check_trace_vanishing(ws, deg));
    rep.checks.push_back(check_vanishing_power(ws, power_vanishing_degree(f)));
    rep.checks.push_back(verify_relation(ws));
    rep.checks.push_back(derived_consequence_checks(ws));
    rep.checks.push_back(certify_exterior_invariants(ws));
    rep.checks.push_back(certify_basis(ws));
    if (f.kind != FamilyKind::full)
        rep.checks.push_back(check_basis_parity(ws));
}

void cmd_dims(const RunConfig& cfg, Report& rep) {
    Family f = resolve_family(cfg);
    rep.tables.push_back(dims_table(f, CountKind::invariants, cfg.oracle, cfg.budgets));
    rep.tables.push_back(dims_table(f, CountKind::covariants, cfg.oracle, cfg.budgets));
    for (const auto& t : rep.tables) {
        CheckReport c;
        c.name = "dims-" + t.kind + "-match-closed-form";
        c.family = t.family;
        c.size_param = f.half();
        c.verdict = t.total == t.closed_form_total ? Verdict::holds : Verdict::fails;
        if (t.oracle) {
            for (const auto& [deg, count] : *t.oracle) {
                std::size_t want = t.rows.count(deg) ? t.rows.at(deg) : 0;
                if (count != want)
                    c.verdict = Verdict::fails;
            }
            for (const auto& [deg, count] : t.rows)
                if (count != 0 && t.oracle->count(deg) == 0 &&
                    std::find(t.oracle_skipped.begin(), t.oracle_skipped.end(), deg) ==
                        t.oracle_skipped.end())
                    c.verdict = Verdict::fails;
        }
        c.config_hash = cfg.hash();
        rep.checks.push_back(c);
    }
}

void cmd_verify(const RunConfig& cfg, Report& rep) {
    const std::string& set = cfg.check_set;
    if (set == "all") {
        for (std::size_t mm = 2; mm <= cfg.max_n + 1; ++mm)
            run_family_suite(rep, {FamilyKind::full, mm}, cfg.budgets);
        for (std::size_t nn = 1; nn <= cfg.max_n; ++nn) {
            run_family_suite(rep, {FamilyKind::sympl_plus, 2 * nn}, cfg.budgets);
            run_family_suite(rep, {FamilyKind::sympl_minus, 2 * nn}, cfg.budgets);
            run_family_suite(rep, {FamilyKind::orth_minus, 2 * nn + 1}, cfg.budgets);
            run_family_suite(rep, {FamilyKind::orth_plus, 2 * nn + 1}, cfg.budgets);
        }
        return;
    }
    if (set == "al") {
        const std::size_t m = cfg.m ? cfg.m : (cfg.n ? cfg.n : 2);
        Workspace ws({FamilyKind::full, m}, cfg.budgets);
        rep.checks.push_back(check_vanishing_power(ws, 2 * m));
        return;
    }
    if (set == "rowen") {
        if (cfg.n == 0 && cfg.m == 0)
            throw ConfigError("rowen needs --n");
        const std::size_t n = cfg.n ? cfg.n : cfg.m / 2;
        Workspace ws({FamilyKind::sympl_plus, 2 * n}, cfg.budgets);
        rep.checks.push_back(check_vanishing_power(ws, 4 * n - 2));
        return;
    }
    if (set == "hutchinson") {
        if (cfg.n == 0 && cfg.m == 0)
            throw ConfigError("hutchinson needs --n");
        const std::size_t n = cfg.n ? cfg.n : (cfg.m - 1) / 2;
        Workspace ws({FamilyKind::orth_minus, 2 * n + 1}, cfg.budgets);
        rep.checks.push_back(check_vanishing_power(ws, 4 * n));
        return;
    }
    Family f = resolve_family(cfg);
    Workspace ws(f, cfg.budgets);
    if (set == "power") {
        if (!cfg.degree)
            throw ConfigError("verify power needs --degree");
        rep.checks.push_back(check_vanishing_power(ws, *cfg.degree));
    } else if (set == "trace") {
        if (!cfg.degree)
            throw ConfigError("verify trace needs --degree");
        rep.checks.push_back(check_trace_vanishing(ws, *cfg.degree));
    } else if (set == "relation") {
        if (cfg.seed)
            rep.checks.push_back(advisory_relation_probe(ws, *cfg.seed));
        rep.checks.push_back(verify_relation(ws));
    } else if (set == "consequences") {
        rep.checks.push_back(derived_consequence_checks(ws));
    } else if (set == "oracle-eq") {
        rep.checks.push_back(check_power_oracle(ws, 4));
    } else if (set == "suite") {
        run_family_suite(rep, f, cfg.budgets);
    } else {
        throw ConfigError("unknown verify set '" + set + "'");
    }
}

void cmd_certify(const RunConfig& cfg, Report& rep) {
    Family f = resolve_family(cfg);
    Workspace ws(f, cfg.budgets);
    rep.checks.push_back(certify_exterior_invariants(ws));
    rep.checks.push_back(certify_basis(ws));
    if (f.kind != FamilyKind::full)
        rep.checks.push_back(check_basis_parity(ws));
}

void cmd_derive(const RunConfig& cfg, Report& rep) {
    Family f = resolve_family(cfg);
    Workspace ws(f, cfg.budgets);
    rep.checks.push_back(report_derive_relation(ws));
}

std::string coefficients_listing(const char* name, const AltForm& form) {
    std::ostringstream os;
    os << name << ":";
    for (const auto& [mask, coeff] : form.table()) {
        os << " {";
        for (auto i : mask_indices(mask))
            os << i << ' ';
        os << "}->[";
        for (std::size_t r = 0; r < coeff.rows(); ++r)
            for (std::size_t c = 0; c < coeff.cols(); ++c)
                if (!coeff.at(r, c).is_zero())
                    os << '(' << r << ',' << c << ')' << coeff.at(r, c).str() << ' ';
        os << "]";
    }
    return os.str();
}

void cmd_sphere(const RunConfig& cfg, Report& rep) {
    const std::size_t n = cfg.n ? cfg.n : 2;
    if (n < 2)
        throw ConfigError("sphere needs --n >= 2");
    Covariant4 cov = sphere_covariants(n, cfg.budgets);
    PairSpec adj = make_sphere_pair(n, TargetKind::k_adjoint, cfg.budgets);
    PairSpec vec = make_sphere_pair(n, TargetKind::p_space, cfg.budgets);

    auto covariant_check = [&](const char* name, const AltForm& form, const PairSpec& pair) {
        CheckReport c;
        c.name = name;
        c.family = "sphere";
        c.size_param = n;
        c.config_hash = cfg.hash();
        c.verdict = (!form.is_zero() && annihilated_by_all(pair, form)) ? Verdict::holds
                                                                        : Verdict::fails;
        c.detail = coefficients_listing(name, form);
        rep.checks.push_back(c);
    };
    covariant_check("sphere-omega1", cov.omega1, adj);
    covariant_check("sphere-omega2", cov.omega2, adj);
    covariant_check("sphere-theta1", cov.theta1, vec);
    covariant_check("sphere-theta2", cov.theta2, vec);

    auto span_check = [&](const char* name, const PairSpec& pair, std::size_t dega,
                          std::size_t degb) {
        OracleTable t = invariant_table(pair);
        std::size_t total = 0;
        for (auto& [deg, dim] : t.dims)
            total += dim;
        CheckReport c;
        c.name = name;
        c.family = "sphere";
        c.size_param = n;
        c.config_hash = cfg.hash();
        bool ok = total == 2 && t.dims.count(dega) && t.dims.at(dega) == 1 &&
                  t.dims.count(degb) && t.dims.at(degb) == 1 && t.skipped.empty();
        c.verdict = ok ? Verdict::holds : Verdict::fails;
        std::ostringstream os;
        os << "kernel dims:";
        for (auto& [deg, dim] : t.dims)
            if (dim)
                os << " k" << deg << ":" << dim;
        c.detail = os.str();
        rep.checks.push_back(c);
        return t.dims;
    };
    auto adim = span_check("sphere-adjoint-span", adj, cov.omega1.degree(), cov.omega2.degree());
    auto vdim = span_check("sphere-vector-span", vec, cov.theta1.degree(), cov.theta2.degree());

    DimensionTable ta;
    ta.kind = "covariants";
    ta.family = "sphere-adjoint(" + std::to_string(n) + ")";
    ta.rows = adim;
    for (auto& [deg, d] : adim)
        ta.total += d;
    ta.closed_form_total = 2;
    rep.tables.push_back(ta);
    DimensionTable tv;
    tv.kind = "covariants";
    tv.family = "sphere-vector(" + std::to_string(n) + ")";
    tv.rows = vdim;
    for (auto& [deg, d] : vdim)
        tv.total += d;
    tv.closed_form_total = 2;
    rep.tables.push_back(tv);
}

void cmd_report(const RunConfig& cfg, Report& rep) {
    for (std::size_t nn = 1; nn <= cfg.max_n; ++nn) {
        for (FamilyKind k : {FamilyKind::sympl_plus, FamilyKind::sympl_minus,
                             FamilyKind::orth_minus, FamilyKind::orth_plus}) {
            Family f{k, k == FamilyKind::sympl_plus || k == FamilyKind::sympl_minus
                            ? 2 * nn
                            : 2 * nn + 1};
            rep.tables.push_back(dims_table(f, CountKind::invariants, cfg.oracle, cfg.budgets));
            rep.tables.push_back(dims_table(f, CountKind::covariants, cfg.oracle, cfg.budgets));
        }
    }
    RunConfig sub = cfg;
    sub.check_set = "all";
    cmd_verify(sub, rep);
    for (std::size_t nn = 1; nn <= cfg.max_n; ++nn) {
        for (FamilyKind k : {FamilyKind::sympl_plus, FamilyKind::sympl_minus,
                             FamilyKind::orth_minus, FamilyKind::orth_plus}) {
            Family f{k, k == FamilyKind::sympl_plus || k == FamilyKind::sympl_minus
                            ? 2 * nn
                            : 2 * nn + 1};
            Workspace ws(f, cfg.budgets);
            rep.checks.push_back(report_derive_relation(ws));
        }
    }
    {
        Workspace ws({FamilyKind::full, 2}, cfg.budgets);
        rep.checks.push_back(report_derive_relation(ws));
    }
    RunConfig sphere_cfg = cfg;
    sphere_cfg.n = 2;
    cmd_sphere(sphere_cfg, rep);
}

int run(const RunConfig& cfg) {
#ifdef _OPENMP
    if (cfg.jobs > 0)
        omp_set_num_threads(cfg.jobs);
#endif
    Report rep;
    rep.config = cfg;
    try {
        if (cfg.command == "dims")
            cmd_dims(cfg, rep);
        else if (cfg.command == "verify")
            cmd_verify(cfg, rep);
        else if (cfg.command == "certify")
            cmd_certify(cfg, rep);
        else if (cfg.command == "derive-relation")
            cmd_derive(cfg, rep);
        else if (cfg.command == "sphere")
            cmd_sphere(cfg, rep);
        else if (cfg.command == "report")
            cmd_report(cfg, rep);
        else
            throw ConfigError("unknown command");
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    if (cfg.format == "json")
        std::cout << rep.to_json().dump(2) << '\n';
    else if (cfg.format == "csv")
        std::cout << rep.to_csv();
    else
        std::cout << rep.to_text();
    if (!cfg.out_path.empty()) {
        std::ofstream out(cfg.out_path);
        out << rep.to_json().dump(2) << '\n';
    }

    for (const auto& c : rep.checks)
        if (c.verdict == Verdict::fails && c.name == "derive-relation" &&
            c.detail == "inconsistent system")
            return 4;
    if (rep.any_failed())
        return 1;
    if (cfg.strict && rep.any_skipped())
        return 3;
    return 0;
}

}  // namespace
}  // namespace skewform

int main(int argc, char** argv) {
    using namespace skewform;
    CLI::App app{"skewform: exact invariant and covariant algebra of alternating forms on "
                 "classical matrix spaces"};
    app.require_subcommand(1);

    RunConfig cfg;
    if (const char* env = std::getenv("SKEWFORM_BUDGET_ENTRIES"))
        cfg.budgets.max_entries = std::strtoull(env, nullptr, 10);

    bool json = false, csv = false;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--family", cfg.family,
                        "family: full | sympl-plus | sympl-minus | orth-plus | orth-minus");
        sub->add_option("--n", cfg.n, "half-size parameter n");
        sub->add_option("--m", cfg.m, "ambient matrix size m");
        sub->add_option("--degree", cfg.degree, "degree for power/trace checks");
        sub->add_option("--max-n", cfg.max_n, "largest n for composite runs")->capture_default_str();
        sub->add_flag("--oracle", cfg.oracle, "add the Lie-kernel oracle column");
        sub->add_flag("--json", json, "emit the JSON report on stdout");
        sub->add_flag("--csv", csv, "emit dimension tables as CSV");
        sub->add_option("--jobs", cfg.jobs, "worker threads for the parallel kernels");
        sub->add_option("--budget-entries", cfg.budgets.max_entries, "form table entry budget")
            ->capture_default_str();
        sub->add_option("--budget-columns", cfg.budgets.max_columns, "oracle column budget")
            ->capture_default_str();
        sub->add_flag("--force", cfg.budgets.force, "lift the dimension guardrail");
        sub->add_flag("--strict", cfg.strict, "exit 3 if any check was budget-skipped");
        sub->add_option("--seed", cfg.seed, "advisory fuzz pre-check seed");
        sub->add_option("--out", cfg.out_path, "write the JSON report to this path");
    };

    add_common(app.add_subcommand("dims", "dimension tables with closed-form comparison"));
    auto* verify = app.add_subcommand("verify", "run an identity check set");
    verify->add_option("set", cfg.check_set,
                       "al | rowen | hutchinson | power | trace | relation | consequences | "
                       "oracle-eq | suite | all")
        ->required();
    add_common(verify);
    add_common(app.add_subcommand("certify", "exterior-algebra and free-basis certification"));
    add_common(app.add_subcommand("derive-relation", "solve for the relation ideal generator"));
    add_common(app.add_subcommand("sphere", "odd-sphere covariants"));
    add_common(app.add_subcommand("report", "full default suite, one combined report"));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }
    cfg.command = app.get_subcommands().front()->get_name();
    if (json)
        cfg.format = "json";
    else if (csv)
        cfg.format = "csv";

    try {
        return run(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
