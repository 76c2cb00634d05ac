#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#ifndef SKEWFORM_BIN
#error "SKEWFORM_BIN must point at the CLI binary"
#endif
#ifndef GOLDEN_DIR
#error "GOLDEN_DIR must point at the golden file directory"
#endif

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string tmp = "cli_output.tmp";
    const std::string cmd = std::string(SKEWFORM_BIN) + " " + args + " > " + tmp + " 2>&1";
    int status = std::system(cmd.c_str());
    int code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
    std::ifstream in(tmp);
    std::stringstream ss;
    ss << in.rdbuf();
    return {code, ss.str()};
}

void zero_timings(nlohmann::json& j) {
    if (j.is_object()) {
        for (auto& [key, value] : j.items()) {
            if (key == "timing_ms")
                value = 0;
            else
                zero_timings(value);
        }
    } else if (j.is_array()) {
        for (auto& v : j)
            zero_timings(v);
    }
}

std::string normalized(const std::string& raw) {
    nlohmann::json j = nlohmann::json::parse(raw);
    zero_timings(j);
    return j.dump(2);
}

void compare_to_golden(const std::string& raw, const std::string& name) {
    const std::string path = std::string(GOLDEN_DIR) + "/" + name;
    const std::string got = normalized(raw);
    if (std::getenv("UPDATE_GOLDEN") != nullptr) {
        std::ofstream out(path);
        out << got << '\n';
        return;
    }
    std::ifstream in(path);
    REQUIRE_MESSAGE(in.good(), "missing golden file ", path);
    std::stringstream ss;
    ss << in.rdbuf();
    std::string want = ss.str();
    if (!want.empty() && want.back() == '\n')
        want.pop_back();
    CHECK_MESSAGE(got == want, "golden mismatch for ", name);
}

}  // namespace

TEST_CASE("dims: totals, closed forms, golden report") {
    RunResult r = run_cli("dims --family sympl-plus --n 2 --json");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["overall"] == "holds");
    bool saw_inv = false, saw_cov = false;
    for (const auto& t : j["tables"]) {
        for (const auto& row : t["rows"]) {
            if (row["degree"] == "total") {
                if (t["kind"] == "invariants") {
                    saw_inv = true;
                    CHECK(row["count"] == 4);
                    CHECK(row["closed_form"] == 4);
                } else {
                    saw_cov = true;
                    CHECK(row["count"] == 12);
                    CHECK(row["closed_form"] == 12);
                }
            }
        }
    }
    CHECK(saw_inv);
    CHECK(saw_cov);
    compare_to_golden(r.out, "dims_sympl_plus_2.json");
}

TEST_CASE("dims with the oracle column") {
    RunResult r = run_cli("dims --family orth-minus --m 5 --oracle --json");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    for (const auto& t : j["tables"])
        for (const auto& row : t["rows"]) {
            REQUIRE(row.contains("oracle"));
            if (row["degree"] == "total") {
                CHECK(row["count"] == row["oracle"]);
            } else {
                CHECK(row["count"] == row["oracle"]);
            }
        }
}

TEST_CASE("dims at n=1") {
    RunResult r = run_cli("dims --family sympl-minus --n 1 --csv");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("invariants,sympl-minus,total,2,2") != std::string::npos);
    CHECK(r.out.find("covariants,sympl-minus,total,4,4") != std::string::npos);
}

TEST_CASE("verify: named identity sets") {
    CHECK(run_cli("verify rowen --n 2").exit_code == 0);
    CHECK(run_cli("verify hutchinson --n 2").exit_code == 0);
    RunResult rel = run_cli("verify relation --family sympl-minus --n 1 --json");
    REQUIRE(rel.exit_code == 0);
    auto j = nlohmann::json::parse(rel.out);
    CHECK(j["checks"][0]["verdict"] == "holds");
    compare_to_golden(rel.out, "verify_relation_sympl_minus_1.json");
}

TEST_CASE("verify: failing check exits 1 with a witness") {
    RunResult r = run_cli("verify power --family sympl-plus --n 2 --degree 5 --json");
    CHECK(r.exit_code == 1);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["overall"] == "fails");
    REQUIRE(j["checks"][0].contains("witness"));
    CHECK(j["checks"][0]["witness"]["subset"].size() == 5);
}

TEST_CASE("config errors exit 2") {
    CHECK(run_cli("dims --family sympl-plus --m 5").exit_code == 2);
    CHECK(run_cli("verify nonsense --family full --m 2").exit_code == 2);
    CHECK(run_cli("dims").exit_code == 2);
    CHECK(run_cli("verify power --family sympl-plus --n 2").exit_code == 2);  // no degree
}

TEST_CASE("budget skips exit 3 under --strict") {
    RunResult lax = run_cli("verify power --family sympl-minus --n 2 --degree 8 --budget-entries 100");
    CHECK(lax.exit_code == 0);
    RunResult strict = run_cli(
        "verify power --family sympl-minus --n 2 --degree 8 --budget-entries 100 --strict");
    CHECK(strict.exit_code == 3);
}

TEST_CASE("reports are stable across runs") {
    const std::string args = "certify --family orth-plus --m 3 --json";
    RunResult a = run_cli(args);
    RunResult b = run_cli(args);
    REQUIRE(a.exit_code == 0);
    CHECK(normalized(a.out) == normalized(b.out));
    auto j = nlohmann::json::parse(a.out);
    CHECK(j["config_hash"] == nlohmann::json::parse(b.out)["config_hash"]);
}

TEST_CASE("certify reports rank tables") {
    RunResult r = run_cli("certify --family sympl-plus --n 2 --json");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    bool saw_basis = false;
    for (const auto& c : j["checks"]) {
        CHECK(c["verdict"] == "holds");
        if (c["name"] == "certify-basis") {
            saw_basis = true;
            std::string detail = c["detail"];
            CHECK(detail.find("forms=12") != std::string::npos);
        }
    }
    CHECK(saw_basis);
}

TEST_CASE("derive-relation flags the printed mismatch") {
    RunResult r = run_cli("derive-relation --family orth-plus --m 3 --json");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    std::string detail = j["checks"][0]["detail"];
    CHECK(detail.find("matches printed: no") != std::string::npos);
    CHECK(detail.find("unique") != std::string::npos);
    compare_to_golden(r.out, "derive_relation_orth_plus_3.json");

    RunResult ok = run_cli("derive-relation --family sympl-plus --n 2 --json");
    REQUIRE(ok.exit_code == 0);
    auto j2 = nlohmann::json::parse(ok.out);
    std::string d2 = j2["checks"][0]["detail"];
    CHECK(d2.find("matches printed: yes") != std::string::npos);
}

TEST_CASE("sphere report with coefficient listings") {
    RunResult r = run_cli("sphere --n 2 --json");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    int covariant_checks = 0;
    for (const auto& c : j["checks"]) {
        CHECK(c["verdict"] == "holds");
        std::string name = c["name"];
        if (name.rfind("sphere-omega", 0) == 0 || name.rfind("sphere-theta", 0) == 0) {
            ++covariant_checks;
            std::string detail = c["detail"];
            CHECK(detail.find("->[") != std::string::npos);
        }
    }
    CHECK(covariant_checks == 4);
}

TEST_CASE("advisory probe never decides the verdict") {
    RunResult r = run_cli("verify relation --family sympl-plus --n 2 --seed 7 --json");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    bool saw_probe = false;
    for (const auto& c : j["checks"])
        if (c.value("advisory", false)) {
            saw_probe = true;
            CHECK(c["name"] == "relation-fuzz-probe");
        }
    CHECK(saw_probe);
}
