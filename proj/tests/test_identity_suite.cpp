#include "doctest.h"

#include "json.hpp"
#include "ramasum/identity_suite.hpp"

using namespace ramasum;

namespace {
const PrecisionContext kCtx(256, -20);
}

TEST_CASE("registry") {
    auto ids = registered_checks();
    CHECK(ids.size() >= 18);
    CHECK(std::count(ids.begin(), ids.end(), "theorem1") == 1);
    CHECK(std::count(ids.begin(), ids.end(), "hnj_constant") == 1);
    CHECK_THROWS_AS(run_check("nonsense", {}, kCtx), UnknownCheck);
}

TEST_CASE("single checks pass") {
    auto r = run_check("theorem1", {{"z", "0.5"}}, kCtx);
    CHECK(r.status == CheckStatus::Pass);
    CHECK(r.abs_diff.to_double() < 1e-20);

    auto e = run_check("exact_equality_44", {{"z", "0.5"}}, kCtx);
    CHECK(e.status == CheckStatus::Pass);

    auto c = run_check("corollary1", {{"k", "2"}}, kCtx);
    CHECK(c.status == CheckStatus::Pass);
    CHECK(c.abs_diff.to_double() < 1e-18);
}

TEST_CASE("hypothesis check reports a signed discrepancy, never a failure") {
    auto r = run_check("hnj_constant", {{"j", "2"}}, kCtx);
    CHECK(r.status == CheckStatus::HypothesisFail);
    // engine value (3/2)zeta(2) - 2 vs claimed (3/2)zeta(2) + 1: discrepancy -3
    CHECK((r.lhs - r.rhs).to_double() == doctest::Approx(-3.0).epsilon(1e-12));
    auto r3 = run_check("hnj_constant", {{"j", "3"}}, kCtx);
    CHECK(r3.status == CheckStatus::HypothesisFail);
    CHECK((r3.lhs - r3.rhs).to_double() == doctest::Approx(-1.5).epsilon(1e-12));
}

TEST_CASE("precision guard at 64 bits") {
    PrecisionContext low(64, -10);
    auto r = run_check("theorem2", {{"z", "0.5"}}, low);
    CHECK(r.status == CheckStatus::PrecisionInsufficient);
    auto q = run_check("lemma3", {{"z", "0.5"}}, low);
    CHECK(q.status == CheckStatus::PrecisionInsufficient);
}

TEST_CASE("filtering and determinism of run_all") {
    auto [rows, summary] = run_all("lemma3", kCtx);
    CHECK(summary.total == 10);  // lemma3 + lemma3_borel over the z grid
    CHECK(summary.failed == 0);
    for (const auto& r : rows) CHECK(r.check_id.rfind("lemma3", 0) == 0);
    // deterministic ordering
    auto [rows2, summary2] = run_all("lemma3", kCtx);
    REQUIRE(rows.size() == rows2.size());
    for (size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].check_id == rows2[i].check_id);
        CHECK(rows[i].params == rows2[i].params);
        CHECK(mpfr_cmp(rows[i].lhs.raw(), rows2[i].lhs.raw()) == 0);
    }
}

TEST_CASE("doubling precision does not flip pass to fail") {
    PrecisionContext deep(512, -20);
    auto lo = run_check("theorem1", {{"z", "0.5"}}, kCtx);
    auto hi = run_check("theorem1", {{"z", "0.5"}}, deep);
    CHECK(lo.status == CheckStatus::Pass);
    CHECK(hi.status == CheckStatus::Pass);
    CHECK(hi.abs_diff.to_double() <= lo.tolerance.to_double());
    // residual is z-independent within tolerance across the grid
    auto a = run_check("theorem1", {{"z", "-0.5"}}, kCtx);
    auto b = run_check("theorem1", {{"z", "1.5"}}, kCtx);
    CHECK(std::abs(a.abs_diff.to_double() - b.abs_diff.to_double()) <
          lo.tolerance.to_double());
}

TEST_CASE("json schema") {
    auto [rows, summary] = run_all("residue_h", kCtx);
    std::string js = report_to_json(rows, summary);
    auto parsed = nlohmann::json::parse(js);
    REQUIRE(parsed.contains("checks"));
    REQUIRE(parsed.contains("summary"));
    CHECK(parsed["summary"]["total"].get<int>() == 1);
    const auto& row = parsed["checks"][0];
    for (const char* key : {"check_id", "params", "lhs", "rhs", "abs_diff", "tolerance",
                            "status", "runtime_ms", "precision_bits"})
        CHECK(row.contains(key));
    // reals are decimal strings
    CHECK(row["lhs"].is_string());
    CHECK(row["abs_diff"].is_string());
}
