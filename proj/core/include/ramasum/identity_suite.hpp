// identity_suite.hpp — every numbered identity of the underlying analysis as
// a machine-checkable comparison of two independently computed sides, plus a
// structured JSON report. A check flagged as a hypothesis records a numeric
// verdict for a claim whose published derivation is too terse to trust; it is
// reported but never escalated to a failure.
#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ramasum/precision.hpp"

namespace ramasum {

enum class CheckStatus { Pass, Fail, HypothesisPass, HypothesisFail, PrecisionInsufficient };

std::string to_string(CheckStatus s);

struct IdentityReport {
    std::string check_id;
    std::map<std::string, std::string> params;
    BigReal lhs;
    BigReal rhs;
    BigReal abs_diff;
    BigReal tolerance;
    CheckStatus status = CheckStatus::Fail;
    double runtime_ms = 0.0;
    long precision_bits = 0;
};

struct SuiteSummary {
    int total = 0;
    int passed = 0;
    int failed = 0;
    int hypotheses = 0;
};

// All registered check ids, in canonical order.
std::vector<std::string> registered_checks();

// Run one check. Unknown ids raise UnknownCheck. Checks whose tolerance is
// unreachable at ctx.bits return status PrecisionInsufficient instead of
// computing garbage.
IdentityReport run_check(const std::string& check_id,
                         const std::map<std::string, std::string>& params,
                         const PrecisionContext& ctx);

// Run every registered check over the default parameter grid; ids filtered by
// prefix when given. Report ordering is deterministic (check_id, then params).
std::pair<std::vector<IdentityReport>, SuiteSummary> run_all(const std::string& filter_prefix,
                                                             const PrecisionContext& ctx);

// JSON: array of row objects plus a summary object; all reals as decimal
// strings, no binary floats.
std::string report_to_json(const std::vector<IdentityReport>& rows, const SuiteSummary& summary);

}  // namespace ramasum
