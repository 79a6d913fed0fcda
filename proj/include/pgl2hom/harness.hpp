#pragma once

#include <map>
#include <string>
#include <vector>

#include "pgl2hom/cache.hpp"
#include "pgl2hom/groups.hpp"

namespace pgl2hom {

enum class CheckStatus { Pass, Fail, Skipped, Flagged };
std::string to_string(CheckStatus s);

struct CheckResult {
    std::string id;
    std::string ring;  // ring spec, "Z", or a group name
    CheckStatus status = CheckStatus::Fail;
    std::map<std::string, std::string> computed;  // name -> invariant factors / value
    std::string expected;
    std::string source;  // paper-constant | derived-oracle | trivial | literature-flag
    std::string detail;  // failure diagnostics or skipped hypothesis
    double ms = 0.0;
};

struct SuiteConfig {
    std::vector<std::string> checks;  // empty = all
    std::map<std::string, std::vector<std::string>> rings_override;
    long long complex_budget = kDefaultComplexBudget;
    BarBudget bar_budget;
    int threads = 4;
    std::string cache_dir;
    std::string out_path;
    std::string format = "json";
};

const std::vector<std::string>& all_check_ids();
SuiteConfig load_config_json(const std::string& text);

/// Run the configured checks. Results are sorted by (check id, ring);
/// individual check crashes become failures, never abort the suite.
/// When the determinism check is enabled the other checks run three
/// times (threads 1, 4, 4); reported results come from the first
/// 4-thread run and the determinism rows compare the serializations.
std::vector<CheckResult> run_suite(const SuiteConfig& cfg);

/// format: "json" | "csv" | "md". zero_ms blanks the timing fields
/// (used by the golden-file test).
std::string render_report(const std::vector<CheckResult>& results, const SuiteConfig& cfg,
                          const std::string& format, bool zero_ms = false);

/// 0 = all pass/skip/flag, 1 = any fail.
int suite_exit_code(const std::vector<CheckResult>& results);

}  // namespace pgl2hom
