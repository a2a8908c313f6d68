#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace lpsplit::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
    kOk = 0,
    kError = 1,
    kMaxIterations = 2,
    kStrictViolation = 3,
    kBoundViolated = 4,
};

struct RunOptions {
    bool strict = false;  // SPLITTING_STRICT=1
};

/// True when SPLITTING_STRICT is set to "1".
bool strict_from_env();

int cmd_run(const std::string& config_path, const RunOptions& opts, std::ostream& out, std::ostream& err);

int cmd_verify_constants(const std::vector<double>& ps, int sample_count, std::uint64_t seed, long dim,
                         std::ostream& out, std::ostream& err);

struct RateReportArgs {
    std::string trace_path;
    std::optional<double> phi1;  // default: phi_to_solution of the first row
    double lipschitz = 0.0;
    double b = 0.0;
    double p = 2.0;
};

int cmd_rate_report(const RateReportArgs& args, std::ostream& out, std::ostream& err);

int cmd_compare(const std::string& config_path, const RunOptions& opts, std::ostream& out, std::ostream& err);

/// Trace path for the k-th variant of a compare run: "<stem>.<k>.<variant>.csv".
std::string compare_trace_path(const std::string& base, std::size_t k, const std::string& variant);

}  // namespace lpsplit::cli
