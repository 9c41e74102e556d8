#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "qeuclid/cache.hpp"
#include "qeuclid/frames.hpp"
#include "qeuclid/report.hpp"

namespace qe {

enum class Level { matrix, algebra, calculus, frames, geometry };

struct CheckInfo {
    std::string id;
    Level level;
    std::string summary;
};

// Every check the runner knows, in report order.
const std::vector<CheckInfo>& check_catalog();
const CheckInfo* find_check(const std::string& id);

struct Samples {
    int confluence = 500;
    int grading = 300;
    int star_alg = 200;
    int embed = 200;
    int bimodule = 100;
    int leibniz = 300;
    int partial_link = 30;
};

struct RunConfig {
    std::vector<int> Ns{3};
    std::string calculus = "both";  // unbarred, barred, both
    std::string flip = "both";      // qR, qR_inverse, both
    RadMode mode = RadMode::transcendental;
    std::vector<std::string> checks;        // empty: all
    std::vector<std::string> qvals{"3/2"};  // numeric reruns
    bool symbolic = true;
    bool allow_large = false;
    unsigned seed = 1;
    Samples samples;
    int jobs = 1;
};

// Desk-scale envelope without allow_large.
inline constexpr int kMaxMatrixN = 7;
inline constexpr int kMaxAlgebraN = 6;

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Throws UsageError on an invalid configuration.
void validate(const RunConfig& c);

RadMode parse_mode(const std::string& s);
mpq_class parse_q(const std::string& s);

// Keys mirror the command-line flags; unknown keys are a usage error.
RunConfig apply_json(RunConfig base, const nlohmann::json& j);

struct Report {
    RunConfig config;
    std::vector<CheckResult> results;
    std::vector<std::string> warnings;  // cache notices, not part of the JSON
    long passed() const;
    bool pass() const { return passed() == static_cast<long>(results.size()); }
};

// Runs every applicable (check, N, scalar point, calculus, flip) instance on
// config.jobs threads. Result order is independent of jobs.
Report run(const RunConfig& config, const MatrixCache& cache);

nlohmann::json config_json(const RunConfig& c);
nlohmann::json report_json(const Report& r, bool timing = true);

}  // namespace qe
