// One PASS/FAIL line per acceptance criterion. A criterion passes when every
// check instance it selects passes. Instances listed in kKnown fail with the
// stated formulas; the exit status is nonzero when the failing set differs
// from kKnown in either direction.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <thread>

#include "qeuclid/suite.hpp"

using namespace qe;
namespace fs = std::filesystem;

namespace {

struct Known {
    std::string id;
    int N;
    std::string reason;
};

// (criterion, check id, N) triples expected to fail; every config of that
// (id, N) in the criterion fails.
const std::map<int, std::vector<Known>> kKnown = {
    {4,
     {{"e-table", 4, "off-diagonal entry at (1,-1), barred (-1,1)"},
      {"e-table", 6, "off-diagonal entry at (1,-1), barred (-1,1)"}}},
    {6, {{"frame-rel", 4, "P_s and P_t parts at (c,-c) survive for N even"}}},
    {8, {{"star-link", 4, "(theta^a)^* at a = +-1 for N even"}}},
};

struct Criterion {
    int num;
    std::string title;
    double budget_s;
    std::vector<RunConfig> runs;
};

RunConfig cfg(std::vector<int> Ns, std::vector<std::string> checks, std::vector<std::string> qvals = {"3/2"}) {
    RunConfig c;
    c.Ns = std::move(Ns);
    c.checks = std::move(checks);
    c.qvals = std::move(qvals);
    c.jobs = std::max(1u, std::thread::hardware_concurrency());
    return c;
}

std::vector<Criterion> criteria() {
    const std::vector<std::string> three_q{"3/2", "9/4", "7/5"};
    std::vector<Criterion> v;

    RunConfig c1n = cfg({3, 4, 5, 6, 7, 8, 9}, {"braid", "propR1", "propR2", "propR3", "squareR", "gRrel"}, three_q);
    c1n.symbolic = false;
    c1n.allow_large = true;
    v.push_back({1, "braid, propR1-3, squareR, gRrel exact for N = 3..7, numeric for N = 3..9", 60,
                 {cfg({3, 4, 5, 6, 7}, {"braid", "propR1", "propR2", "propR3", "squareR", "gRrel"}, {}), c1n}});

    RunConfig c2r = cfg({3, 4, 5, 6, 7}, {"ranks"}, three_q);
    c2r.symbolic = false;
    v.push_back({2, "projector suite exact for N = 3..7, ranks at numeric q", 30,
                 {cfg({3, 4, 5, 6, 7}, {"projectors", "Pt"}, three_q), c2r}});

    RunConfig c3 = cfg({3, 4, 5, 6}, {"confluence", "center", "grading"});
    c3.samples.confluence = 500;
    v.push_back({3, "rewrite engine: 500 random triples per N, r_n^2 central, grading", 300, {c3}});

    v.push_back({4, "frame relations and e-table for N = 3..6, both calculi", 600,
                 {cfg({3, 4, 5, 6}, {"xlambda", "lambdax", "rll", "gll", "lambda-rel", "s2", "e-table"})}});

    RunConfig c5 = cfg({3, 5}, {"theorem3", "phi-L"});
    c5.mode = RadMode::theorem3;
    v.push_back({5, "gluing for N = 3, 5 in theorem3 mode; obstruction for N = 4, 6", 600,
                 {c5, cfg({4, 6}, {"even-obstruction"})}});

    v.push_back({6, "frame one-forms for N = 3..5, both calculi", 600,
                 {cfg({3, 4, 5}, {"frame-commute", "frame-rel", "duality", "rtheta"})}});

    v.push_back({7, "flips, metric compatibility, D xi, torsion, curvature for N = 3..5", 900,
                 {cfg({3, 4, 5}, {"sigma-braid", "sigma-pi", "metric-compat", "dxi", "torsion", "curvature"})}});

    RunConfig c8 = cfg({3, 4}, {"star-link"});
    c8.mode = RadMode::star_link;
    v.push_back({8, "Dirac form, star of forms and star-link mode for N = 3, 4", 300,
                 {cfg({3, 4}, {"dirac", "star-forms"}), c8}});

    v.push_back({9, "q = 1 limit of the metric for N = 3..5, both calculi", 60, {cfg({3, 4, 5}, {"classical-limit"})}});
    return v;
}

struct Shell {
    int code;
    std::string out;
};

Shell sh(const std::string& cmd) {
    FILE* p = ::popen((cmd + " 2>/dev/null").c_str(), "r");
    if (!p) return {-1, {}};
    Shell r{0, {}};
    char buf[4096];
    size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    int st = ::pclose(p);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// golden reports, -j independence and the three exit codes
std::vector<std::string> cli_problems(const std::string& cli, const fs::path& golden) {
    std::vector<std::string> bad;
    const std::string exe = "\"" + cli + "\"";
    for (auto [name, code] : {std::pair{"pass", 0}, std::pair{"fail", 1}}) {
        std::string base = exe + " verify --no-cache --no-timing --quiet --config \"" +
                           (golden / (std::string(name) + ".json")).string() + "\"";
        Shell a = sh(base), b = sh(base + " -j 4");
        if (a.code != code) bad.push_back(std::string(name) + ": exit " + std::to_string(a.code));
        if (a.out != slurp(golden / (std::string(name) + ".report.json")))
            bad.push_back(std::string(name) + ": report differs from golden");
        if (a.out != b.out) bad.push_back(std::string(name) + ": report depends on -j");
    }
    if (int c = sh(exe + " verify --N 4 --mode theorem3").code; c != 2)
        bad.push_back("parity clash: exit " + std::to_string(c));
    return bad;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 3) {
        std::cerr << "usage: acceptance CLI GOLDEN_DIR\n";
        return 2;
    }
    int passed = 0, mismatched = 0;
    for (const auto& C : criteria()) {
        auto t0 = std::chrono::steady_clock::now();
        std::vector<CheckResult> fails;
        size_t total = 0;
        for (const auto& rc : C.runs) {
            Report rep = run(rc, MatrixCache());
            total += rep.results.size();
            for (auto& r : rep.results)
                if (!r.pass) fails.push_back(r);
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        std::set<std::pair<std::string, int>> want, got;
        auto it = kKnown.find(C.num);
        if (it != kKnown.end())
            for (const auto& k : it->second) want.insert({k.id, k.N});
        for (const auto& f : fails) got.insert({f.id, f.N});
        bool over = secs > C.budget_s;
        bool ok = fails.empty() && !over;
        if (ok) ++passed;
        if (got != want) ++mismatched;

        std::printf("%s criterion %d: %s (%zu checks, %zu failing, %.1f s of %.0f s)\n", ok ? "PASS" : "FAIL", C.num,
                    C.title.c_str(), total, fails.size(), secs, C.budget_s);
        for (const auto& f : fails) {
            std::string note = "UNEXPECTED";
            if (it != kKnown.end())
                for (const auto& k : it->second)
                    if (k.id == f.id && k.N == f.N) note = "known: " + k.reason;
            std::printf("    %s N=%d %s [%s]: %s\n", f.id.c_str(), f.N, f.config.c_str(), note.c_str(),
                        f.witness.substr(0, 200).c_str());
        }
        for (const auto& w : want)
            if (!got.count(w)) std::printf("    %s N=%d: expected to fail but passed\n", w.first.c_str(), w.second);
        if (over) std::printf("    over the time budget\n");
    }

    auto bad = cli_problems(argv[1], argv[2]);
    std::printf("%s criterion 10: CLI golden reports, determinism and exit codes\n", bad.empty() ? "PASS" : "FAIL");
    for (const auto& b : bad) std::printf("    %s\n", b.c_str());
    if (bad.empty()) ++passed;
    else ++mismatched;

    std::printf("%d of 10 criteria pass; %s\n", passed,
                mismatched ? "failures differ from the documented deviations" : "remaining failures are the documented deviations");
    return mismatched ? 1 : 0;
}
