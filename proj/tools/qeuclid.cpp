#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"
#include "qeuclid/cache.hpp"
#include "qeuclid/parse.hpp"
#include "qeuclid/suite.hpp"

using namespace qe;
using json = nlohmann::json;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct VerifyOpts {
    std::vector<int> Ns;
    std::string calculus, flip, mode;
    std::vector<std::string> checks, qvals;
    bool no_symbolic = false, allow_large = false, no_timing = false, quiet = false, no_cache = false;
    std::optional<unsigned> seed;
    std::optional<int> jobs;
    std::string config, report, cache_dir;
};

MatrixCache make_cache(bool disabled, const std::string& flag) {
    if (disabled) return MatrixCache();
    return MatrixCache(MatrixCache::default_dir(flag));
}

int do_verify(const VerifyOpts& o) {
    RunConfig c;
    std::string report = o.report, cache_dir = o.cache_dir;
    bool no_cache = o.no_cache;
    try {
        if (!o.Ns.empty()) c.Ns = o.Ns;
        if (!o.calculus.empty()) c.calculus = o.calculus;
        if (!o.flip.empty()) c.flip = o.flip;
        if (!o.mode.empty()) c.mode = parse_mode(o.mode);
        if (!o.checks.empty()) c.checks = o.checks;
        if (!o.qvals.empty()) c.qvals = o.qvals.size() == 1 && o.qvals[0] == "none" ? std::vector<std::string>{} : o.qvals;
        if (o.no_symbolic) c.symbolic = false;
        if (o.allow_large) c.allow_large = true;
        if (o.seed) c.seed = *o.seed;
        if (o.jobs) c.jobs = *o.jobs;
        if (!o.config.empty()) {
            std::ifstream in(o.config);
            if (!in) throw UsageError("cannot read config file " + o.config);
            json j;
            try {
                j = json::parse(in);
            } catch (const json::exception& e) {
                throw UsageError("config file " + o.config + ": " + e.what());
            }
            c = apply_json(c, j);
            if (j.contains("report")) report = j["report"].get<std::string>();
            if (j.contains("cache_dir")) cache_dir = j["cache_dir"].get<std::string>();
            if (j.contains("cache")) no_cache = !j["cache"].get<bool>();
        }
        validate(c);
    } catch (const std::exception& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    }

    Report r = run(c, make_cache(no_cache, cache_dir));
    for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
    if (!o.quiet) {
        for (const auto& x : r.results) {
            std::cerr << (x.pass ? "PASS " : "FAIL ") << x.id << " N=" << x.N << " " << x.config;
            if (!x.value.empty()) std::cerr << " [" << x.value.substr(0, 160) << "]";
            if (!x.pass) std::cerr << "\n     " << x.witness.substr(0, 400);
            std::cerr << "\n";
        }
        std::cerr << r.passed() << "/" << r.results.size() << " passed\n";
    }
    std::string text = report_json(r, !o.no_timing).dump(2) + "\n";
    if (report.empty() || report == "-") {
        std::cout << text;
    } else {
        std::ofstream out(report, std::ios::binary | std::ios::trunc);
        if (!out) {
            std::cerr << "cannot write report " << report << "\n";
            return kUsage;
        }
        out << text;
    }
    return r.pass() ? kPass : kFail;
}

template <class S>
int eval_in(const Model<S>& m, const std::string& expr, bool roundtrip) {
    Algebra<S> A(m);
    MatrixData<S> d(m);
    Calculus<S> C(A, d, Calc::unbarred), Cb(A, d, Calc::barred);
    ExprParser<S> P(A, C, Cb);
    Value<S> v;
    try {
        v = P.parse(expr);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n  " << expr << "\n  " << std::string(e.pos, ' ') << "^\n";
        return kUsage;
    }
    std::string out = P.print(v);
    std::cout << out << "\n";
    if (roundtrip) {
        Value<S> again = P.parse(out);
        if (!(again == v) || P.print(again) != out) {
            std::cerr << "round trip mismatch: " << P.print(again) << "\n";
            return kFail;
        }
    }
    return kPass;
}

int do_eval(int N, const std::string& qstr, const std::string& expr, bool roundtrip) {
    try {
        if (N < 3) throw UsageError("N must be at least 3");
        if (qstr.empty()) return eval_in(Model<RatFunc>(N), expr, roundtrip);
        return eval_in(Model<QNum>(N, Scalars<QNum>(parse_q(qstr))), expr, roundtrip);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFail;
    }
}

int do_cache(const std::string& action, std::vector<int> Ns, const std::string& dir, int version) {
    MatrixCache cache(MatrixCache::default_dir(dir), version);
    if (!cache.enabled()) {
        std::cerr << "usage error: no cache directory (set --cache-dir or " << MatrixCache::kEnvVar << ")\n";
        return kUsage;
    }
    if (action == "path") {
        std::cout << cache.dir().string() << "\n";
        return kPass;
    }
    if (Ns.empty()) Ns = {3, 4, 5, 6, 7};
    int rc = kPass;
    for (int N : Ns) {
        if (N < 3) {
            std::cerr << "usage error: N must be at least 3\n";
            return kUsage;
        }
        if (action == "warm") {
            auto r = cache.get(N);
            if (!r.warning.empty()) std::cerr << "warning: " << r.warning << "\n";
            std::cout << "N=" << N << " " << to_string(r.status) << " " << cache.path(N).string() << "\n";
        } else if (action == "verify") {
            MatrixCache::Status st;
            std::string w;
            auto loaded = cache.load(N, &st, &w);
            if (!w.empty()) std::cerr << "warning: " << w << "\n";
            if (!loaded) {
                std::cout << "N=" << N << " " << to_string(st) << "\n";
                rc = kFail;
                continue;
            }
            MatrixData<RatFunc> fresh{Model<RatFunc>(N)};
            bool same = loaded->rhat.entries() == fresh.rhat.entries() &&
                        loaded->proj.s.entries() == fresh.proj.s.entries() &&
                        loaded->proj.a.entries() == fresh.proj.a.entries() &&
                        loaded->proj.t.entries() == fresh.proj.t.entries();
            std::ifstream in(cache.path(N), std::ios::binary);
            std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
            bool identical = bytes == cache.serialize(*loaded) && bytes == cache.serialize(fresh);
            std::cout << "N=" << N << " " << (same ? "matches" : "DIFFERS from") << " recomputation, "
                      << (identical ? "byte-identical" : "NOT byte-identical") << "\n";
            if (!same || !identical) rc = kFail;
        } else if (action == "clear") {
            std::cout << "N=" << N << (cache.clear(N) ? " removed" : " absent") << "\n";
        }
    }
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact verification of the SO_q(N) quantum Euclidean geometry identities"};
    app.require_subcommand(1);

    VerifyOpts vo;
    auto* verify = app.add_subcommand("verify", "run check suites and write a JSON report");
    verify->add_option("--N", vo.Ns, "dimensions, comma separated")->delimiter(',');
    verify->add_option("--calculus", vo.calculus, "unbarred, barred or both (default both)");
    verify->add_option("--flip", vo.flip, "qR, qR_inverse or both (default both)");
    verify->add_option("--mode", vo.mode, "transcendental, theorem3 or star-link (default transcendental)");
    verify->add_option("--checks", vo.checks, "check ids, comma separated, or all")->delimiter(',');
    verify->add_option("--q", vo.qvals, "rational q values for numeric reruns (default 3/2; none disables)")
        ->delimiter(',');
    verify->add_flag("--no-symbolic", vo.no_symbolic, "skip the symbolic run");
    verify->add_flag("--allow-large", vo.allow_large, "lift the N envelope");
    verify->add_option("--seed", vo.seed, "seed for the randomized checks (default 1)");
    verify->add_option("-j,--jobs", vo.jobs, "worker threads (default 1)");
    verify->add_option("--config", vo.config, "JSON config file; its keys override the flags");
    verify->add_option("--report", vo.report, "report path (default stdout)");
    verify->add_option("--cache-dir", vo.cache_dir, std::string("projector cache directory (default $") +
                                                       MatrixCache::kEnvVar + ")");
    verify->add_flag("--no-cache", vo.no_cache, "do not read or write the cache");
    verify->add_flag("--no-timing", vo.no_timing, "write 0 for every elapsed time");
    verify->add_flag("--quiet", vo.quiet, "no per-check lines on stderr");

    int eN = 0;
    std::string eq, expr;
    bool roundtrip = false;
    auto* eval = app.add_subcommand("eval", "print the normal form of an expression");
    eval->add_option("--N", eN, "dimension")->required();
    eval->add_option("--q", eq, "evaluate at this rational q");
    eval->add_flag("--roundtrip", roundtrip, "re-parse the output and require the same value");
    eval->add_option("expr", expr, "expression")->required();

    std::string caction, cdir;
    std::vector<int> cNs;
    int cversion = MatrixCache::kFormatVersion;
    auto* cache = app.add_subcommand("cache", "manage the R-hat and projector cache");
    cache->add_option("action", caction, "warm, verify, clear or path")
        ->required()
        ->check(CLI::IsMember({"warm", "verify", "clear", "path"}));
    cache->add_option("--N", cNs, "dimensions, comma separated (default 3..7)")->delimiter(',');
    cache->add_option("--cache-dir", cdir, std::string("cache directory (default $") + MatrixCache::kEnvVar + ")");
    cache->add_option("--format-version", cversion, "blob format version to read and write")->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kPass : kUsage;
    }
    if (verify->parsed()) return do_verify(vo);
    if (eval->parsed()) return do_eval(eN, eq, expr, roundtrip);
    return do_cache(caction, cNs, cdir, cversion);
}
