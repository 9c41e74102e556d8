#include <set>

#include "doctest.h"
#include "qeuclid/suite.hpp"

using namespace qe;
using json = nlohmann::json;

namespace {

RunConfig small(std::vector<int> Ns, std::vector<std::string> checks) {
    RunConfig c;
    c.Ns = std::move(Ns);
    c.checks = std::move(checks);
    return c;
}

}  // namespace

TEST_SUITE("suite") {

TEST_CASE("catalog") {
    std::set<std::string> ids;
    for (const auto& c : check_catalog()) CHECK(ids.insert(c.id).second);
    CHECK(find_check("braid") != nullptr);
    CHECK(find_check("nope") == nullptr);
}

TEST_CASE("validation") {
    CHECK_NOTHROW(validate(RunConfig{}));
    auto bad = [](auto mutate) {
        RunConfig c;
        mutate(c);
        CHECK_THROWS_AS(validate(c), UsageError);
    };
    bad([](RunConfig& c) { c.Ns = {}; });
    bad([](RunConfig& c) { c.Ns = {2}; });
    bad([](RunConfig& c) { c.Ns = {8}; });
    bad([](RunConfig& c) { c.Ns = {4}, c.mode = RadMode::theorem3; });
    bad([](RunConfig& c) { c.calculus = "left"; });
    bad([](RunConfig& c) { c.flip = "R"; });
    bad([](RunConfig& c) { c.jobs = 0; });
    bad([](RunConfig& c) { c.qvals = {"1"}; });
    bad([](RunConfig& c) { c.qvals = {"-2"}; });
    bad([](RunConfig& c) { c.qvals = {"x"}; });
    bad([](RunConfig& c) { c.qvals = {}, c.symbolic = false; });
    bad([](RunConfig& c) { c.checks = {"nope"}; });
    bad([](RunConfig& c) { c.checks = {"theorem3"}, c.Ns = {4}; });
    bad([](RunConfig& c) { c.checks = {"even-obstruction"}, c.Ns = {3}; });
    bad([](RunConfig& c) { c.checks = {"theorem3"}, c.mode = RadMode::star_link; });
    bad([](RunConfig& c) { c.checks = {"curvature"}, c.Ns = {7}; });
    bad([](RunConfig& c) { c.samples.confluence = -1; });

    RunConfig big;
    big.Ns = {8};
    big.allow_large = true;
    CHECK_NOTHROW(validate(big));
    RunConfig t3;
    t3.Ns = {3, 5};
    t3.mode = RadMode::theorem3;
    CHECK_NOTHROW(validate(t3));
    CHECK_THROWS_AS(parse_mode("fast"), UsageError);
    CHECK(parse_q("9/4") == mpq_class(9, 4));
}

TEST_CASE("json config") {
    RunConfig base;
    json j = json::parse(R"({"N": [3, 5], "mode": "theorem3", "checks": ["theorem3"], "q": ["7/5"],
                             "samples": {"confluence": 10}, "report": "r.json", "cache": false})");
    RunConfig c = apply_json(base, j);
    CHECK(c.Ns == std::vector<int>{3, 5});
    CHECK(c.mode == RadMode::theorem3);
    CHECK(c.qvals == std::vector<std::string>{"7/5"});
    CHECK(c.samples.confluence == 10);
    CHECK(c.samples.grading == base.samples.grading);
    CHECK_THROWS_AS(apply_json(base, json::parse(R"({"bogus": 1})")), UsageError);
    CHECK_THROWS_AS(apply_json(base, json::parse(R"({"N": "three"})")), UsageError);
    CHECK_THROWS_AS(apply_json(base, json::parse(R"([1, 2])")), UsageError);
    CHECK_THROWS_AS(apply_json(base, json::parse(R"({"samples": {"x": 1}})")), UsageError);
}

TEST_CASE("scheduling") {
    auto rep = run(small({3, 4}, {"braid", "dirac", "dxi", "theorem3", "even-obstruction", "classical-limit"}),
                   MatrixCache());
    std::multiset<std::string> seen;
    for (const auto& r : rep.results) seen.insert(r.id + " " + std::to_string(r.N) + " " + r.config);
    // braid: one per N and point; dirac: per calculus; dxi: per calculus and flip
    CHECK(seen.count("braid 3 symbolic") == 1);
    CHECK(seen.count("braid 3 q=3/2") == 1);
    CHECK(seen.count("dirac 4 barred q=3/2") == 1);
    CHECK(seen.count("dxi 3 unbarred qR_inverse symbolic") == 1);
    CHECK(seen.count("dxi 3 barred qR q=3/2") == 1);
    // parity-restricted checks are dropped where they do not apply
    CHECK(seen.count("theorem3 3 symbolic") == 1);
    CHECK(seen.count("theorem3 4 symbolic") == 0);
    CHECK(seen.count("even-obstruction 4 symbolic") == 1);
    CHECK(seen.count("even-obstruction 3 symbolic") == 0);
    // the q = 1 probe runs on the symbolic point only
    CHECK(seen.count("classical-limit 3 unbarred qR symbolic") == 1);
    CHECK(seen.count("classical-limit 3 unbarred qR q=3/2") == 0);
    CHECK(rep.results.size() == 2 * (2 + 4 + 8) + 2 + 2 + 8);
    CHECK(rep.pass());
}

TEST_CASE("reports are deterministic and independent of jobs") {
    RunConfig c = small({3, 4}, {"braid", "xrel", "confluence", "dirac", "frame-rel", "torsion"});
    c.samples.confluence = 40;
    c.jobs = 1;
    auto a = report_json(run(c, MatrixCache()), false);
    c.jobs = 4;
    auto b = report_json(run(c, MatrixCache()), false);
    CHECK(a == b);
    CHECK(a["summary"]["pass"] == false);
    CHECK(a["summary"]["failed"].get<int>() == 4);  // frame-rel, N = 4, both calculi, both points
    for (const auto& r : a["results"]) {
        CHECK(r["ms"] == 0);
        if (!r["pass"].get<bool>()) {
            CHECK(r["id"] == "frame-rel");
            CHECK(r["N"] == 4);
            CHECK_FALSE(r["witness"].get<std::string>().empty());
        }
    }
    CHECK(a["config"]["N"] == json::array({3, 4}));
    CHECK_FALSE(a["config"].contains("jobs"));
}

TEST_CASE("an unwritable cache directory only warns") {
    RunConfig c = small({3}, {"braid"});
    c.qvals = {"3/2"};
    auto rep = run(c, MatrixCache("/proc/definitely/not/writable"));
    CHECK(rep.pass());
    CHECK_FALSE(rep.warnings.empty());
}

}
