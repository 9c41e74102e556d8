#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "qeuclid/cache.hpp"

using namespace qe;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    TempDir() {
        path = fs::temp_directory_path() / ("qeuclid-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        fs::remove_all(path);
    }
    ~TempDir() { fs::remove_all(path); }
    fs::path path;
    static inline int counter = 0;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

bool same(const MatrixData<RatFunc>& a, const MatrixData<RatFunc>& b) {
    return a.rhat.entries() == b.rhat.entries() && a.rinv.entries() == b.rinv.entries() &&
           a.proj.s.entries() == b.proj.s.entries() && a.proj.a.entries() == b.proj.a.entries() &&
           a.proj.t.entries() == b.proj.t.entries() && a.gg.entries() == b.gg.entries();
}

}  // namespace

TEST_SUITE("cache") {

TEST_CASE("populate, load and match recomputation") {
    TempDir t;
    MatrixCache c(t.path);
    for (int N : {3, 4, 6}) {
        CAPTURE(N);
        auto first = c.get(N);
        CHECK(first.status == MatrixCache::Status::miss);
        CHECK(fs::exists(c.path(N)));
        std::string bytes = slurp(c.path(N));
        auto second = c.get(N);
        CHECK(second.status == MatrixCache::Status::hit);
        MatrixData<RatFunc> fresh{Model<RatFunc>(N)};
        CHECK(same(second.data, fresh));
        CHECK(c.serialize(second.data) == bytes);
        CHECK(c.serialize(fresh) == bytes);
    }
    CHECK(c.clear(3));
    CHECK_FALSE(c.clear(3));
    CHECK(c.get(3).status == MatrixCache::Status::miss);
}

TEST_CASE("version bump invalidates") {
    TempDir t;
    MatrixCache v1(t.path, 1), v2(t.path, 2);
    v1.get(3);
    auto r = v2.get(3);
    CHECK(r.status == MatrixCache::Status::stale);
    CHECK_FALSE(r.warning.empty());
    CHECK(same(r.data, MatrixData<RatFunc>(Model<RatFunc>(3))));
    CHECK(v2.get(3).status == MatrixCache::Status::hit);
    CHECK(v1.get(3).status == MatrixCache::Status::stale);
}

TEST_CASE("corrupt blobs are recomputed with a warning") {
    TempDir t;
    MatrixCache c(t.path);
    c.get(3);
    std::string bytes = slurp(c.path(3));
    for (std::string bad : {std::string("{not json"), bytes.substr(0, bytes.size() / 2),
                            std::string("{\"format\":\"qeuclid-matrices\",\"version\":1,\"N\":5}"),
                            std::string("{\"format\":\"qeuclid-matrices\",\"version\":1,\"N\":3,\"rhat\":[[1]]}"),
                            std::string("{\"format\":\"qeuclid-matrices\",\"version\":1,\"N\":3,\"rhat\":[[9,0,0,0,[1],[1]]]}")}) {
        std::ofstream(c.path(3), std::ios::binary | std::ios::trunc) << bad;
        auto r = c.get(3);
        CHECK(r.status == MatrixCache::Status::corrupt);
        CHECK_FALSE(r.warning.empty());
        CHECK(same(r.data, MatrixData<RatFunc>(Model<RatFunc>(3))));
        CHECK(slurp(c.path(3)) == bytes);
    }
}

TEST_CASE("disabled cache bypasses the filesystem") {
    MatrixCache off;
    CHECK_FALSE(off.enabled());
    auto r = off.get(3);
    CHECK(r.status == MatrixCache::Status::disabled);
    CHECK(r.warning.empty());
}

TEST_CASE("directory resolution") {
    CHECK(MatrixCache::default_dir("/x/y") == fs::path("/x/y"));
    ::setenv(MatrixCache::kEnvVar, "/env/dir", 1);
    CHECK(MatrixCache::default_dir() == fs::path("/env/dir"));
    CHECK(MatrixCache::default_dir("/flag") == fs::path("/flag"));
    ::unsetenv(MatrixCache::kEnvVar);
    ::setenv("XDG_CACHE_HOME", "/xdg", 1);
    CHECK(MatrixCache::default_dir() == fs::path("/xdg/qeuclid"));
    MatrixCache c("/some/dir");
    CHECK(c.path(5) == fs::path("/some/dir/matrices-N5.json"));
}

}
