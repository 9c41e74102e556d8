#include "qeuclid/cache.hpp"

#include <cstdlib>
#include <fstream>
#include <unistd.h>

#include "json.hpp"

namespace qe {

namespace fs = std::filesystem;
using json = nlohmann::json;

std::string to_string(MatrixCache::Status s) {
    switch (s) {
        case MatrixCache::Status::disabled: return "disabled";
        case MatrixCache::Status::hit: return "hit";
        case MatrixCache::Status::miss: return "miss";
        case MatrixCache::Status::stale: return "stale";
        case MatrixCache::Status::corrupt: return "corrupt";
    }
    return "?";
}

fs::path MatrixCache::default_dir(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* e = std::getenv(kEnvVar); e && *e) return e;
    if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return fs::path(x) / "qeuclid";
    if (const char* h = std::getenv("HOME"); h && *h) return fs::path(h) / ".cache" / "qeuclid";
    return {};
}

fs::path MatrixCache::path(int N) const {
    return dir_ / ("matrices-N" + std::to_string(N) + ".json");
}

namespace {

json poly_json(const Poly& p) {
    json a = json::array();
    for (const auto& c : p.coeffs()) a.push_back(c.get_str());
    return a;
}

Poly poly_from(const json& a) {
    Poly p;
    int deg = 0;
    for (const auto& c : a) {
        mpz_class v(c.get<std::string>());
        if (v != 0) p += Poly::monomial(v, deg);
        ++deg;
    }
    return p;
}

json tensor_json(const Tensor<RatFunc>& t) {
    json a = json::array();
    for (const auto& [k, v] : t.entries()) a.push_back({k[0], k[1], k[2], k[3], poly_json(v.num()), poly_json(v.den())});
    return a;
}

Tensor<RatFunc> tensor_from(int N, const json& a) {
    Tensor<RatFunc> t(N);
    Model<RatFunc> m(N);
    for (const auto& e : a) {
        std::array<int, 4> k{e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<int>(), e.at(3).get<int>()};
        for (int i : k)
            if (!m.valid(i)) throw std::runtime_error("index " + std::to_string(i) + " out of range");
        t.add(k[0], k[1], k[2], k[3], RatFunc(poly_from(e.at(4)), poly_from(e.at(5))));
    }
    return t;
}

}  // namespace

std::string MatrixCache::serialize(const MatrixData<RatFunc>& d) const {
    json j;
    j["format"] = "qeuclid-matrices";
    j["version"] = version_;
    j["N"] = d.model.N();
    j["rhat"] = tensor_json(d.rhat);
    j["proj_s"] = tensor_json(d.proj.s);
    j["proj_a"] = tensor_json(d.proj.a);
    j["proj_t"] = tensor_json(d.proj.t);
    return j.dump() + "\n";
}

std::optional<MatrixData<RatFunc>> MatrixCache::load(int N, Status* why, std::string* warning) const {
    auto set = [&](Status s, std::string w = {}) {
        if (why) *why = s;
        if (warning) *warning = std::move(w);
    };
    if (!enabled()) {
        set(Status::disabled);
        return std::nullopt;
    }
    std::ifstream in(path(N), std::ios::binary);
    if (!in) {
        set(Status::miss);
        return std::nullopt;
    }
    try {
        json j = json::parse(in);
        if (j.at("format") != "qeuclid-matrices") throw std::runtime_error("unknown format");
        if (j.at("version").get<int>() != version_) {
            set(Status::stale, "ignoring cache blob " + path(N).string() + " with another version");
            return std::nullopt;
        }
        if (j.at("N").get<int>() != N) throw std::runtime_error("blob is for N = " + j.at("N").dump());
        Model<RatFunc> m(N);
        Projectors<RatFunc> p{tensor_from(N, j.at("proj_s")), tensor_from(N, j.at("proj_a")), tensor_from(N, j.at("proj_t"))};
        MatrixData<RatFunc> d(m, tensor_from(N, j.at("rhat")), std::move(p));
        set(Status::hit);
        return d;
    } catch (const std::exception& e) {
        set(Status::corrupt, "corrupt cache blob " + path(N).string() + ": " + e.what());
        return std::nullopt;
    }
}

void MatrixCache::store(const MatrixData<RatFunc>& d) const {
    if (!enabled()) return;
    fs::create_directories(dir_);
    fs::path target = path(d.model.N());
    fs::path tmp = target;
    tmp += ".tmp" + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << serialize(d);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
    }
    fs::rename(tmp, target);
}

bool MatrixCache::clear(int N) const {
    if (!enabled()) return false;
    std::error_code ec;
    return fs::remove(path(N), ec);
}

MatrixCache::Result MatrixCache::get(int N) const {
    Status st;
    std::string w;
    if (auto d = load(N, &st, &w)) return {std::move(*d), st, {}};
    MatrixData<RatFunc> d{Model<RatFunc>(N)};
    if (enabled()) {
        try {
            store(d);
        } catch (const std::exception& e) {
            w += (w.empty() ? "" : "; ") + std::string(e.what());
        }
    }
    return {std::move(d), st, w};
}

}  // namespace qe
