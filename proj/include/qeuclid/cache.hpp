#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "qeuclid/rmatrix.hpp"

namespace qe {

// On-disk store for the symbolic R-hat and its projectors, one JSON file per N.
//
// Blobs carry a format version; a blob with another version, another N or a
// parse error is ignored and recomputed. Serialization is canonical, so the
// same matrices always produce the same bytes.
class MatrixCache {
public:
    static constexpr int kFormatVersion = 1;
    static constexpr const char* kEnvVar = "QEUCLID_CACHE_DIR";

    // dir empty: caching disabled
    explicit MatrixCache(std::filesystem::path dir = {}, int version = kFormatVersion)
        : dir_(std::move(dir)), version_(version) {}

    // --cache-dir, else $QEUCLID_CACHE_DIR, else $XDG_CACHE_HOME/qeuclid or ~/.cache/qeuclid
    static std::filesystem::path default_dir(const std::string& flag = {});

    bool enabled() const { return !dir_.empty(); }
    const std::filesystem::path& dir() const { return dir_; }
    std::filesystem::path path(int N) const;

    enum class Status { disabled, hit, miss, stale, corrupt };
    struct Result {
        MatrixData<RatFunc> data;
        Status status;
        std::string warning;
    };

    // Load, or compute and store on a miss.
    Result get(int N) const;
    std::optional<MatrixData<RatFunc>> load(int N, Status* why = nullptr, std::string* warning = nullptr) const;
    void store(const MatrixData<RatFunc>& d) const;
    bool clear(int N) const;

    std::string serialize(const MatrixData<RatFunc>& d) const;

private:
    std::filesystem::path dir_;
    int version_;
};

std::string to_string(MatrixCache::Status s);

}  // namespace qe
