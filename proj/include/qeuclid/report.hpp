#pragma once

#include <chrono>
#include <string>
#include <vector>

namespace qe {

struct CheckResult {
    std::string id;
    int N = 0;
    std::string config;   // e.g. "unbarred qR transcendental symbolic"
    bool pass = false;
    double ms = 0;
    std::string witness;  // first offending component on failure
    std::string value;    // reported quantity, if the check computes one
};

// Accumulates failures for one identity; the first nonzero residual becomes
// the witness.
class Residual {
public:
    template <class T>
    void expect_zero(const T& r, const std::string& where) {
        ++count_;
        if (!r.is_zero()) fail(where + ": " + r.str());
    }
    void expect(bool ok, const std::string& where) {
        ++count_;
        if (!ok) fail(where);
    }
    void fail(const std::string& w) {
        ++failures_;
        if (witness_.empty()) witness_ = w;
    }
    bool ok() const { return failures_ == 0; }
    long count() const { return count_; }
    long failures() const { return failures_; }
    const std::string& witness() const { return witness_; }

private:
    long count_ = 0, failures_ = 0;
    std::string witness_;
};

class Stopwatch {
public:
    Stopwatch() : t0_(std::chrono::steady_clock::now()) {}
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0_).count();
    }

private:
    std::chrono::steady_clock::time_point t0_;
};

inline CheckResult make_result(const std::string& id, int N, const std::string& config, const Residual& r,
                               const Stopwatch& sw, std::string value = {}) {
    CheckResult c;
    c.id = id;
    c.N = N;
    c.config = config;
    c.pass = r.ok();
    c.ms = sw.ms();
    if (!r.ok()) c.witness = r.witness() + " (" + std::to_string(r.failures()) + "/" + std::to_string(r.count()) + " failing)";
    c.value = std::move(value);
    return c;
}

}  // namespace qe
