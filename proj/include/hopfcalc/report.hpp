#pragma once

// Check reports: one entry per verified identity.

#include <string>
#include <utility>
#include <vector>

namespace hopfcalc {

enum class Status { pass, fail, window_verified, sampled };

inline const char* status_name(Status s) {
    switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::window_verified: return "window-verified";
    case Status::sampled: return "sampled";
    }
    return "fail";
}

struct CheckEntry {
    std::string name;
    Status status = Status::pass;
    std::string witness;  // empty when there is none
    std::string detail;
};

struct CheckReport {
    std::string suite;
    std::vector<CheckEntry> checks;

    bool ok() const {
        for (const auto& c : checks)
            if (c.status == Status::fail) return false;
        return true;
    }

    const CheckEntry* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }

    bool passed(const std::string& name) const {
        const CheckEntry* e = find(name);
        return e && e->status != Status::fail;
    }

    void add(std::string name, Status s, std::string witness = {}, std::string detail = {}) {
        checks.push_back({std::move(name), s, std::move(witness), std::move(detail)});
    }

    /// Records a pass/fail check; windowed checks report window-verified on success.
    void record(std::string name, bool good, bool windowed, std::string witness = {}, std::string detail = {}) {
        Status s = good ? (windowed ? Status::window_verified : Status::pass) : Status::fail;
        add(std::move(name), s, good ? std::string() : std::move(witness), std::move(detail));
    }

    void merge(const CheckReport& o, const std::string& prefix = {}) {
        for (auto c : o.checks) {
            if (!prefix.empty()) c.name = prefix + c.name;
            checks.push_back(std::move(c));
        }
    }
};

/// Accumulates the first failing witness of a sweep.
class Sweep {
public:
    explicit Sweep(bool windowed = false) : windowed_(windowed) {}
    void fail(const std::string& w) {
        if (good_) witness_ = w;
        good_ = false;
        ++failures_;
    }
    void check(bool cond, const std::string& w) {
        ++count_;
        if (!cond) fail(w);
    }
    template <class F>
    void check_lazy(bool cond, F&& describe) {
        ++count_;
        if (!cond) fail(describe());
    }
    bool good() const { return good_; }
    std::size_t count() const { return count_; }
    void into(CheckReport& r, std::string name) const {
        r.record(std::move(name), good_, windowed_, witness_, std::to_string(count_) + " instances");
    }

private:
    bool windowed_;
    bool good_ = true;
    std::size_t count_ = 0;
    std::size_t failures_ = 0;
    std::string witness_;
};

} // namespace hopfcalc
