#pragma once

#include <string>
#include <vector>

namespace hopfalg {

struct Check {
    std::string name;
    bool pass = true;
    std::string witness;  // first counterexample, empty on pass
    std::string detail;   // free-form note (dimensions, interpretations)
};

// Ordered list of named pass/fail results.
struct Report {
    std::vector<Check> checks;

    bool ok() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    void add(std::string name, bool pass, std::string witness = {}, std::string detail = {}) {
        checks.push_back({std::move(name), pass, std::move(witness), std::move(detail)});
    }
    void note(std::string name, std::string detail) { checks.push_back({std::move(name), true, {}, std::move(detail)}); }
    void merge(const Report& o, const std::string& prefix = {}) {
        for (auto c : o.checks) {
            if (!prefix.empty()) c.name = prefix + c.name;
            checks.push_back(std::move(c));
        }
    }
    const Check* first_failure() const {
        for (const auto& c : checks)
            if (!c.pass) return &c;
        return nullptr;
    }
    const Check* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
};

// Collects the first counterexample of a basis-level check loop.
class Witness {
public:
    void fail(const std::string& w) {
        if (!failed_) first_ = w;
        failed_ = true;
    }
    bool failed() const { return failed_; }
    bool ok() const { return !failed_; }
    const std::string& text() const { return first_; }
    void report(Report& r, const std::string& name, const std::string& detail = {}) const {
        r.add(name, !failed_, first_, detail);
    }

private:
    bool failed_ = false;
    std::string first_;
};

}  // namespace hopfalg
