#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace esp {

enum class Status { Pass, Fail, HypothesisViolated };

std::string to_string(Status s);

// One verification outcome. A Fail must carry a witness.
struct Check {
    std::string name;
    Status status = Status::Pass;
    std::string witness;
};

using CheckList = std::vector<Check>;

inline Check pass(std::string name, std::string witness = "") {
    return Check{std::move(name), Status::Pass, std::move(witness)};
}
Check fail(std::string name, std::string witness);
inline Check hypothesis_violated(std::string name, std::string witness = "") {
    return Check{std::move(name), Status::HypothesisViolated, std::move(witness)};
}

// Machine-readable run report. The canonical JSON form is deterministic for a
// fixed seed and flag set: checks are sorted by name and the elapsed time is
// kept out of it (it only appears in the human summary).
struct Report {
    std::string command;
    std::vector<std::pair<std::string, std::string>> parameters;
    CheckList checks;
    std::uint64_t seed = 0;
    double elapsed_ms = 0.0;

    void param(std::string key, std::string value);
    void add(Check c);
    void add(CheckList cs);

    bool any_fail() const;

    std::string to_json() const;
    std::string summary() const;
};

} // namespace esp
