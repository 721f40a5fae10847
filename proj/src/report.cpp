#include "esp/report.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace esp {

std::string to_string(Status s) {
    switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::HypothesisViolated: return "hypothesis-violated";
    }
    return "?";
}

Check fail(std::string name, std::string witness) {
    if (witness.empty())
        throw std::logic_error("fail check without witness: " + name);
    return Check{std::move(name), Status::Fail, std::move(witness)};
}

void Report::param(std::string key, std::string value) {
    parameters.emplace_back(std::move(key), std::move(value));
}

void Report::add(Check c) {
    if (c.status == Status::Fail && c.witness.empty())
        throw std::logic_error("fail check without witness: " + c.name);
    checks.push_back(std::move(c));
}

void Report::add(CheckList cs) {
    for (auto& c : cs)
        add(std::move(c));
}

bool Report::any_fail() const {
    return std::any_of(checks.begin(), checks.end(),
                       [](const Check& c) { return c.status == Status::Fail; });
}

std::string Report::to_json() const {
    nlohmann::ordered_json j;
    j["command"] = command;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [k, v] : parameters)
        params[k] = v;
    j["parameters"] = params;

    CheckList sorted = checks;
    std::sort(sorted.begin(), sorted.end(),
              [](const Check& a, const Check& b) { return a.name < b.name; });
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& c : sorted) {
        nlohmann::ordered_json jc;
        jc["name"] = c.name;
        jc["status"] = to_string(c.status);
        if (!c.witness.empty())
            jc["witness"] = c.witness;
        arr.push_back(jc);
    }
    j["checks"] = arr;
    j["seed"] = seed;
    return j.dump(2) + "\n";
}

std::string Report::summary() const {
    std::ostringstream os;
    os << "== " << command;
    for (const auto& [k, v] : parameters)
        os << " " << k << "=" << v;
    os << " (seed " << seed << ")\n";
    CheckList sorted = checks;
    std::sort(sorted.begin(), sorted.end(),
              [](const Check& a, const Check& b) { return a.name < b.name; });
    for (const auto& c : sorted) {
        os << "  [" << to_string(c.status) << "] " << c.name;
        if (!c.witness.empty())
            os << "  -- " << c.witness;
        os << "\n";
    }
    os << (any_fail() ? "RESULT: FAIL" : "RESULT: OK") << " (" << elapsed_ms << " ms)\n";
    return os.str();
}

} // namespace esp
