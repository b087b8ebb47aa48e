#include "kfsusy/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace kfsusy {

void CheckReport::add_residual(std::string name, double value, double tol) {
    checks_.push_back({std::move(name), value, tol, Bound::upper, value < tol});
}

void CheckReport::add_lower_bound(std::string name, double value, double threshold) {
    checks_.push_back({std::move(name), value, threshold, Bound::lower, value > threshold});
}

void CheckReport::merge(const CheckReport& other, const std::string& prefix) {
    for (Check c : other.checks_) {
        if (!prefix.empty()) c.name = prefix + c.name;
        checks_.push_back(std::move(c));
    }
}

bool CheckReport::pass() const {
    return std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.pass; });
}

const Check& CheckReport::find(const std::string& name) const {
    auto it = std::find_if(checks_.begin(), checks_.end(), [&](const Check& c) { return c.name == name; });
    if (it == checks_.end()) throw std::out_of_range("no check named '" + name + "' in suite " + suite_);
    return *it;
}

std::vector<int> SpectrumReport::degeneracies() const {
    std::vector<int> out;
    out.reserve(levels.size());
    for (const auto& l : levels) out.push_back(l.degeneracy);
    return out;
}

void to_json(nlohmann::json& j, const Check& c) {
    j = nlohmann::json{{"name", c.name},
                       {"value", c.value},
                       {"tolerance", c.tolerance},
                       {"bound", c.bound == Bound::upper ? "upper" : "lower"},
                       {"pass", c.pass}};
}

void from_json(const nlohmann::json& j, Check& c) {
    j.at("name").get_to(c.name);
    j.at("value").get_to(c.value);
    j.at("tolerance").get_to(c.tolerance);
    c.bound = j.at("bound").get<std::string>() == "lower" ? Bound::lower : Bound::upper;
    j.at("pass").get_to(c.pass);
}

void to_json(nlohmann::json& j, const CheckReport& r) {
    j = nlohmann::json{{"suite", r.suite()}, {"k", r.k()}, {"checks", r.checks()}, {"pass", r.pass()}};
}

void from_json(const nlohmann::json& j, CheckReport& r) {
    r = CheckReport(j.at("suite").get<std::string>(), j.at("k").get<int>());
    for (const auto& c : j.at("checks")) r.add(c.get<Check>());
}

void to_json(nlohmann::json& j, const Level& l) {
    j = nlohmann::json{{"energy", l.energy}, {"degeneracy", l.degeneracy}};
}

void from_json(const nlohmann::json& j, Level& l) {
    j.at("energy").get_to(l.energy);
    j.at("degeneracy").get_to(l.degeneracy);
}

void to_json(nlohmann::json& j, const SpectrumReport& s) {
    j = nlohmann::json{{"k", s.k},
                       {"boson_cutoff", s.boson_cutoff},
                       {"levels", s.levels},
                       {"spacing", s.spacing},
                       {"uniform_spacing", s.uniform_spacing},
                       {"discarded", s.discarded}};
}

void from_json(const nlohmann::json& j, SpectrumReport& s) {
    j.at("k").get_to(s.k);
    j.at("boson_cutoff").get_to(s.boson_cutoff);
    j.at("levels").get_to(s.levels);
    j.at("spacing").get_to(s.spacing);
    j.at("uniform_spacing").get_to(s.uniform_spacing);
    j.at("discarded").get_to(s.discarded);
}

void print_table(std::ostream& os, const CheckReport& report) {
    char line[256];
    std::snprintf(line, sizeof line, "== %s (k=%d)\n", report.suite().c_str(), report.k());
    os << line;
    for (const auto& c : report.checks()) {
        std::snprintf(line, sizeof line, "  %-4s %-58s %11.3e %c %9.1e\n", c.pass ? "ok" : "FAIL",
                      c.name.c_str(), c.value, c.bound == Bound::upper ? '<' : '>', c.tolerance);
        os << line;
    }
    os << "  => " << (report.pass() ? "pass" : "FAIL") << '\n';
}

}  // namespace kfsusy
