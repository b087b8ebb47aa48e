#pragma once

// Named residual checks and spectrum summaries, with JSON round-tripping.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace kfsusy {

enum class Bound {
    upper,  ///< passes when value < tolerance (a residual)
    lower,  ///< passes when value > tolerance (a non-triviality witness)
};

struct Check {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    Bound bound = Bound::upper;
    bool pass = false;

    bool operator==(const Check&) const = default;
};

class CheckReport {
public:
    CheckReport() = default;
    CheckReport(std::string suite, int k) : suite_(std::move(suite)), k_(k) {}

    const std::string& suite() const { return suite_; }
    int k() const { return k_; }
    const std::vector<Check>& checks() const { return checks_; }

    /// Record a residual; passes iff value < tol (NaN fails).
    void add_residual(std::string name, double value, double tol);
    /// Record a quantity that must exceed `threshold`.
    void add_lower_bound(std::string name, double value, double threshold);
    void add(Check check) { checks_.push_back(std::move(check)); }
    /// Append every check of `other`, prefixing names with `prefix` when non-empty.
    void merge(const CheckReport& other, const std::string& prefix = "");

    bool pass() const;
    const Check& find(const std::string& name) const;
    double value(const std::string& name) const { return find(name).value; }

    bool operator==(const CheckReport&) const = default;

private:
    std::string suite_;
    int k_ = 0;
    std::vector<Check> checks_;
};

struct Level {
    double energy = 0.0;
    int degeneracy = 0;

    bool operator==(const Level&) const = default;
};

struct SpectrumReport {
    int k = 0;
    int boson_cutoff = 0;
    std::vector<Level> levels;  ///< strictly ascending energies
    double spacing = 0.0;       ///< gap between the two lowest levels
    bool uniform_spacing = false;
    int discarded = 0;  ///< labels dropped as truncation-contaminated

    std::vector<int> degeneracies() const;
    bool operator==(const SpectrumReport&) const = default;
};

void to_json(nlohmann::json& j, const Check& c);
void from_json(const nlohmann::json& j, Check& c);
void to_json(nlohmann::json& j, const CheckReport& r);
void from_json(const nlohmann::json& j, CheckReport& r);
void to_json(nlohmann::json& j, const Level& l);
void from_json(const nlohmann::json& j, Level& l);
void to_json(nlohmann::json& j, const SpectrumReport& s);
void from_json(const nlohmann::json& j, SpectrumReport& s);

/// Fixed-width table, one line per check plus a summary line.
void print_table(std::ostream& os, const CheckReport& report);

}  // namespace kfsusy
