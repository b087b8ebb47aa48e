#include "cli.hpp"

#include <charconv>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "kfsusy/coherent.hpp"
#include "kfsusy/fracsusy.hpp"
#include "kfsusy/grassmann.hpp"
#include "kfsusy/kfermion.hpp"
#include "kfsusy/quon.hpp"
#include "kfsusy/report.hpp"

namespace kfsusy::cli {

namespace {

constexpr int kMinK = 2;
constexpr int kMaxK = 12;

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

double parse_double(std::string_view text) {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
        throw UsageError("not a number: '" + std::string(text) + "'");
    }
    return value;
}

struct Options {
    std::string k = "3";
    int cutoff = 0;  // 0: command default
    double tol = kDefaultTol;
    std::string suite = "all";
    std::string format = "table";
    std::string z = "0.7,0.4";
    int levels = 4;
    std::string epsilons = "1e-2,1e-3,1e-4";
};

int resolve_cutoff(const Options& opt, int k, int fallback) {
    const int cutoff = opt.cutoff > 0 ? opt.cutoff : fallback;
    if (cutoff < k + 3) {
        throw UsageError("--boson-cutoff must be >= k + 3 = " + std::to_string(k + 3) + ", got " +
                         std::to_string(cutoff));
    }
    return cutoff;
}

void emit(std::ostream& out, const std::vector<CheckReport>& reports, const std::string& format) {
    bool all = true;
    for (const auto& r : reports) all = all && r.pass();
    if (format == "json") {
        out << nlohmann::json{{"reports", reports}, {"pass", all}}.dump(2) << '\n';
    } else {
        for (const auto& r : reports) print_table(out, r);
        out << (all ? "ALL PASS" : "FAILED") << '\n';
    }
}

bool all_pass(const std::vector<CheckReport>& reports) {
    for (const auto& r : reports) {
        if (!r.pass()) return false;
    }
    return true;
}

int cmd_verify(const Options& opt, std::ostream& out) {
    const std::vector<int> ks = parse_k(opt.k);
    const Complex z = parse_complex(opt.z);
    const bool every = opt.suite == "all";
    std::vector<CheckReport> reports;
    for (int k : ks) {
        const int cutoff = resolve_cutoff(opt, k, kDefaultBosonCutoff);
        if (every || opt.suite == "algebra") reports.push_back(verify_fk_relations(k, opt.tol));
        if (every || opt.suite == "grassmann") reports.push_back(verify_realization(k, opt.tol));
        if (every || opt.suite == "coherent") reports.push_back(coherent_suite(k, z, cutoff, opt.tol));
        if (every || opt.suite == "susy") reports.push_back(susy_suite(k, cutoff, opt.tol));
    }
    emit(out, reports, opt.format);
    return all_pass(reports) ? kExitOk : kExitFailed;
}

int cmd_coherent(const Options& opt, std::ostream& out) {
    const std::vector<int> ks = parse_k(opt.k);
    const Complex z = parse_complex(opt.z);
    std::vector<CheckReport> reports;
    for (int k : ks) reports.push_back(coherent_suite(k, z, resolve_cutoff(opt, k, kDefaultBosonCutoff), opt.tol));
    emit(out, reports, opt.format);
    return all_pass(reports) ? kExitOk : kExitFailed;
}

int cmd_spectrum(const Options& opt, std::ostream& out) {
    if (opt.levels < 1) throw UsageError("--levels must be >= 1");
    const std::vector<int> ks = parse_k(opt.k);
    std::vector<SpectrumReport> spectra;
    for (int k : ks) {
        SpectrumReport s = spectrum(k, resolve_cutoff(opt, k, kDefaultBosonCutoff));
        if (static_cast<int>(s.levels.size()) < opt.levels) {
            throw UsageError("only " + std::to_string(s.levels.size()) + " complete levels at boson cutoff " +
                             std::to_string(s.boson_cutoff) + " for k=" + std::to_string(k) +
                             "; raise --boson-cutoff");
        }
        s.levels.resize(static_cast<std::size_t>(opt.levels));
        spectra.push_back(std::move(s));
    }
    if (opt.format == "json") {
        const nlohmann::json j = spectra.size() == 1 ? nlohmann::json(spectra.front()) : nlohmann::json(spectra);
        out << j.dump(2) << '\n';
    } else {
        char line[128];
        for (const auto& s : spectra) {
            std::snprintf(line, sizeof line, "== spectrum k=%d (boson cutoff %d)\n", s.k, s.boson_cutoff);
            out << line;
            for (const auto& l : s.levels) {
                std::snprintf(line, sizeof line, "  E = %12.6f   degeneracy %d\n", l.energy, l.degeneracy);
                out << line;
            }
            std::snprintf(line, sizeof line, "  spacing %.6f (%s)\n", s.spacing,
                          s.uniform_spacing ? "uniform" : "non-uniform");
            out << line;
        }
    }
    return kExitOk;
}

int cmd_quon_limit(const Options& opt, std::ostream& out) {
    const std::vector<int> ks = parse_k(opt.k);
    const std::vector<double> eps = parse_list(opt.epsilons);
    for (double e : eps) {
        if (!(e > 0.0 && e < 0.5)) throw UsageError("--epsilons entries must lie in (0, 0.5)");
    }
    const int cutoff = opt.cutoff > 0 ? opt.cutoff : kDefaultLimitCutoff;
    if (cutoff < 3) throw UsageError("--boson-cutoff must be >= 3 for the limit study");

    std::vector<LimitReport> reports;
    for (int k : ks) reports.push_back(limit_study(k, eps, cutoff));

    bool all = true;
    for (const auto& r : reports) all = all && r.checks.pass();
    if (opt.format == "json") {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : reports) {
            nlohmann::json rows = nlohmann::json::array();
            for (const auto& row : r.rows) {
                rows.push_back({{"eps", row.eps},
                                {"boson_deviation", row.boson_deviation},
                                {"mixed_deviation", row.mixed_deviation},
                                {"fermion_deviation", row.fermion_deviation},
                                {"cauchy", row.cauchy}});
            }
            arr.push_back({{"k", r.k}, {"boson_cutoff", r.boson_cutoff}, {"rows", rows}, {"checks", r.checks}});
        }
        out << nlohmann::json{{"studies", arr}, {"pass", all}}.dump(2) << '\n';
    } else {
        char line[160];
        for (const auto& r : reports) {
            std::snprintf(line, sizeof line, "== Q-uon limit k=%d (boson cutoff %d)\n", r.k, r.boson_cutoff);
            out << line;
            out << "       eps    |[b-,b+]-1|        |[b,f]|   |f rel - 1|     |db|\n";
            for (const auto& row : r.rows) {
                std::snprintf(line, sizeof line, "  %9.2e  %13.6e  %13.6e  %12.5e  %9.2e\n", row.eps,
                              row.boson_deviation, row.mixed_deviation, row.fermion_deviation,
                              row.cauchy < 0 ? 0.0 : row.cauchy);
                out << line;
            }
            print_table(out, r.checks);
        }
        out << (all ? "ALL PASS" : "FAILED") << '\n';
    }
    return all ? kExitOk : kExitFailed;
}

}  // namespace

std::vector<int> parse_k(const std::string& text) {
    if (text == "all") return {2, 3, 4, 5, 6};
    int k = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), k);
    if (ec != std::errc() || ptr != text.data() + text.size()) throw UsageError("--k: not an integer: " + text);
    if (k < kMinK || k > kMaxK) {
        throw UsageError("--k must lie in [" + std::to_string(kMinK) + ", " + std::to_string(kMaxK) + "], got " +
                         text);
    }
    return {k};
}

std::complex<double> parse_complex(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) return {parse_double(text), 0.0};
    return {parse_double(std::string_view(text).substr(0, comma)),
            parse_double(std::string_view(text).substr(comma + 1))};
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::string_view rest = text;
    while (true) {
        const auto comma = rest.find(',');
        out.push_back(parse_double(rest.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"k-fermions, braided Grassmann coherent states and the Z_k-graded supersymmetric oscillator"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--k", opt.k, "order k in [2, 12], or 'all' for 2..6");
        sub->add_option("--format", opt.format, "output format")->check(CLI::IsMember({"table", "json"}));
    };

    auto* verify = app.add_subcommand("verify", "run identity suites");
    add_common(verify);
    verify->add_option("--boson-cutoff", opt.cutoff, "boson truncation R (default 24)");
    verify->add_option("--tol", opt.tol, "residual tolerance (default 1e-10)");
    verify->add_option("--suite", opt.suite, "suite to run")
        ->check(CLI::IsMember({"algebra", "grassmann", "coherent", "susy", "all"}));
    verify->add_option("--z", opt.z, "bosonic coherent-state label 're,im' for the coherent suite");

    auto* spec = app.add_subcommand("spectrum", "energy levels of the Z_k-graded oscillator");
    add_common(spec);
    spec->add_option("--levels", opt.levels, "number of levels to print (default 4)");
    spec->add_option("--boson-cutoff", opt.cutoff, "boson truncation R (default 24)");

    auto* coh = app.add_subcommand("coherent", "coherent-state identities");
    add_common(coh);
    coh->add_option("--z", opt.z, "bosonic label 're,im' (default 0.7,0.4)");
    coh->add_option("--boson-cutoff", opt.cutoff, "boson truncation R (default 24)");
    coh->add_option("--tol", opt.tol, "residual tolerance (default 1e-10)");

    auto* quon = app.add_subcommand("quon-limit", "Q-uon -> boson + k-fermion limit table");
    add_common(quon);
    quon->add_option("--epsilons", opt.epsilons, "comma separated eps ladder (default 1e-2,1e-3,1e-4)");
    quon->add_option("--boson-cutoff", opt.cutoff, "boson truncation R (default 6)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::Success& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (verify->parsed()) return cmd_verify(opt, out);
        if (spec->parsed()) return cmd_spectrum(opt, out);
        if (coh->parsed()) return cmd_coherent(opt, out);
        if (quon->parsed()) return cmd_quon_limit(opt, out);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailed;
    }
    return kExitUsage;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, out, err);
}

}  // namespace kfsusy::cli
