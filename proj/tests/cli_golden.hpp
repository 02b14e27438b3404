#pragma once

// CLI golden cases shared by the unit tests and the acceptance binary.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sympl/cli.hpp"

namespace sympl::testing {

struct CliResult {
    int exit_code = 0;
    std::string out;
    std::string err;
};

inline CliResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    CliResult r;
    r.exit_code = cli::run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

inline std::string fixture(const std::string& name) {
    return (std::filesystem::path(SYMPL_FIXTURE_DIR) / name).string();
}

struct GoldenCase {
    std::string name;
    std::vector<std::string> args;
    int expected_exit = 0;
};

inline std::vector<GoldenCase> golden_cases() {
    std::vector<GoldenCase> cases;
    const std::pair<std::string, int> fixtures[] = {{"diag21", 0}, {"diagIn0", 2}};
    for (const auto& [stem, rejected] : fixtures) {
        const std::string in = fixture(stem + ".mtx");
        cases.push_back({"spectrum_" + stem, {"spectrum", "--input", in}, rejected});
        cases.push_back({"diagonalize_" + stem, {"diagonalize", "--input", in}, rejected});
        cases.push_back({"check-kernel_" + stem, {"check-kernel", "--input", in}, rejected});
        // The pencil exists for every spsd matrix.
        cases.push_back({"pencil_" + stem, {"pencil", "--input", in}, 0});
        cases.push_back({"tracemin-verify_" + stem,
                         {"tracemin-verify", "--input", in, "--k", "1", "--samples", "200", "--seed", "7"},
                         rejected});
    }
    return cases;
}

inline std::filesystem::path golden_path(const GoldenCase& c) {
    return std::filesystem::path(SYMPL_GOLDEN_DIR) / (c.name + ".json");
}

inline nlohmann::json without_timing(nlohmann::json j) {
    j.erase("wall_time_ms");
    return j;
}

/// Structural comparison; numbers may differ by rtol relative to max(1, |expected|).
/// Returns an empty string on match, otherwise the first differing path.
inline std::string json_diff(const nlohmann::json& expected, const nlohmann::json& actual, double rtol,
                             const std::string& path = "") {
    if (expected.is_number() && actual.is_number()) {
        const double e = expected.get<double>(), a = actual.get<double>();
        return std::abs(e - a) <= rtol * std::max(1.0, std::abs(e)) ? "" : path + ": number";
    }
    if (expected.type() != actual.type()) return path + ": type";
    if (expected.is_object()) {
        if (expected.size() != actual.size()) return path + ": key count";
        for (auto it = expected.begin(); it != expected.end(); ++it) {
            if (!actual.contains(it.key())) return path + "." + it.key() + ": missing";
            auto d = json_diff(it.value(), actual.at(it.key()), rtol, path + "." + it.key());
            if (!d.empty()) return d;
        }
        return "";
    }
    if (expected.is_array()) {
        if (expected.size() != actual.size()) return path + ": length";
        for (std::size_t i = 0; i < expected.size(); ++i) {
            auto d = json_diff(expected[i], actual[i], rtol, path + "[" + std::to_string(i) + "]");
            if (!d.empty()) return d;
        }
        return "";
    }
    return expected == actual ? "" : path + ": value";
}

/// Checks one case against its golden file, rewriting the file instead when
/// SYMPL_UPDATE_GOLDEN is set. Empty string means pass.
inline std::string check_golden(const GoldenCase& c) {
    const auto r = run_cli(c.args);
    if (r.exit_code != c.expected_exit)
        return c.name + ": exit " + std::to_string(r.exit_code) + ", expected " +
               std::to_string(c.expected_exit);
    const auto actual = without_timing(nlohmann::json::parse(r.out));
    const auto path = golden_path(c);
    if (std::getenv("SYMPL_UPDATE_GOLDEN")) {
        std::ofstream(path) << actual.dump(2) << '\n';
        return "";
    }
    std::ifstream in(path);
    if (!in) return c.name + ": missing golden file " + path.string();
    const auto expected = nlohmann::json::parse(in);
    const auto d = json_diff(expected, actual, 1e-9);
    return d.empty() ? "" : c.name + ": " + d;
}

/// Report text with the timing value blanked; everything else is kept byte for byte.
inline std::string strip_timing_text(const std::string& text) {
    const std::string key = "\"wall_time_ms\":";
    const auto pos = text.find(key);
    if (pos == std::string::npos) return text;
    auto end = pos + key.size();
    while (end < text.size() && text[end] != ',' && text[end] != '}') ++end;
    return text.substr(0, pos + key.size()) + text.substr(end);
}

/// Two runs of the same command line print the same bytes apart from the
/// timing value.
inline bool deterministic(const std::vector<std::string>& args) {
    const auto a = run_cli(args), b = run_cli(args);
    return a.exit_code == b.exit_code && !a.out.empty() &&
           strip_timing_text(a.out) == strip_timing_text(b.out);
}

}  // namespace sympl::testing
