#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "sympl/matrix.hpp"

namespace sympl::report {

using Json = nlohmann::json;

/// One CLI invocation. Serialized with sorted keys so identical runs give
/// identical text apart from `wall_time_ms`.
struct RunReport {
    std::string command;
    std::string input_file;
    std::size_t dimension = 0;
    double symmetry_residual = 0.0;
    double tol = 0.0;
    std::uint64_t seed = 0;
    std::string status = "ok";  // ok | rejected | error
    int exit_code = 0;
    std::optional<std::string> error_code;
    std::optional<std::string> error_message;
    Json outputs = Json::object();
    double wall_time_ms = 0.0;

    friend bool operator==(const RunReport&, const RunReport&) = default;
};

Json to_json(const RunReport& r);
RunReport from_json(const Json& j);

/// Compact JSON, sorted keys, trailing newline.
std::string render_json(const RunReport& r);
/// Aligned "key  value" lines with nested keys joined by '.'.
std::string render_human(const RunReport& r);

Json matrix_to_json(const DenseMatrix& m);

}  // namespace sympl::report
