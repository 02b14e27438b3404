#include "sympl/report.hpp"

#include <algorithm>
#include <sstream>
#include <utility>
#include <vector>

namespace sympl::report {

Json to_json(const RunReport& r) {
    Json j;
    j["command"] = r.command;
    j["input"] = {{"file", r.input_file},
                  {"dimension", r.dimension},
                  {"symmetry_residual", r.symmetry_residual}};
    j["tolerances"] = {{"tol", r.tol}};
    j["seed"] = r.seed;
    j["status"] = r.status;
    j["exit_code"] = r.exit_code;
    if (r.error_code)
        j["error"] = {{"code", *r.error_code}, {"message", r.error_message.value_or("")}};
    j["outputs"] = r.outputs;
    j["wall_time_ms"] = r.wall_time_ms;
    return j;
}

RunReport from_json(const Json& j) {
    RunReport r;
    r.command = j.at("command").get<std::string>();
    const auto& in = j.at("input");
    r.input_file = in.at("file").get<std::string>();
    r.dimension = in.at("dimension").get<std::size_t>();
    r.symmetry_residual = in.at("symmetry_residual").get<double>();
    r.tol = j.at("tolerances").at("tol").get<double>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.status = j.at("status").get<std::string>();
    r.exit_code = j.at("exit_code").get<int>();
    if (j.contains("error")) {
        r.error_code = j["error"].at("code").get<std::string>();
        r.error_message = j["error"].at("message").get<std::string>();
    }
    r.outputs = j.at("outputs");
    r.wall_time_ms = j.at("wall_time_ms").get<double>();
    return r;
}

std::string render_json(const RunReport& r) { return to_json(r).dump() + "\n"; }

namespace {

void flatten(const Json& j, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& rows) {
    if (j.is_object()) {
        for (const auto& [key, value] : j.items())
            flatten(value, prefix.empty() ? key : prefix + "." + key, rows);
        return;
    }
    // Matrices (arrays of arrays) get one line per row.
    if (j.is_array() && !j.empty() && j.front().is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i)
            rows.emplace_back(prefix + "[" + std::to_string(i) + "]", j[i].dump());
        return;
    }
    if (j.is_array() && !j.empty() && j.front().is_object()) {
        for (std::size_t i = 0; i < j.size(); ++i)
            flatten(j[i], prefix + "[" + std::to_string(i) + "]", rows);
        return;
    }
    rows.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
}

}  // namespace

std::string render_human(const RunReport& r) {
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(to_json(r), "", rows);
    std::size_t width = 0;
    for (const auto& row : rows) width = std::max(width, row.first.size());
    std::ostringstream out;
    for (const auto& [key, value] : rows)
        out << key << std::string(width - key.size() + 2, ' ') << value << '\n';
    return out.str();
}

Json matrix_to_json(const DenseMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        std::vector<double> row(m.row(i).begin(), m.row(i).end());
        for (double& v : row)
            if (v == 0.0) v = 0.0;  // drop the sign of negative zero
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace sympl::report
