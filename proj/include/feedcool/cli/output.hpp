#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "feedcool/cli/config.hpp"

namespace feedcool::cli {

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

// Shortest general-format representation with `precision` significant digits.
std::string format_number(double v, int precision);

// RFC 4180 field quoting: only when the field holds a comma, quote or line break.
std::string quote_field(const std::string& s);

// `#` metadata lines (command, resolved config as one-line JSON), header row, rows.
// Throws NumericalError on a non-finite value.
std::string render_csv(const std::string& command, const nlohmann::json& config, const Table& t, int precision);

// {"command", "config", "columns", "rows": [ {column: value, ...}, ... ]}
std::string render_json(const std::string& command, const nlohmann::json& config, const Table& t, int precision);

std::string render(const std::string& command, const RunConfig& cfg, const Table& t);

// Write-then-rename. Throws ConfigError when the target cannot be written.
void write_atomically(const std::string& path, const std::string& content);

// To cfg.output.path, or `out` when the path is empty.
void emit(const std::string& command, const RunConfig& cfg, const Table& t, std::ostream& out);

}  // namespace feedcool::cli
