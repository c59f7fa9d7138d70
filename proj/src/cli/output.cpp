#include "feedcool/cli/output.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <system_error>

#include <unistd.h>

#include "feedcool/errors.hpp"

namespace feedcool::cli {

using nlohmann::json;

std::string format_number(double v, int precision) {
    if (!std::isfinite(v)) throw NumericalError("non-finite value in output");
    if (v == 0.0) v = 0.0;  // drop the sign of -0
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, precision);
    return std::string(buf, res.ptr);
}

std::string quote_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

std::string render_csv(const std::string& command, const json& config, const Table& t, int precision) {
    std::string out = "# feedcool " + command + "\n";
    out += "# config: " + config.dump() + "\n";
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        if (i) out += ',';
        out += quote_field(t.columns[i]);
    }
    out += '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += quote_field(format_number(row[i], precision));
        }
        out += '\n';
    }
    return out;
}

std::string render_json(const std::string& command, const json& config, const Table& t, int precision) {
    // Values pass through the declared precision so both formats carry the same digits.
    json rows = json::array();
    for (const auto& row : t.rows) {
        json obj = json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            const std::string s = format_number(row[i], precision);
            double rounded = 0.0;
            std::from_chars(s.data(), s.data() + s.size(), rounded);
            obj[t.columns[i]] = rounded;
        }
        rows.push_back(std::move(obj));
    }
    json doc = {{"command", command}, {"config", config}, {"columns", t.columns}, {"rows", rows}};
    return doc.dump(2) + "\n";
}

std::string render(const std::string& command, const RunConfig& cfg, const Table& t) {
    const json config = to_json(cfg);
    return cfg.output.format == Format::csv ? render_csv(command, config, t, cfg.output.precision)
                                            : render_json(command, config, t, cfg.output.precision);
}

void write_atomically(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw ConfigError("--out: cannot write '" + path + "'");
        f.write(content.data(), static_cast<std::streamsize>(content.size()));
        f.flush();
        if (!f) {
            std::error_code ignored;
            fs::remove(tmp, ignored);
            throw ConfigError("--out: write failed for '" + path + "'");
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        std::error_code ignored;
        fs::remove(tmp, ignored);
        throw ConfigError("--out: cannot replace '" + path + "': " + ec.message());
    }
}

void emit(const std::string& command, const RunConfig& cfg, const Table& t, std::ostream& out) {
    const std::string text = render(command, cfg, t);
    if (cfg.output.path.empty())
        out << text;
    else
        write_atomically(cfg.output.path, text);
}

}  // namespace feedcool::cli
