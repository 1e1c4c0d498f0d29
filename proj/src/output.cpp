#include "catlab/output.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "catlab/errors.hpp"
#include "json.hpp"

namespace catlab {

namespace {

std::string format_double(double v) {
    if (std::isnan(v)) throw InvariantViolation("output: NaN cell");
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    std::string s(buf, res.ptr);
    // Keep real cells distinguishable from integer cells on re-parse.
    if (s.find('.') == std::string::npos && s.find('e') == std::string::npos)
        s += ".0";
    return s;
}

bool looks_numeric(const std::string& s) {
    if (s.empty()) return false;
    if (s == "inf" || s == "-inf") return true;
    const char* p = s.c_str();
    char* end = nullptr;
    std::strtod(p, &end);
    return end == p + s.size();
}

bool needs_quotes(const std::string& s) {
    if (looks_numeric(s)) return true;
    return s.find_first_of(",\"\n") != std::string::npos;
}

void append_csv_field(std::string& out, const Cell& cell) {
    if (const auto* s = std::get_if<std::string>(&cell)) {
        if (needs_quotes(*s)) {
            out += '"';
            for (const char c : *s) {
                if (c == '"') out += '"';
                out += c;
            }
            out += '"';
        } else {
            out += *s;
        }
        return;
    }
    out += format_cell(cell);
}

struct RawField {
    std::string text;
    bool quoted = false;
};

// Character-level record splitter: quoted fields may contain commas, escaped
// quotes, and newlines, so splitting cannot be line-based.
std::vector<std::vector<RawField>> split_records(const std::string& text) {
    std::vector<std::vector<RawField>> records;
    std::vector<RawField> rec;
    RawField cur;
    bool in_quotes = false;
    const auto end_field = [&] {
        rec.push_back(std::move(cur));
        cur = {};
    };
    const auto end_record = [&] {
        if (!cur.text.empty() && !cur.quoted && cur.text.back() == '\r')
            cur.text.pop_back();
        end_field();
        records.push_back(std::move(rec));
        rec.clear();
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    cur.text += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                cur.text += c;
            }
        } else if (c == '"') {
            in_quotes = true;
            cur.quoted = true;
        } else if (c == ',') {
            end_field();
        } else if (c == '\n') {
            end_record();
        } else {
            cur.text += c;
        }
    }
    if (!cur.text.empty() || cur.quoted || !rec.empty()) end_record();
    return records;
}

// Unquoted fields are typed by content; quoted fields are always strings.
Cell field_to_cell(const RawField& f) {
    if (f.quoted) return f.text;
    if (f.text == "inf") return std::numeric_limits<double>::infinity();
    if (f.text == "-inf") return -std::numeric_limits<double>::infinity();
    if (!f.text.empty() && f.text.find_first_of(".eE") == std::string::npos) {
        const char* b = f.text.c_str();
        std::int64_t v = 0;
        const auto res = std::from_chars(b, b + f.text.size(), v);
        if (res.ec == std::errc() && res.ptr == b + f.text.size()) return v;
        return f.text;
    }
    if (looks_numeric(f.text)) return std::strtod(f.text.c_str(), nullptr);
    return f.text;
}

nlohmann::json cell_to_json(const Cell& cell) {
    if (const auto* i = std::get_if<std::int64_t>(&cell)) return *i;
    if (const auto* d = std::get_if<double>(&cell)) {
        if (std::isnan(*d)) throw InvariantViolation("output: NaN cell");
        if (std::isinf(*d)) return *d > 0 ? "inf" : "-inf";
        return *d;
    }
    return std::get<std::string>(cell);
}

}  // namespace

std::string format_cell(const Cell& cell) {
    if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
    if (const auto* d = std::get_if<double>(&cell)) return format_double(*d);
    return std::get<std::string>(cell);
}

std::string to_csv(const Table& table) {
    std::string out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) out += ',';
        append_csv_field(out, Cell{table.columns[c]});
    }
    out += '\n';
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size())
            throw InvariantViolation("output: row width != header width");
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            append_csv_field(out, row[c]);
        }
        out += '\n';
    }
    return out;
}

Table parse_csv(const std::string& text) {
    Table t;
    const auto records = split_records(text);
    bool header = true;
    for (const auto& rec : records) {
        if (rec.size() == 1 && rec[0].text.empty() && !rec[0].quoted)
            continue;  // blank line
        if (header) {
            for (const auto& f : rec) t.columns.push_back(f.text);
            header = false;
        } else {
            std::vector<Cell> cells;
            cells.reserve(rec.size());
            for (const auto& f : rec) cells.push_back(field_to_cell(f));
            t.rows.push_back(std::move(cells));
        }
    }
    return t;
}

bool cells_equal(const Cell& a, const Cell& b) {
    if (a.index() != b.index()) return false;
    if (const auto* da = std::get_if<double>(&a)) {
        const double db = std::get<double>(b);
        if (std::isinf(*da) || std::isinf(db)) return *da == db;
        return *da == db;
    }
    return a == b;
}

bool tables_equal(const Table& a, const Table& b) {
    if (a.columns != b.columns || a.rows.size() != b.rows.size()) return false;
    for (std::size_t r = 0; r < a.rows.size(); ++r) {
        if (a.rows[r].size() != b.rows[r].size()) return false;
        for (std::size_t c = 0; c < a.rows[r].size(); ++c)
            if (!cells_equal(a.rows[r][c], b.rows[r][c])) return false;
    }
    return true;
}

std::string to_json(const std::string& command,
                    const std::vector<std::pair<std::string, Cell>>& params,
                    const Table& table) {
    nlohmann::ordered_json root;
    root["schema"] = "v1";
    root["command"] = command;
    nlohmann::ordered_json p = nlohmann::ordered_json::object();
    for (const auto& [k, v] : params) p[k] = cell_to_json(v);
    root["params"] = std::move(p);
    nlohmann::ordered_json results = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size())
            throw InvariantViolation("output: row width != header width");
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t c = 0; c < row.size(); ++c)
            obj[table.columns[c]] = cell_to_json(row[c]);
        results.push_back(std::move(obj));
    }
    root["results"] = std::move(results);
    return root.dump(2) + "\n";
}

}  // namespace catlab
