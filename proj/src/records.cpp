#include "vk/records.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <system_error>

#include "vk/core.hpp"

namespace vk::io {

namespace {

std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string cell_text(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
    if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
    return quote(std::get<std::string>(c));
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

void Table::add_row(std::vector<Cell> row) {
    require(row.size() == columns.size(), "Table: row has " + std::to_string(row.size()) + " cells, header has " +
                                              std::to_string(columns.size()));
    rows.push_back(std::move(row));
}

std::optional<std::size_t> Table::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i].name == name) return i;
    return std::nullopt;
}

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

double parse_double(const std::string& s) {
    if (s == "nan") return std::nan("");
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    double x = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (first != last && *first == '+') ++first;
    const auto r = std::from_chars(first, last, x);
    if (r.ec != std::errc{} || r.ptr != last) throw DomainError("not a number: '" + s + "'");
    return x;
}

void emit_csv(const Table& table, std::ostream& out, const std::optional<std::string>& comment) {
    if (comment) out << "# " << *comment << '\n';
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out << ',';
        out << quote(table.columns[i].name + " [" + table.columns[i].unit + "]");
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << cell_text(row[i]);
        }
        out << '\n';
    }
}

std::string to_csv(const Table& table, const std::optional<std::string>& comment) {
    std::ostringstream os;
    emit_csv(table, os, comment);
    return os.str();
}

void write_csv_file(const Table& table, const std::string& path, const std::optional<std::string>& comment) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    emit_csv(table, f, comment);
    f.flush();
    if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

CsvContent read_csv(std::istream& in) {
    CsvContent c;
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (!have_header) {
            c.header = split_line(line);
            have_header = true;
        } else {
            c.rows.push_back(split_line(line));
        }
    }
    return c;
}

}  // namespace vk::io
