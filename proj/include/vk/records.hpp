#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

// Homogeneous record tables and their CSV form.
namespace vk::io {

struct Column {
    std::string name;
    /// Shown in brackets after the name; "-" for labels and flags.
    std::string unit;
};

using Cell = std::variant<double, std::int64_t, std::string>;

struct Table {
    std::vector<Column> columns;
    std::vector<std::vector<Cell>> rows;

    /// Throws DomainError when the row width does not match the header.
    void add_row(std::vector<Cell> row);
    std::optional<std::size_t> column_index(const std::string& name) const;
};

/// Shortest representation that parses back to the same double
/// ("nan", "inf", "-inf" for non-finite values).
std::string format_double(double x);
/// Inverse of format_double; throws DomainError on trailing garbage.
double parse_double(const std::string& s);

/// Header "name [unit],..." then one line per row. An optional comment line
/// "# <comment>" precedes the header.
void emit_csv(const Table& table, std::ostream& out, const std::optional<std::string>& comment = {});
std::string to_csv(const Table& table, const std::optional<std::string>& comment = {});
void write_csv_file(const Table& table, const std::string& path, const std::optional<std::string>& comment = {});

/// Minimal reader for files written by emit_csv (comment lines skipped,
/// quoted fields honoured). Returns the header and raw string cells.
struct CsvContent {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};
CsvContent read_csv(std::istream& in);

}  // namespace vk::io
