#pragma once

// Record tables shared by the CSV and JSON writers. Numbers are written with
// 12 significant digits in both formats.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace asw {

using Cell = std::variant<std::int64_t, double, std::string, bool>;

struct RecordTable {
    std::string name;                  // record tag, first CSV column
    std::vector<std::string> columns;  // fixed order
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row);
};

struct Document {
    std::string command;
    std::vector<RecordTable> tables;
};

enum class Format { Csv, Json };

/// "%.12g"; non-finite values become "nan", "inf", "-inf".
std::string format_number(double value);

/// One block per table: header "record,<columns>", then one line per row
/// tagged with the table name. Blocks are separated by a blank line.
void write_csv(const Document& doc, std::ostream& out);

/// {"schema": 1, "command": ..., "<table>": [{column: value}, ...], ...}.
/// Numbers are the values of their 12-digit text; non-finite become null.
void write_json(const Document& doc, std::ostream& out);

void write_document(const Document& doc, Format format, std::ostream& out);

}  // namespace asw
