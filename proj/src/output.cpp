#include "asw/output.hpp"

#include "asw/model.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>

namespace asw {

namespace {

std::string csv_escape(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

std::string cell_text(const Cell& cell)
{
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
                return format_number(v);
            } else if constexpr (std::is_same_v<T, std::int64_t>) {
                return std::to_string(v);
            } else if constexpr (std::is_same_v<T, bool>) {
                return v ? "true" : "false";
            } else {
                return csv_escape(v);
            }
        },
        cell);
}

nlohmann::ordered_json cell_json(const Cell& cell)
{
    return std::visit(
        [](const auto& v) -> nlohmann::ordered_json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
                if (!std::isfinite(v)) {
                    return nullptr;
                }
                return std::strtod(format_number(v).c_str(), nullptr);
            } else {
                return v;
            }
        },
        cell);
}

}  // namespace

void RecordTable::add(std::vector<Cell> row)
{
    if (row.size() != columns.size()) {
        throw DomainError("row width does not match table '" + name + "'");
    }
    rows.push_back(std::move(row));
}

std::string format_number(double value)
{
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", value == 0.0 ? 0.0 : value);
    return buf;
}

void write_csv(const Document& doc, std::ostream& out)
{
    bool first = true;
    for (const auto& table : doc.tables) {
        if (!first) {
            out << '\n';
        }
        first = false;
        out << "record";
        for (const auto& c : table.columns) {
            out << ',' << csv_escape(c);
        }
        out << '\n';
        for (const auto& row : table.rows) {
            out << csv_escape(table.name);
            for (const auto& cell : row) {
                out << ',' << cell_text(cell);
            }
            out << '\n';
        }
    }
}

void write_json(const Document& doc, std::ostream& out)
{
    nlohmann::ordered_json root;
    root["schema"] = 1;
    root["command"] = doc.command;
    for (const auto& table : doc.tables) {
        auto rows = nlohmann::ordered_json::array();
        for (const auto& row : table.rows) {
            nlohmann::ordered_json obj = nlohmann::ordered_json::object();
            for (std::size_t i = 0; i < row.size(); ++i) {
                obj[table.columns[i]] = cell_json(row[i]);
            }
            rows.push_back(std::move(obj));
        }
        root[table.name] = std::move(rows);
    }
    out << root.dump(2) << '\n';
}

void write_document(const Document& doc, Format format, std::ostream& out)
{
    if (format == Format::Csv) {
        write_csv(doc, out);
    } else {
        write_json(doc, out);
    }
}

}  // namespace asw
