#include "knng/table.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace knng {

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) throw std::runtime_error("failed to format double");
    return std::string(buf, ptr);
}

std::string cell_to_string(const Cell& cell) {
    if (std::holds_alternative<std::int64_t>(cell))
        return std::to_string(std::get<std::int64_t>(cell));
    if (std::holds_alternative<double>(cell)) return format_double(std::get<double>(cell));
    if (std::holds_alternative<bool>(cell)) return std::get<bool>(cell) ? "true" : "false";
    return std::get<std::string>(cell);
}

Table::Table(std::vector<std::string> columns) : columns_(std::move(columns)) {
    if (columns_.empty()) throw std::invalid_argument("table needs at least one column");
}

void Table::add_comment(const std::string& key, const std::string& value) {
    comments_.emplace_back(key, value);
}

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != columns_.size())
        throw std::invalid_argument("row width does not match column count");
    rows_.push_back(std::move(row));
}

void Table::write_csv(std::ostream& os) const {
    for (const auto& [key, value] : comments_) os << "# " << key << "=" << value << "\n";
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        if (i) os << ",";
        os << columns_[i];
    }
    os << "\n";
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ",";
            os << cell_to_string(row[i]);
        }
        os << "\n";
    }
}

void Table::write_json(std::ostream& os) const {
    nlohmann::ordered_json doc;
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    for (const auto& [key, value] : comments_) meta[key] = value;
    doc["meta"] = std::move(meta);
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : rows_) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            const Cell& cell = row[i];
            if (std::holds_alternative<std::int64_t>(cell))
                obj[columns_[i]] = std::get<std::int64_t>(cell);
            else if (std::holds_alternative<double>(cell))
                obj[columns_[i]] = std::get<double>(cell);
            else if (std::holds_alternative<bool>(cell))
                obj[columns_[i]] = std::get<bool>(cell);
            else
                obj[columns_[i]] = std::get<std::string>(cell);
        }
        rows.push_back(std::move(obj));
    }
    doc["rows"] = std::move(rows);
    os << doc.dump(2) << "\n";
}

void write_table_file(const Table& table, const std::string& path, const std::string& format) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    if (format == "csv")
        table.write_csv(out);
    else if (format == "json")
        table.write_json(out);
    else
        throw std::invalid_argument("unknown output format: " + format);
    if (!out) throw std::runtime_error("failed while writing: " + path);
}

}  // namespace knng
