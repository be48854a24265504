#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace knng {

// Minimal tabular output: typed cells, `# key=value` metadata comment lines,
// CSV and JSON serialisation with shortest-round-trip doubles so identical
// runs produce byte-identical files.
using Cell = std::variant<std::int64_t, double, bool, std::string>;

std::string format_double(double v);
std::string cell_to_string(const Cell& cell);

class Table {
  public:
    explicit Table(std::vector<std::string> columns);

    void add_comment(const std::string& key, const std::string& value);
    void add_row(std::vector<Cell> row);

    const std::vector<std::string>& columns() const { return columns_; }
    const std::vector<std::vector<Cell>>& rows() const { return rows_; }

    void write_csv(std::ostream& os) const;
    void write_json(std::ostream& os) const;

  private:
    std::vector<std::string> columns_;
    std::vector<std::pair<std::string, std::string>> comments_;
    std::vector<std::vector<Cell>> rows_;
};

void write_table_file(const Table& table, const std::string& path, const std::string& format);

}  // namespace knng
