#pragma once
// Tabular output records: named columns over cells that are integers, reals,
// or text.  Reals may be +infinity, serialized as the literal `inf` (CSV) or
// the string "inf" (JSON); NaN is rejected at serialization time.  CSV
// serialization round-trips: parse_csv(to_csv(t)) reproduces t exactly,
// including cell types, which is why real cells always carry a '.' or
// exponent and text cells that could be mistaken for numbers are quoted.

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace catlab {

using Cell = std::variant<std::int64_t, double, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

// Shortest representation that parses back to the identical value.
std::string format_cell(const Cell& cell);

std::string to_csv(const Table& table);
Table parse_csv(const std::string& text);

bool cells_equal(const Cell& a, const Cell& b);
bool tables_equal(const Table& a, const Table& b);

// {"schema":"v1","command":...,"params":{...},"results":[row objects...]}
std::string to_json(const std::string& command,
                    const std::vector<std::pair<std::string, Cell>>& params,
                    const Table& table);

}  // namespace catlab
