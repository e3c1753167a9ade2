#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace zi {

using CsvCell = std::variant<std::string, std::int64_t, double>;

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<CsvCell>> rows;

    void add(std::vector<CsvCell> row);
};

// Doubles use 12 significant digits (%.12g); lines end in "\n".
std::string format_cell(const CsvCell& cell);
void write_csv(const CsvTable& table, std::ostream& out);

/// Writes the table to path. Throws PreconditionError on an empty table
/// (no file is created) and ResourceError on I/O failure.
void emit_csv(const CsvTable& table, const std::string& path);

} // namespace zi
