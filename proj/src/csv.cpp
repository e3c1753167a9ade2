#include "zi/csv.hpp"

#include <cstdio>
#include <fstream>

#include "zi/errors.hpp"

namespace zi {

void CsvTable::add(std::vector<CsvCell> row) {
    if (row.size() != header.size()) throw PreconditionError("csv: row width does not match header");
    rows.push_back(std::move(row));
}

std::string format_cell(const CsvCell& cell) {
    if (const auto* s = std::get_if<std::string>(&cell)) {
        if (s->find_first_of(",\"\n") == std::string::npos) return *s;
        std::string q = "\"";
        for (char c : *s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
        return q + "\"";
    }
    if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
    const double v = std::get<double>(cell);
    if (v == 0.0) return "0";  // no "-0"
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_csv(const CsvTable& table, std::ostream& out) {
    for (std::size_t j = 0; j < table.header.size(); ++j) out << (j ? "," : "") << table.header[j];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << format_cell(row[j]);
        out << '\n';
    }
}

void emit_csv(const CsvTable& table, const std::string& path) {
    if (table.rows.empty()) throw PreconditionError("emit_csv: no rows to write");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ResourceError("emit_csv: cannot open " + path);
    write_csv(table, out);
    out.flush();
    if (!out) throw ResourceError("emit_csv: write to " + path + " failed");
}

} // namespace zi
