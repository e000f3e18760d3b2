#include "diracgl/csv.hpp"

#include <cstdio>
#include <ostream>

#include "diracgl/errors.hpp"

namespace diracgl {

std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void Table::add_row(std::initializer_list<double> values) {
    if (values.size() != header.size()) throw error("Table: row width does not match header");
    rows.emplace_back(values);
}

void Table::write(std::ostream& os, TableFormat format) const {
    if (format == TableFormat::csv) {
        for (std::size_t i = 0; i < header.size(); ++i)
            os << header[i] << (i + 1 < header.size() ? "," : "\n");
        for (const auto& row : rows)
            for (std::size_t i = 0; i < row.size(); ++i)
                os << format_full(row[i]) << (i + 1 < row.size() ? "," : "\n");
        return;
    }
    for (std::size_t i = 0; i < header.size(); ++i)
        os << header[i] << (i + 1 < header.size() ? "\t" : "\n");
    for (const auto& row : rows)
        for (std::size_t i = 0; i < row.size(); ++i)
            os << format_full(row[i]) << (i + 1 < row.size() ? "\t" : "\n");
}

}  // namespace diracgl
