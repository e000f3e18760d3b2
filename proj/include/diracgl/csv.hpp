#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace diracgl {

enum class TableFormat { csv, text };

// Rows of named columns written with 17 significant digits and Unix line
// endings; repeated runs over identical data are byte-identical.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    void add_row(std::initializer_list<double> values);
    void write(std::ostream& os, TableFormat format) const;
};

std::string format_full(double v);  // %.17g

}  // namespace diracgl
