#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tailrisk::cli {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    // Resolves a column by header name, falling back to a 0-based index when
    // the name is all digits. Returns nullopt when neither matches.
    std::optional<std::size_t> find_column(std::string_view name) const;
};

CsvTable read_csv(std::istream& in, char delimiter = ',');
CsvTable read_csv_file(const std::string& path, char delimiter = ',');

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields,
                   char delimiter = ',');

// Shortest representation that round-trips.
std::string format_double(double v);

std::optional<double> parse_double(std::string_view token);

bool is_missing_token(std::string_view token);

}  // namespace tailrisk::cli
