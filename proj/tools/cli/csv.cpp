#include "csv.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include "tailrisk/error.hpp"

namespace tailrisk::cli {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

// Reads one record, which may span lines inside quoted fields.
bool read_record(std::istream& in, char delim, std::vector<std::string>& out, std::size_t& line) {
    out.clear();
    std::string field;
    bool quoted = false, any = false, was_quoted = false;
    int c;
    while ((c = in.get()) != EOF) {
        any = true;
        const char ch = static_cast<char>(c);
        if (quoted) {
            if (ch == '"') {
                if (in.peek() == '"') {
                    field += '"';
                    in.get();
                } else {
                    quoted = false;
                }
            } else {
                if (ch == '\n') ++line;
                field += ch;
            }
            continue;
        }
        if (ch == '"' && trim(field).empty()) {
            field.clear();
            quoted = was_quoted = true;
        } else if (ch == delim) {
            out.push_back(was_quoted ? field : std::string(trim(field)));
            field.clear();
            was_quoted = false;
        } else if (ch == '\n') {
            ++line;
            break;
        } else if (ch != '\r') {
            field += ch;
        }
    }
    if (quoted) throw DataError("unterminated quoted field near line " + std::to_string(line));
    if (!any) return false;
    out.push_back(was_quoted ? field : std::string(trim(field)));
    return true;
}

bool blank(const std::vector<std::string>& rec) {
    return rec.size() == 1 && rec[0].empty();
}

}  // namespace

std::optional<std::size_t> CsvTable::find_column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    if (!name.empty() && std::all_of(name.begin(), name.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        std::size_t idx = 0;
        std::from_chars(name.data(), name.data() + name.size(), idx);
        if (idx < header.size()) return idx;
    }
    return std::nullopt;
}

CsvTable read_csv(std::istream& in, char delimiter) {
    CsvTable t;
    std::vector<std::string> rec;
    std::size_t line = 1;
    while (read_record(in, delimiter, rec, line)) {
        if (blank(rec)) continue;
        if (t.header.empty()) {
            t.header = rec;
            continue;
        }
        if (rec.size() != t.header.size())
            throw DataError("line " + std::to_string(line - 1) + ": expected " +
                            std::to_string(t.header.size()) + " fields, found " +
                            std::to_string(rec.size()));
        t.rows.push_back(rec);
    }
    return t;
}

CsvTable read_csv_file(const std::string& path, char delimiter) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path);
    return read_csv(in, delimiter);
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields, char delimiter) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out << delimiter;
        const std::string& f = fields[i];
        if (f.find_first_of(std::string{delimiter, '"', '\n', '\r'}) == std::string::npos) {
            out << f;
            continue;
        }
        out << '"';
        for (char c : f) {
            if (c == '"') out << '"';
            out << c;
        }
        out << '"';
    }
    out << '\n';
}

std::string format_double(double v) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

std::optional<double> parse_double(std::string_view token) {
    token = trim(token);
    if (!token.empty() && token.front() == '+') token.remove_prefix(1);
    double v = 0.0;
    const auto r = std::from_chars(token.data(), token.data() + token.size(), v);
    if (r.ec != std::errc() || r.ptr != token.data() + token.size() || token.empty())
        return std::nullopt;
    return v;
}

bool is_missing_token(std::string_view token) {
    token = trim(token);
    return token.empty() || token == "NA" || token == "NaN" || token == "nan" ||
           token == "null" || token == "NULL" || token == ".";
}

}  // namespace tailrisk::cli
