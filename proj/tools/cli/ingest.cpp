#include "ingest.hpp"

#include <cmath>
#include <ostream>

#include "tailrisk/error.hpp"

namespace tailrisk::cli {

namespace {

std::size_t resolve(const CsvTable& t, const std::string& name) {
    if (auto idx = t.find_column(name)) return *idx;
    throw DataError("column '" + name + "' not found");
}

std::size_t default_column(const CsvTable& t) {
    for (const char* name : {"value", "y"})
        if (auto idx = t.find_column(name)) return *idx;
    if (t.header.size() == 1) return 0;
    throw DataError("several columns present; choose one with --column");
}

void report(std::ostream& log, const IngestConfig& cfg, std::size_t dropped) {
    if (dropped > 0)
        log << "dropped " << dropped << " row" << (dropped == 1 ? "" : "s")
            << " with missing values from " << cfg.path << '\n';
}

}  // namespace

Transform parse_transform(const std::string& name) {
    if (name == "none") return Transform::none;
    if (name == "neg_log_return" || name == "neg-log-return") return Transform::neg_log_return;
    throw DataError("unknown transform '" + name + "'");
}

std::vector<double> neg_log_returns(const std::vector<double>& prices) {
    for (double p : prices)
        if (!(p > 0.0)) throw DataError("nonpositive price under log-return transform");
    std::vector<double> out;
    if (prices.size() < 2) return out;
    out.reserve(prices.size() - 1);
    for (std::size_t t = 0; t + 1 < prices.size(); ++t) out.push_back(-std::log(prices[t + 1] / prices[t]));
    return out;
}

Ingested ingest_table(const CsvTable& table, const IngestConfig& cfg, bool bivariate) {
    const std::size_t cy = cfg.column.empty()
                               ? (bivariate ? resolve(table, "y") : default_column(table))
                               : resolve(table, cfg.column);
    const std::size_t cx = bivariate ? resolve(table, cfg.x_column.empty() ? "x" : cfg.x_column) : 0;

    Ingested r;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        if (is_missing_token(row[cy]) || (bivariate && is_missing_token(row[cx]))) {
            ++r.dropped;
            continue;
        }
        const auto parse = [&](std::size_t c) {
            const auto v = parse_double(row[c]);
            if (!v) throw DataError("row " + std::to_string(i + 1) + ": cannot parse '" + row[c] + "'");
            return *v;
        };
        r.y.push_back(parse(cy));
        if (bivariate) r.x.push_back(parse(cx));
    }
    if (r.y.size() < 2) throw DataError("fewer than 2 usable rows in " + cfg.path);
    if (cfg.transform == Transform::neg_log_return) {
        r.y = neg_log_returns(r.y);
        if (bivariate) r.x = neg_log_returns(r.x);
    }
    return r;
}

Series ingest(const IngestConfig& cfg, std::ostream& log) {
    Ingested r = ingest_table(read_csv_file(cfg.path, cfg.delimiter), cfg, false);
    report(log, cfg, r.dropped);
    return Series(std::move(r.y));
}

BivariateSeries ingest_bivariate(const IngestConfig& cfg, std::ostream& log) {
    Ingested r = ingest_table(read_csv_file(cfg.path, cfg.delimiter), cfg, true);
    report(log, cfg, r.dropped);
    return BivariateSeries(std::move(r.x), std::move(r.y));
}

}  // namespace tailrisk::cli
