#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "csv.hpp"
#include "tailrisk/mes.hpp"
#include "tailrisk/series.hpp"

namespace tailrisk::cli {

enum class Transform { none, neg_log_return };

Transform parse_transform(const std::string& name);

struct IngestConfig {
    std::string path;
    std::string column;    // empty: "value", then "y", then the only column
    std::string x_column;  // bivariate only
    Transform transform = Transform::none;
    char delimiter = ',';
};

struct Ingested {
    std::vector<double> y;
    std::vector<double> x;  // empty for univariate input
    std::size_t dropped = 0;
};

// Rows where any selected column is missing are dropped before the transform.
Ingested ingest_table(const CsvTable& table, const IngestConfig& cfg, bool bivariate);

std::vector<double> neg_log_returns(const std::vector<double>& prices);

Series ingest(const IngestConfig& cfg, std::ostream& log);
BivariateSeries ingest_bivariate(const IngestConfig& cfg, std::ostream& log);

}  // namespace tailrisk::cli
