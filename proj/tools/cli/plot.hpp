#pragma once

#include <iosfwd>
#include <string>

#include "csv.hpp"

namespace tailrisk::cli {

struct PlotOptions {
    std::string title;
    double width = 720;
    double height = 440;
};

// Reads the k, estimate, ci_lower and ci_upper columns of an estimate table.
// Intervals are drawn only when both bounds are present on every row.
void write_plot_svg(std::ostream& out, const CsvTable& table, const PlotOptions& opts = {});

}  // namespace tailrisk::cli
