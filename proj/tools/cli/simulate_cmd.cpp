#include "simulate_cmd.hpp"

#include <ostream>

#include "csv.hpp"

namespace tailrisk::cli {

void write_simulation(std::ostream& out, const ModelSpec& spec) {
    if (is_bivariate(spec.id)) {
        const BivariatePath p = simulate_bivariate_path(spec);
        write_csv_row(out, {"x", "y"});
        for (std::size_t t = 0; t < p.x.size(); ++t) write_csv_row(out, {format_double(p.x[t]), format_double(p.y[t])});
        return;
    }
    write_csv_row(out, {"y"});
    for (double v : simulate_univariate_path(spec)) write_csv_row(out, {format_double(v)});
}

}  // namespace tailrisk::cli
