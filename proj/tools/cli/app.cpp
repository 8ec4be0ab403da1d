#include "app.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "coverage.hpp"
#include "csv.hpp"
#include "estimate.hpp"
#include "ingest.hpp"
#include "plot.hpp"
#include "simulate_cmd.hpp"
#include "tailrisk/error.hpp"

namespace tailrisk::cli {

namespace {

struct Global {
    std::uint64_t seed = 1;
    std::string format = "csv";
    std::size_t threads = 0;
};

struct InputFlags {
    std::string input;
    std::string column;
    std::string x_column;
    std::string transform = "none";
    char delimiter = ',';

    IngestConfig config() const {
        IngestConfig c;
        c.path = input;
        c.column = column;
        c.x_column = x_column;
        c.transform = parse_transform(transform);
        c.delimiter = delimiter;
        return c;
    }
};

void add_input_flags(CLI::App* cmd, InputFlags& f) {
    cmd->add_option("-i,--input", f.input, "Input CSV file (header row required)")->required();
    cmd->add_option("--column", f.column, "Column name or 0-based index (y for bivariate input)");
    cmd->add_option("--x-column", f.x_column, "x column for bivariate input (default x)");
    cmd->add_option("--transform", f.transform, "none or neg_log_return")
        ->check(CLI::IsMember({"none", "neg_log_return", "neg-log-return"}));
    cmd->add_option("--delimiter", f.delimiter, "Field delimiter");
}

// Writes to the named file, or to `fallback` when the name is empty or "-".
template <class F>
void emit(const std::string& path, std::ostream& fallback, F&& write) {
    if (path.empty() || path == "-") {
        write(fallback);
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DataError("cannot write " + path);
    write(f);
    f.flush();
    if (!f) throw DataError("error writing " + path);
}

std::pair<std::size_t, std::size_t> parse_blocks(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) throw DataError("--blocks expects auto or r,l");
    const auto r = parse_double(s.substr(0, comma));
    const auto l = parse_double(s.substr(comma + 1));
    if (!r || !l || *r < 1 || *l < 0 || *r != std::floor(*r) || *l != std::floor(*l))
        throw DataError("--blocks expects auto or r,l with integers r >= 1, l >= 0");
    return {static_cast<std::size_t>(*r), static_cast<std::size_t>(*l)};
}

ModelId model_or_throw(const std::string& name) {
    if (auto m = parse_model(name)) return *m;
    throw DataError("unknown model '" + name + "'");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Extreme expectile and marginal expected shortfall estimation"};
    app.require_subcommand(1);
    app.fallthrough();
    Global g;
    app.add_option("--seed", g.seed, "Random seed");
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--threads", g.threads, "Worker threads (0: all cores)");

    // ingest
    InputFlags ing;
    bool ing_bivariate = false;
    std::string ing_out;
    auto* c_ingest = app.add_subcommand("ingest", "Read a column (or x,y pair), drop missing rows, transform");
    add_input_flags(c_ingest, ing);
    c_ingest->add_flag("--bivariate", ing_bivariate, "Read --x-column and --column as a pair");
    c_ingest->add_option("-o,--out", ing_out, "Output CSV (default stdout)");

    // estimate
    InputFlags est_in;
    std::optional<std::size_t> est_k;
    std::string est_grid, est_method = "laws", est_ci = "d", est_blocks = "auto", est_out;
    std::optional<double> est_alpha, est_tau_prime, est_rho, est_beta;
    double est_level = 0.95;
    auto* c_est = app.add_subcommand("estimate", "Tail index, extreme expectile / quantile / MES estimates per k");
    add_input_flags(c_est, est_in);
    auto* k_opt = c_est->add_option("--k", est_k, "Number of top order statistics");
    auto* grid_opt = c_est->add_option("--k-grid", est_grid, "k grid a:b:s (inclusive)");
    k_opt->excludes(grid_opt);
    c_est->add_option("--alpha", est_alpha, "Quantile level alpha (default 1 - 1/n)");
    c_est->add_option("--tau-prime", est_tau_prime, "Extrapolate to this level instead of the composite level");
    c_est->add_option("--method", est_method)
        ->check(CLI::IsMember({"laws", "qb", "weissman", "qmes", "xmes-laws", "xmes-qb"}));
    c_est->add_option("--ci", est_ci)->check(CLI::IsMember({"iid", "d", "d-adj", "none"}));
    c_est->add_option("--level", est_level, "Nominal coverage")->check(CLI::Range(0.0, 1.0));
    c_est->add_option("--blocks", est_blocks, "auto or r,l");
    auto* rho_opt = c_est->add_option("--rho", est_rho, "Second-order rho override (d-adj)");
    auto* beta_opt = c_est->add_option("--beta", est_beta, "Second-order beta override (d-adj)");
    rho_opt->needs(beta_opt);
    beta_opt->needs(rho_opt);
    c_est->add_option("-o,--out", est_out, "Output file (default stdout)");

    // simulate
    std::string sim_model, sim_out;
    std::size_t sim_n = 2500;
    std::uint64_t sim_stream = 0;
    std::optional<std::size_t> sim_burn;
    auto* c_sim = app.add_subcommand("simulate", "Write a simulated path as CSV");
    c_sim->add_option("--model", sim_model, "Model a-h")->required();
    c_sim->add_option("--n", sim_n, "Path length");
    c_sim->add_option("--stream", sim_stream, "Replication stream index");
    c_sim->add_option("--burn-in", sim_burn, "Burn-in length (default per model)");
    c_sim->add_option("-o,--out", sim_out, "Output CSV (default stdout)");

    // coverage
    CoverageOptions cov;
    std::string cov_model = "a", cov_grid = "100:200:50", cov_out;
    auto* c_cov = app.add_subcommand("coverage", "Empirical error rates of confidence intervals on a model");
    c_cov->add_option("--model", cov_model, "Model a-h");
    c_cov->add_option("--reps", cov.reps, "Replications")->check(CLI::PositiveNumber);
    c_cov->add_option("--n", cov.n, "Sample length");
    c_cov->add_option("--tau-prime", cov.tau_prime, "Extreme level (alpha for bivariate models)");
    c_cov->add_flag("--alpha-from-tau-prime", cov.alpha_from_tau_prime,
                    "Bivariate: alpha = 1 - (1 - tau')(1/gamma_Y - 1)");
    c_cov->add_option("--k-grid", cov_grid, "k grid a:b:s");
    c_cov->add_option("--level", cov.level, "Nominal coverage")->check(CLI::Range(0.0, 1.0));
    c_cov->add_option("--truth", cov.truth, "True value (skips the Monte Carlo oracle)");
    c_cov->add_option("--truth-points", cov.truth_points, "Oracle path length");
    c_cov->add_option("-o,--out", cov_out, "Output file (default stdout)");

    // plot
    std::string plot_in, plot_out, plot_title;
    auto* c_plot = app.add_subcommand("plot", "SVG chart of an estimate table against k");
    c_plot->add_option("-i,--input", plot_in, "Estimate CSV")->required();
    c_plot->add_option("-o,--out", plot_out, "Output SVG")->required();
    c_plot->add_option("--title", plot_title);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    const bool json = g.format == "json";
    try {
        if (*c_ingest) {
            const IngestConfig cfg = ing.config();
            const Ingested r = ingest_table(read_csv_file(cfg.path, cfg.delimiter), cfg, ing_bivariate);
            if (r.dropped > 0) err << "dropped " << r.dropped << " row" << (r.dropped == 1 ? "" : "s") << " with missing values\n";
            emit(ing_out, out, [&](std::ostream& os) {
                write_csv_row(os, ing_bivariate ? std::vector<std::string>{"x", "y"} : std::vector<std::string>{"value"});
                for (std::size_t t = 0; t < r.y.size(); ++t) {
                    if (ing_bivariate)
                        write_csv_row(os, {format_double(r.x[t]), format_double(r.y[t])});
                    else
                        write_csv_row(os, {format_double(r.y[t])});
                }
            });
        } else if (*c_est) {
            if (!*k_opt && !*grid_opt) throw CLI::RequiredError("--k or --k-grid");
            EstimateOptions opts;
            opts.ks = est_k ? std::vector<std::size_t>{*est_k} : parse_k_grid(est_grid);
            opts.alpha = est_alpha;
            opts.tau_prime = est_tau_prime;
            opts.method = parse_method(est_method);
            opts.ci = parse_ci(est_ci);
            opts.level = est_level;
            if (est_blocks != "auto") opts.blocks = parse_blocks(est_blocks);
            if (est_rho) opts.second_order = SecondOrderFit{*est_rho, *est_beta, 0};

            const IngestConfig cfg = est_in.config();
            std::vector<EstimateRow> rows;
            if (is_bivariate(opts.method))
                rows = run_estimate(ingest_bivariate(cfg, err), opts);
            else
                rows = run_estimate(ingest(cfg, err), opts);
            emit(est_out, out, [&](std::ostream& os) {
                json ? write_estimate_json(os, rows) : write_estimate_csv(os, rows);
            });
        } else if (*c_sim) {
            ModelSpec spec = make_model_spec(model_or_throw(sim_model), sim_n, g.seed, sim_stream);
            if (sim_burn) spec.burn_in = *sim_burn;
            emit(sim_out, out, [&](std::ostream& os) { write_simulation(os, spec); });
        } else if (*c_cov) {
            cov.model = model_or_throw(cov_model);
            cov.ks = parse_k_grid(cov_grid);
            cov.seed = g.seed;
            cov.threads = g.threads;
            const CoverageReport report = run_coverage(cov);
            emit(cov_out, out, [&](std::ostream& os) {
                json ? write_coverage_json(os, report) : write_coverage_csv(os, report);
            });
        } else if (*c_plot) {
            PlotOptions po;
            po.title = plot_title;
            const CsvTable table = read_csv_file(plot_in);
            emit(plot_out, out, [&](std::ostream& os) { write_plot_svg(os, table, po); });
        }
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitData;
    }
    return kExitOk;
}

int run(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace tailrisk::cli
