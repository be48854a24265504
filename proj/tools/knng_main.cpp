#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "knng/bounds.hpp"
#include "knng/harness.hpp"
#include "knng/knn_graph.hpp"
#include "knng/sampling.hpp"
#include "knng/table.hpp"
#include "knng/version.hpp"

namespace {

struct CliOptions {
    knng::ExperimentConfig config;
    double n = 0.0;
    int k = 0;
    double c = 0.0;
    std::string c_grid;
    double strip = -1.0;
    std::string out;
    std::string format = "csv";
    std::string dump_census;
    int configs = 1000;
    std::string config_path;
};

// CLI11 only processes a config option on the top-level app, so per-subcommand
// `--config FILE` is expanded into ordinary flags before parsing. A key is
// skipped when its flag already appears on the command line, so explicit flags
// always win; expanded keys from an earlier file count as present for later ones.
std::vector<std::string> expand_config_args(std::vector<std::string> args) {
    const auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        if (a == std::string::npos) return std::string();
        return s.substr(a, s.find_last_not_of(" \t\r") - a + 1);
    };
    std::size_t i = 0;
    while (i < args.size()) {
        std::string path;
        std::size_t consumed = 0;
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
            consumed = 2;
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            consumed = 1;
        } else {
            ++i;
            continue;
        }
        std::ifstream in(path);
        if (!in) throw CLI::FileError::Missing(path);
        args.erase(args.begin() + i, args.begin() + i + consumed);
        std::string line;
        while (std::getline(in, line)) {
            line = trim(line);
            if (line.empty() || line[0] == '#') continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw CLI::FileError(path + ": expected key=value, got '" + line + "'");
            const std::string key = trim(line.substr(0, eq));
            std::string value = trim(line.substr(eq + 1));
            if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') &&
                value.back() == value.front())
                value = value.substr(1, value.size() - 2);
            if (key == "config")
                throw CLI::FileError(path + ": nested config files are not supported");
            const std::string flag = "--" + key;
            bool present = false;
            for (const std::string& a : args) {
                if (a == flag || a.rfind(flag + "=", 0) == 0) {
                    present = true;
                    break;
                }
            }
            if (present) continue;
            args.push_back(flag);
            args.push_back(value);
        }
    }
    return args;
}

void add_common_flags(CLI::App* cmd, CliOptions& opt, bool with_trials = true) {
    cmd->add_option("--n", opt.n, "window area (expected point count)");
    cmd->add_option("--k", opt.k, "neighbour count");
    cmd->add_option("--c", opt.c, "neighbour ratio; k = ceil(c ln n)");
    if (with_trials) cmd->add_option("--trials", opt.config.trials, "independent trials");
    cmd->add_option("--seed", opt.config.master_seed, "master seed");
    cmd->add_option("--threads", opt.config.threads, "worker threads");
    cmd->add_option("--strip", opt.strip, "boundary strip width (default ln n)");
    cmd->add_option("--small-coeff", opt.config.small_coeff,
                    "small-component diameter coefficient");
    cmd->add_option("--out", opt.out, "output path (default stdout)");
    cmd->add_option("--format", opt.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--config", opt.config_path, "key=value config file; flags override");
}

knng::ExperimentConfig finish_config(const CliOptions& opt, const CLI::App* cmd) {
    knng::ExperimentConfig config = opt.config;
    config.area_n = opt.n;
    if (cmd->count("--k") > 0) config.k = opt.k;
    if (cmd->count("--c") > 0) config.c = opt.c;
    if (opt.strip >= 0.0) config.boundary_strip = opt.strip;
    config.out_path = opt.out;
    config.format = opt.format;
    return config;
}

std::vector<double> parse_grid(const std::string& text) {
    // a:b:step, inclusive of b up to a half-step of slack
    double lo = 0.0, hi = 0.0, step = 0.0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3)
        throw CLI::ValidationError("--c-grid", "expected a:b:step");
    if (!(step > 0.0) || hi < lo) throw CLI::ValidationError("--c-grid", "need b >= a, step > 0");
    std::vector<double> grid;
    for (int i = 0;; ++i) {
        const double v = lo + i * step;
        if (v > hi + step * 0.5) break;
        grid.push_back(v);
    }
    return grid;
}

void emit(const knng::Table& table, const std::string& out, const std::string& format) {
    if (out.empty()) {
        if (format == "csv")
            table.write_csv(std::cout);
        else
            table.write_json(std::cout);
        return;
    }
    knng::write_table_file(table, out, format);
}

int run_sample(const CliOptions& opt, const CLI::App* cmd) {
    const knng::ExperimentConfig config = finish_config(opt, cmd);
    if (!(config.area_n > 0.0)) throw CLI::ValidationError("--n", "positive area required");
    const knng::SquareWorld world{config.area_n};
    const knng::PointSet ps = knng::sample_poisson_square(world, config.master_seed);
    knng::Table table({"idx", "x", "y"});
    table.add_comment("seed", std::to_string(config.master_seed));
    table.add_comment("version", knng::kVersion);
    table.add_comment("area_n", knng::format_double(config.area_n));
    for (std::size_t i = 0; i < ps.points.size(); ++i) {
        table.add_row({static_cast<std::int64_t>(i), ps.points[i].x, ps.points[i].y});
    }
    emit(table, config.out_path, config.format);
    return 0;
}

int run_graph(const CliOptions& opt, const CLI::App* cmd) {
    const knng::ExperimentConfig config = finish_config(opt, cmd);
    knng::validate_config(config);
    const int k = knng::resolved_k(config);
    const knng::SquareWorld world{config.area_n};
    const knng::PointSet ps = knng::sample_poisson_square(world, config.master_seed);
    if (ps.points.size() <= static_cast<std::size_t>(k))
        throw std::runtime_error("k too large for point count");
    const knng::NeighborGraph g = knng::build_graph(ps, k);
    knng::Table table({"u", "v"});
    table.add_comment("seed", std::to_string(config.master_seed));
    table.add_comment("version", knng::kVersion);
    table.add_comment("config", knng::config_string(config));
    for (std::uint32_t u = 0; u < g.undirected_adjacency.size(); ++u) {
        for (std::uint32_t v : g.undirected_adjacency[u]) {
            if (u < v)
                table.add_row(
                    {static_cast<std::int64_t>(u), static_cast<std::int64_t>(v)});
        }
    }
    emit(table, config.out_path, config.format);
    return 0;
}

int run_sweep(const CliOptions& opt, const CLI::App* cmd) {
    knng::ExperimentConfig config = finish_config(opt, cmd);
    std::vector<double> grid;
    if (!opt.c_grid.empty()) {
        grid = parse_grid(opt.c_grid);
        if (!config.k && !config.c) config.c = grid.front();  // satisfy the one-of invariant
    }
    const auto rows = knng::run_connectivity_sweep(config, grid);
    knng::Table table = knng::sweep_table(config, rows);
    if (!opt.c_grid.empty()) table.add_comment("c_grid", opt.c_grid);
    emit(table, config.out_path, config.format);
    return 0;
}

int run_boundary(const CliOptions& opt, const CLI::App* cmd) {
    knng::ExperimentConfig config = finish_config(opt, cmd);
    std::vector<knng::BoundaryCensusRow> rows;
    std::optional<knng::Table> dump;
    std::optional<knng::Table>* dump_ptr = opt.dump_census.empty() ? nullptr : &dump;
    if (!opt.c_grid.empty() && dump_ptr)
        throw CLI::ValidationError("--dump-census", "needs a single k or c, not a grid");
    if (!opt.c_grid.empty()) {
        for (double c : parse_grid(opt.c_grid)) {
            knng::ExperimentConfig point = config;
            point.k.reset();
            point.c = c;
            rows.push_back(knng::run_boundary_census(point, dump_ptr));
        }
    } else {
        rows.push_back(knng::run_boundary_census(config, dump_ptr));
    }
    if (!opt.dump_census.empty() && dump)
        knng::write_table_file(*dump, opt.dump_census, config.format);
    emit(knng::boundary_table(config, rows), config.out_path, config.format);
    return 0;
}

int run_audit_construction(const CliOptions& opt, const CLI::App* cmd) {
    const knng::ExperimentConfig config = finish_config(opt, cmd);
    const auto rows = knng::run_construction_audit(config);
    emit(knng::construction_audit_table(config, rows), config.out_path, config.format);
    return 0;
}

int run_audit_lemma(const CliOptions& opt, const CLI::App* cmd) {
    knng::ExperimentConfig config = finish_config(opt, cmd);
    const auto rows = knng::run_lemma_audit(config, opt.configs);
    emit(knng::lemma_audit_table(config, rows), config.out_path, config.format);
    return 0;
}

int run_bounds_table(const CliOptions& opt) {
    knng::Table table({"name", "value", "reference_value", "kind"});
    table.add_comment("version", knng::kVersion);
    for (const knng::ThresholdRow& row : knng::threshold_table()) {
        table.add_row({row.name, row.value, row.reference_value, row.kind});
    }
    const knng::OptimalAlpha interior = knng::optimal_alpha(knng::CurveFamily::Interior);
    const knng::OptimalAlpha boundary = knng::optimal_alpha(knng::CurveFamily::Boundary);
    table.add_row({std::string("x_star_interior"), interior.x_star, interior.x_star,
                   std::string("optimization")});
    table.add_row({std::string("alpha_interior"), interior.alpha, 11.3,
                   std::string("optimization")});
    table.add_row({std::string("x_star_boundary"), boundary.x_star, boundary.x_star,
                   std::string("optimization")});
    table.add_row({std::string("alpha_boundary"), boundary.alpha, 6.3,
                   std::string("optimization")});
    emit(table, opt.out, opt.format);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"k-nearest-neighbour random geometric graph laboratory"};
    app.set_version_flag("--version", std::string(knng::kVersion));
    app.require_subcommand(1);

    CliOptions opt;

    CLI::App* sample = app.add_subcommand("sample", "sample a Poisson point set");
    add_common_flags(sample, opt, false);

    CLI::App* graph = app.add_subcommand("graph", "build the mutual k-NN graph, dump edges");
    add_common_flags(graph, opt, false);

    CLI::App* sweep = app.add_subcommand("sweep", "connectivity sweep over a ratio grid");
    add_common_flags(sweep, opt);
    sweep->add_option("--c-grid", opt.c_grid, "ratio grid a:b:step");

    CLI::App* boundary = app.add_subcommand("boundary", "boundary vs interior small components");
    add_common_flags(boundary, opt);
    boundary->add_option("--c-grid", opt.c_grid, "ratio grid a:b:step");
    boundary->add_option("--dump-census", opt.dump_census, "write per-component census rows");

    CLI::App* audit_c = app.add_subcommand("audit-construction",
                                           "audit hull/crescent facts on small components");
    add_common_flags(audit_c, opt);

    CLI::App* audit_l = app.add_subcommand("audit-lemma",
                                           "two-region bound vs exact vs Monte Carlo");
    add_common_flags(audit_l, opt);
    audit_l->add_option("--configs", opt.configs, "number of random configurations");

    CLI::App* bounds = app.add_subcommand("bounds-table", "threshold constants and optima");
    bounds->add_option("--out", opt.out, "output path (default stdout)");
    bounds->add_option("--format", opt.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        args = expand_config_args(std::move(args));
        std::reverse(args.begin(), args.end());  // App::parse consumes back to front
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (sample->parsed()) return run_sample(opt, sample);
        if (graph->parsed()) return run_graph(opt, graph);
        if (sweep->parsed()) return run_sweep(opt, sweep);
        if (boundary->parsed()) return run_boundary(opt, boundary);
        if (audit_c->parsed()) return run_audit_construction(opt, audit_c);
        if (audit_l->parsed()) return run_audit_lemma(opt, audit_l);
        if (bounds->parsed()) return run_bounds_table(opt);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
