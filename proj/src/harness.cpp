#include "knng/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "knng/bounds.hpp"
#include "knng/components.hpp"
#include "knng/knn_graph.hpp"
#include "knng/sampling.hpp"
#include "knng/version.hpp"

namespace knng {

void validate_config(const ExperimentConfig& config) {
    if (!(config.area_n > 0.0)) throw std::invalid_argument("area_n must be positive");
    if (config.trials < 1) throw std::invalid_argument("trials must be at least 1");
    if (config.k.has_value() == config.c.has_value())
        throw std::invalid_argument("exactly one of k or c must be set");
    if (config.k && *config.k < 1) throw std::invalid_argument("k must be at least 1");
    if (config.c && !(*config.c > 0.0)) throw std::invalid_argument("c must be positive");
    if (config.boundary_strip && !(*config.boundary_strip >= 0.0))
        throw std::invalid_argument("boundary strip must be non-negative");
    if (!(config.small_coeff > 0.0)) throw std::invalid_argument("small_coeff must be positive");
    if (config.threads < 1) throw std::invalid_argument("threads must be at least 1");
    if (!(config.near_side_mult > 0.0))
        throw std::invalid_argument("near_side_mult must be positive");
    if (!(config.witness_shrink >= 0.0))
        throw std::invalid_argument("witness shrink must be non-negative");
    if (config.format != "csv" && config.format != "json")
        throw std::invalid_argument("unknown output format: " + config.format);
}

int k_from_ratio(double c, double area_n) {
    const int k = static_cast<int>(std::ceil(c * std::log(area_n)));
    return std::max(1, k);
}

int resolved_k(const ExperimentConfig& config) {
    if (config.k) return *config.k;
    return k_from_ratio(*config.c, config.area_n);
}

double resolved_strip(const ExperimentConfig& config) {
    if (config.boundary_strip) return *config.boundary_strip;
    return std::max(0.0, std::log(config.area_n));
}

std::string config_string(const ExperimentConfig& config) {
    std::string s = "area_n=" + format_double(config.area_n);
    if (config.k) s += " k=" + std::to_string(*config.k);
    if (config.c) s += " c=" + format_double(*config.c);
    s += " trials=" + std::to_string(config.trials);
    s += " seed=" + std::to_string(config.master_seed);
    s += " strip=" + format_double(resolved_strip(config));
    s += " small_coeff=" + format_double(config.small_coeff);
    s += " near_side_mult=" + format_double(config.near_side_mult);
    s += " witness_shrink=" + format_double(config.witness_shrink);
    return s;
}

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
    if (trials < 1) throw std::invalid_argument("trials must be at least 1");
    if (successes > trials) throw std::invalid_argument("successes exceed trials");
    if (!(z > 0.0)) throw std::invalid_argument("z must be positive");
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double centre = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    WilsonInterval out;
    out.lo = std::clamp(centre - half, 0.0, 1.0);
    out.hi = std::clamp(centre + half, 0.0, 1.0);
    return out;
}

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body) {
    if (count == 0) return;
    const std::size_t workers =
        std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;
    const auto work = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) break;
            try {
                body(i);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

namespace {

struct TrialOutcome {
    bool error = false;  // sampled point count <= k
    bool connected = false;
    double giant_fraction = 0.0;
    double max_small_norm = 0.0;
    std::size_t boundary_small = 0;
    std::size_t interior_small = 0;
    std::vector<ComponentInfo> components;  // filled only when keep_components
};

TrialOutcome run_census_trial(const ExperimentConfig& config, int k, std::uint64_t seed,
                              bool keep_components = false) {
    const SquareWorld world{config.area_n};
    const PointSet ps = sample_poisson_square(world, seed);
    TrialOutcome out;
    if (ps.points.size() <= static_cast<std::size_t>(k)) {
        out.error = true;
        return out;
    }
    const NeighborGraph g = build_graph(ps, k);
    ComponentCensus cen = census(g, ps, resolved_strip(config), config.small_coeff);
    out.connected = cen.components.size() == 1;
    out.giant_fraction = cen.giant_fraction;
    out.max_small_norm = cen.max_small_diameter_normalized;
    out.boundary_small = cen.boundary_small_count;
    out.interior_small = cen.interior_small_count;
    if (keep_components) out.components = std::move(cen.components);
    return out;
}

void warn_if_k_excessive(int k, double area_n) {
    if (static_cast<double>(k) >= area_n / 2.0)
        std::fprintf(stderr, "warning: k=%d is at least half the expected point count %.0f\n", k,
                     area_n);
}

void add_meta(Table& table, const ExperimentConfig& config) {
    table.add_comment("seed", std::to_string(config.master_seed));
    table.add_comment("version", kVersion);
    table.add_comment("config", config_string(config));
}

}  // namespace

std::vector<SweepRow> run_connectivity_sweep(const ExperimentConfig& config,
                                             const std::vector<double>& c_grid) {
    validate_config(config);
    struct GridPoint {
        double c;
        int k;
    };
    std::vector<GridPoint> grid;
    const double log_n = std::log(config.area_n);
    if (!c_grid.empty()) {
        for (double c : c_grid) {
            if (!(c > 0.0)) throw std::invalid_argument("grid ratios must be positive");
            grid.push_back({c, k_from_ratio(c, config.area_n)});
        }
    } else {
        const int k = resolved_k(config);
        const double c = config.c ? *config.c : (log_n > 0.0 ? k / log_n : 0.0);
        grid.push_back({c, k});
    }
    for (const GridPoint& gp : grid) warn_if_k_excessive(gp.k, config.area_n);

    const std::size_t trials = static_cast<std::size_t>(config.trials);
    const std::size_t total = grid.size() * trials;
    std::vector<TrialOutcome> outcomes(total);
    parallel_for(total, config.threads, [&](std::size_t idx) {
        const int k = grid[idx / trials].k;
        outcomes[idx] = run_census_trial(config, k, derive_trial_seed(config.master_seed, idx));
    });

    std::vector<SweepRow> rows;
    rows.reserve(grid.size());
    for (std::size_t p = 0; p < grid.size(); ++p) {
        SweepRow row;
        row.area_n = config.area_n;
        row.c = grid[p].c;
        row.k = grid[p].k;
        row.trials = config.trials;
        double giant_sum = 0.0;
        for (std::size_t t = 0; t < trials; ++t) {
            const TrialOutcome& o = outcomes[p * trials + t];
            if (o.error) {
                ++row.error_trials;
                continue;
            }
            if (o.connected) ++row.connected_count;
            giant_sum += o.giant_fraction;
            row.max_small_diameter_normalized =
                std::max(row.max_small_diameter_normalized, o.max_small_norm);
            if (o.boundary_small > 0) ++row.boundary_small_trials;
            if (o.interior_small > 0) ++row.interior_small_trials;
        }
        const int valid = config.trials - row.error_trials;
        if (valid > 0) {
            row.p_hat = static_cast<double>(row.connected_count) / valid;
            const WilsonInterval ci = wilson_interval(
                static_cast<std::uint64_t>(row.connected_count), static_cast<std::uint64_t>(valid),
                1.96);
            row.ci_lo = ci.lo;
            row.ci_hi = ci.hi;
            row.mean_giant_fraction = giant_sum / valid;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Table sweep_table(const ExperimentConfig& config, const std::vector<SweepRow>& rows) {
    Table table({"area_n", "c", "k", "trials", "connected_count", "p_hat", "ci_lo", "ci_hi",
                 "mean_giant_fraction", "max_small_diameter_normalized", "boundary_small_trials",
                 "interior_small_trials", "error_trials"});
    add_meta(table, config);
    for (const SweepRow& r : rows) {
        table.add_row({r.area_n, r.c, static_cast<std::int64_t>(r.k),
                       static_cast<std::int64_t>(r.trials),
                       static_cast<std::int64_t>(r.connected_count), r.p_hat, r.ci_lo, r.ci_hi,
                       r.mean_giant_fraction, r.max_small_diameter_normalized,
                       static_cast<std::int64_t>(r.boundary_small_trials),
                       static_cast<std::int64_t>(r.interior_small_trials),
                       static_cast<std::int64_t>(r.error_trials)});
    }
    return table;
}

BoundaryCensusRow run_boundary_census(const ExperimentConfig& config,
                                      std::optional<Table>* census_dump) {
    validate_config(config);
    const int k = resolved_k(config);
    warn_if_k_excessive(k, config.area_n);
    const std::size_t trials = static_cast<std::size_t>(config.trials);
    const bool keep = census_dump != nullptr;
    std::vector<TrialOutcome> outcomes(trials);
    parallel_for(trials, config.threads, [&](std::size_t t) {
        outcomes[t] = run_census_trial(config, k, derive_trial_seed(config.master_seed, t), keep);
    });
    if (census_dump) {
        Table dump({"comp_id", "size", "diameter", "min_boundary_dist", "is_giant", "is_small"});
        add_meta(dump, config);
        for (const TrialOutcome& o : outcomes) {
            for (const ComponentInfo& comp : o.components) {
                dump.add_row({static_cast<std::int64_t>(comp.comp_id),
                              static_cast<std::int64_t>(comp.vertices.size()), comp.diameter,
                              comp.min_boundary_distance, comp.is_giant, comp.is_small});
            }
        }
        *census_dump = std::move(dump);
    }
    BoundaryCensusRow row;
    row.area_n = config.area_n;
    row.k = k;
    row.trials = config.trials;
    for (const TrialOutcome& o : outcomes) {
        if (o.error) {
            ++row.error_trials;
            continue;
        }
        if (o.connected) ++row.connected_trials;
        if (o.boundary_small > 0) ++row.boundary_small_trials;
        if (o.interior_small > 0) ++row.interior_small_trials;
        row.boundary_small_components += static_cast<int>(o.boundary_small);
        row.interior_small_components += static_cast<int>(o.interior_small);
    }
    return row;
}

Table boundary_table(const ExperimentConfig& config, const std::vector<BoundaryCensusRow>& rows) {
    Table table({"area_n", "k", "trials", "connected_trials", "boundary_small_trials",
                 "interior_small_trials", "boundary_small_components",
                 "interior_small_components", "error_trials"});
    add_meta(table, config);
    for (const BoundaryCensusRow& r : rows) {
        table.add_row({r.area_n, static_cast<std::int64_t>(r.k),
                       static_cast<std::int64_t>(r.trials),
                       static_cast<std::int64_t>(r.connected_trials),
                       static_cast<std::int64_t>(r.boundary_small_trials),
                       static_cast<std::int64_t>(r.interior_small_trials),
                       static_cast<std::int64_t>(r.boundary_small_components),
                       static_cast<std::int64_t>(r.interior_small_components),
                       static_cast<std::int64_t>(r.error_trials)});
    }
    return table;
}

std::vector<ConstructionAuditRow> run_construction_audit(const ExperimentConfig& config) {
    validate_config(config);
    const int k = resolved_k(config);
    warn_if_k_excessive(k, config.area_n);
    AuditConfig audit_cfg;
    audit_cfg.witness_shrink = config.witness_shrink;
    audit_cfg.near_side_mult = config.near_side_mult;
    audit_cfg.small_coeff = config.small_coeff;

    const std::size_t trials = static_cast<std::size_t>(config.trials);
    std::vector<std::vector<ConstructionAuditRow>> per_trial(trials);
    parallel_for(trials, config.threads, [&](std::size_t t) {
        const SquareWorld world{config.area_n};
        const PointSet ps =
            sample_poisson_square(world, derive_trial_seed(config.master_seed, t));
        if (ps.points.size() <= static_cast<std::size_t>(k)) return;
        const NeighborGraph g = build_graph(ps, k);
        const ComponentCensus cen = census(g, ps, resolved_strip(config), config.small_coeff);
        if (cen.components.size() <= 1) return;
        const double threshold = near_side_threshold(config.area_n, audit_cfg);
        for (std::size_t i = 0; i < cen.components.size(); ++i) {
            if (i == cen.giant_index) continue;
            const ComponentInfo& comp = cen.components[i];
            ConstructionAuditRow row;
            row.trial = static_cast<int>(t);
            row.comp_id = comp.comp_id;
            row.k = k;
            row.size = static_cast<int>(comp.vertices.size());
            std::vector<Point> pts;
            pts.reserve(comp.vertices.size());
            for (std::uint32_t v : comp.vertices) pts.push_back(ps.points[v]);
            const int near = near_side_count(pts, ps.world, threshold);
            if (near >= 2) {
                row.mode = "skipped";
                row.skip_reason = "ambiguous side";
                per_trial[t].push_back(std::move(row));
                continue;
            }
            const AuditMode mode = near == 0 ? AuditMode::Interior : AuditMode::Boundary;
            const AuditReport report = audit_component(ps, g, comp.vertices, mode, audit_cfg);
            if (report.skipped) {
                row.mode = "skipped";
                row.skip_reason = report.skip_reason;
            } else {
                row.mode = mode == AuditMode::Interior ? "interior" : "boundary";
                row.fact_a = report.fact_a;
                row.fact_b = report.fact_b;
                row.fact_c = report.fact_c;
                row.fact_d = report.fact_d;
                row.fact_e = report.fact_e;
                row.a0_area = report.min_region_area;
                row.b_area = report.lune_area;
                row.x = report.x_ratio;
            }
            per_trial[t].push_back(std::move(row));
        }
    });

    std::vector<ConstructionAuditRow> rows;
    for (auto& batch : per_trial)
        for (auto& row : batch) rows.push_back(std::move(row));
    return rows;
}

Table construction_audit_table(const ExperimentConfig& config,
                               const std::vector<ConstructionAuditRow>& rows) {
    Table table({"trial", "comp_id", "mode", "k", "fact_a", "fact_b", "fact_c", "fact_d",
                 "fact_e", "A0_area", "B_area", "x"});
    add_meta(table, config);
    for (const ConstructionAuditRow& r : rows) {
        table.add_row({static_cast<std::int64_t>(r.trial), static_cast<std::int64_t>(r.comp_id),
                       r.mode, static_cast<std::int64_t>(r.k), r.fact_a, r.fact_b, r.fact_c,
                       r.fact_d, r.fact_e, r.a0_area, r.b_area, r.x});
    }
    return table;
}

std::vector<LemmaAuditRow> run_lemma_audit(const ExperimentConfig& config, int configs) {
    if (configs < 1) throw std::invalid_argument("configs must be at least 1");
    if (config.trials < 1) throw std::invalid_argument("trials must be at least 1");
    const std::size_t n_cfg = static_cast<std::size_t>(configs);
    std::vector<LemmaAuditRow> rows(n_cfg);
    parallel_for(n_cfg, config.threads, [&](std::size_t i) {
        Xoshiro256pp rng(derive_trial_seed(config.master_seed, i));
        LemmaAuditRow row;
        row.config_id = static_cast<int>(i);
        row.k = 1 + static_cast<int>(rng.uniform() * 20.0);
        row.k = std::min(row.k, 20);
        row.c = 0.5 + 7.5 * rng.uniform();
        row.a = row.c * rng.uniform();
        row.b = row.c * rng.uniform();
        row.exact = lemma_kk_exact(row.a, row.b, row.c, row.k);
        row.bound = lemma_kk_bound(row.a, row.b, row.c, row.k);
        row.mc_trials = config.trials;
        std::uint64_t successes = 0;
        for (int t = 0; t < config.trials; ++t) {
            const std::uint64_t na = sample_poisson_count(row.a, rng);
            const std::uint64_t nb = sample_poisson_count(row.b, rng);
            const std::uint64_t nc = sample_poisson_count(row.c, rng);
            if (na >= static_cast<std::uint64_t>(row.k) &&
                nb >= static_cast<std::uint64_t>(row.k) && nc == 0)
                ++successes;
        }
        row.mc_freq = static_cast<double>(successes) / config.trials;
        const double se = std::sqrt(row.exact * (1.0 - row.exact) / config.trials);
        row.dominance_ok = row.exact <= row.bound + 1e-12 * std::max(1.0, row.bound);
        row.mc_ok = row.mc_freq <= row.bound + 3.0 * se &&
                    std::abs(row.mc_freq - row.exact) <= 4.0 * se;
        rows[i] = std::move(row);
    });
    return rows;
}

Table lemma_audit_table(const ExperimentConfig& config, const std::vector<LemmaAuditRow>& rows) {
    Table table({"config_id", "k", "a", "b", "c", "exact", "bound", "mc_freq", "mc_trials",
                 "dominance_ok", "mc_ok"});
    add_meta(table, config);
    for (const LemmaAuditRow& r : rows) {
        table.add_row({static_cast<std::int64_t>(r.config_id), static_cast<std::int64_t>(r.k),
                       r.a, r.b, r.c, r.exact, r.bound, r.mc_freq,
                       static_cast<std::int64_t>(r.mc_trials), r.dominance_ok, r.mc_ok});
    }
    return table;
}

}  // namespace knng
