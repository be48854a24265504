#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "knng/constructions.hpp"
#include "knng/table.hpp"

namespace knng {

struct ExperimentConfig {
    double area_n = 0.0;
    std::optional<int> k;    // exactly one of k / c
    std::optional<double> c;  // k = ceil(c * ln area_n)
    int trials = 1;
    std::uint64_t master_seed = 1;
    std::optional<double> boundary_strip;  // default ln(area_n)
    double small_coeff = 1.0;
    int threads = 1;
    double near_side_mult = 1.0;
    double witness_shrink = 0.0;
    std::string out_path;        // empty -> stdout
    std::string format = "csv";  // csv | json
};

// Throws std::invalid_argument on violated invariants (exactly one of k/c,
// trials >= 1, positive area, sane widths).
void validate_config(const ExperimentConfig& config);

// ceil(c * ln n), at least 1.
int k_from_ratio(double c, double area_n);

int resolved_k(const ExperimentConfig& config);
double resolved_strip(const ExperimentConfig& config);

// Flat key=value summary logged into output headers. Excludes thread count
// and output location so reruns under different scheduling stay
// byte-identical.
std::string config_string(const ExperimentConfig& config);

struct WilsonInterval {
    double lo = 0.0;
    double hi = 1.0;
};

// Wilson score interval for a binomial proportion; stable at 0 and n
// successes. Requires successes <= trials, trials >= 1, z > 0.
WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z);

// Runs body(0..count-1) on up to `threads` workers pulling indices from a
// shared counter. Results must be written to per-index slots; the first
// exception is rethrown after all workers join.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body);

struct SweepRow {
    double area_n = 0.0;
    double c = 0.0;
    int k = 0;
    int trials = 0;
    int connected_count = 0;
    double p_hat = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 1.0;
    double mean_giant_fraction = 0.0;
    double max_small_diameter_normalized = 0.0;
    int boundary_small_trials = 0;
    int interior_small_trials = 0;
    int error_trials = 0;  // sampled point count <= k
};

// One row per grid ratio (or per the single configured k/c when the grid is
// empty): trials independent sample -> build -> census runs, aggregated in
// trial order. Deterministic for a given config regardless of thread count.
std::vector<SweepRow> run_connectivity_sweep(const ExperimentConfig& config,
                                             const std::vector<double>& c_grid);
Table sweep_table(const ExperimentConfig& config, const std::vector<SweepRow>& rows);

struct BoundaryCensusRow {
    double area_n = 0.0;
    int k = 0;
    int trials = 0;
    int connected_trials = 0;
    int boundary_small_trials = 0;       // trials with a small component in the strip
    int interior_small_trials = 0;       // trials with an interior-only small component
    int boundary_small_components = 0;   // totals over all trials
    int interior_small_components = 0;
    int error_trials = 0;
};

// When census_dump is non-null it is filled with one row per component per
// trial (columns comp_id,size,diameter,min_boundary_dist,is_giant,is_small),
// trials concatenated in trial order.
BoundaryCensusRow run_boundary_census(const ExperimentConfig& config,
                                      std::optional<Table>* census_dump = nullptr);
Table boundary_table(const ExperimentConfig& config, const std::vector<BoundaryCensusRow>& rows);

struct ConstructionAuditRow {
    int trial = 0;
    std::uint32_t comp_id = 0;
    std::string mode;  // interior | boundary | skipped
    int k = 0;
    bool fact_a = true;
    bool fact_b = true;
    bool fact_c = true;
    bool fact_d = true;
    bool fact_e = true;
    double a0_area = 0.0;
    double b_area = 0.0;
    double x = 0.0;
    int size = 0;
    std::string skip_reason;
};

// Audits every non-giant component of every trial. Mode per component: no
// window side within the proximity threshold -> interior; exactly one ->
// boundary; two or more -> skipped row.
std::vector<ConstructionAuditRow> run_construction_audit(const ExperimentConfig& config);
Table construction_audit_table(const ExperimentConfig& config,
                               const std::vector<ConstructionAuditRow>& rows);

struct LemmaAuditRow {
    int config_id = 0;
    int k = 0;
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double exact = 0.0;
    double bound = 0.0;
    double mc_freq = 0.0;
    int mc_trials = 0;
    bool dominance_ok = false;
    bool mc_ok = false;
};

// Random (a <= c, b <= c, k <= 20) configurations; per configuration the
// exact probability, the closed-form bound, and a Monte Carlo frequency from
// `config.trials` independent Poisson triples. dominance_ok: exact <= bound
// (tiny slack); mc_ok: freq <= bound + 3 SE and |freq - exact| <= 4 SE.
std::vector<LemmaAuditRow> run_lemma_audit(const ExperimentConfig& config, int configs);
Table lemma_audit_table(const ExperimentConfig& config, const std::vector<LemmaAuditRow>& rows);

}  // namespace knng
