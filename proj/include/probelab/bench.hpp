#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "probelab/hardgen.hpp"
#include "probelab/runner.hpp"
#include "probelab/time_tree.hpp"

namespace probelab {

struct ExperimentConfig {
    std::string structure; // naive | classic-query | classic-update | packed | ett
    std::string family;    // bitrev | random | blocks | permbox-verify | permbox-paths
    std::uint64_t n = 1024;
    unsigned b = 64;
    unsigned delta = 8;
    std::uint64_t ops = 0; // op count for random/blocks; 0 picks a default
    std::uint64_t t_u = 1;
    std::uint64_t t_q = 1;
    std::uint32_t side = 16;
    std::uint64_t blocks = 0; // permbox blocks; 0 means `side`
    std::uint64_t queries_per_block = 4;
    std::uint64_t seed = 1;
    unsigned arity = 2;
};

struct CostRow {
    std::uint64_t n = 0;
    unsigned b = 0;
    unsigned delta = 0;
    std::string structure;
    std::string family;
    std::uint64_t total_reads = 0;
    std::uint64_t total_writes = 0;
    double amortized_per_op = 0.0;
    std::uint64_t transfer_total = 0;
    std::vector<std::uint64_t> per_level_transfer;
};

struct ExperimentResult {
    CostRow row;
    RunStats stats;
    ProbeTrace trace;
    std::uint64_t num_ops = 0;
};

bool is_sum_structure(const std::string& id);
bool is_sum_family(const std::string& id);

// Builds the workload for a config (sums families only).
OpSequence make_workload(const ExperimentConfig& cfg);

// Runs one config on a traced instance. Deterministic given the config.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

std::string cost_rows_to_csv(const std::vector<CostRow>& rows);

struct LogFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

// Least-squares fit of cost against lg n over (n, cost) samples.
LogFit fit_log_curve(const std::vector<std::pair<std::uint64_t, double>>& rows);

} // namespace probelab
