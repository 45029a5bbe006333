#include "probelab/bench.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace probelab {

bool is_sum_structure(const std::string& id) {
    return id == "naive" || id == "classic-query" || id == "classic-update" || id == "packed";
}

bool is_sum_family(const std::string& id) {
    return id == "bitrev" || id == "random" || id == "blocks";
}

OpSequence make_workload(const ExperimentConfig& cfg) {
    if (cfg.family == "bitrev") return bitrev_sequence(cfg.n, cfg.delta, cfg.seed);
    if (cfg.family == "random") {
        const std::uint64_t m = cfg.ops ? cfg.ops : 4096;
        return random_alternating(m, cfg.n, cfg.delta, cfg.seed);
    }
    if (cfg.family == "blocks") {
        const std::uint64_t per_block = cfg.t_u + cfg.t_q;
        const std::uint64_t blocks = cfg.ops ? (cfg.ops + per_block - 1) / per_block : 256;
        return tradeoff_blocks(blocks, cfg.t_u, cfg.t_q, cfg.n, cfg.delta, cfg.seed);
    }
    if (cfg.family == "permbox-verify" || cfg.family == "permbox-paths") {
        const PermBoxQueryMode mode = cfg.family == "permbox-verify"
                                          ? PermBoxQueryMode::macro_verify
                                          : PermBoxQueryMode::random_pairs;
        const std::uint64_t blocks = cfg.blocks ? cfg.blocks : cfg.side;
        // bit-reversed box order touches every box exactly once; longer runs
        // fall back to uniformly random boxes
        const PermBoxOrder order = is_power_of_two(cfg.side) && blocks <= cfg.side
                                       ? PermBoxOrder::bitrev
                                       : PermBoxOrder::uniform;
        return permbox_sequence(cfg.side, blocks, cfg.queries_per_block, order, mode, cfg.seed);
    }
    throw std::invalid_argument("unknown workload family: " + cfg.family);
}

namespace {

std::unique_ptr<PartialSums> make_structure(const std::string& id, TracedMemory& mem,
                                            std::uint64_t n, unsigned delta) {
    if (id == "naive")
        return std::make_unique<PartialSumsAdapter<NaivePrefixOracle<TracedMemory>>>(mem, n, delta);
    if (id == "classic-query")
        return std::make_unique<PartialSumsAdapter<ClassicTree<TracedMemory>>>(
            mem, n, 2, ClassicTreeMode::fast_query, delta);
    if (id == "classic-update")
        return std::make_unique<PartialSumsAdapter<ClassicTree<TracedMemory>>>(
            mem, n, 2, ClassicTreeMode::fast_update, delta);
    if (id == "packed")
        return std::make_unique<PartialSumsAdapter<PackedTree<TracedMemory>>>(mem, n, delta,
                                                                              false);
    throw std::invalid_argument("unknown structure: " + id);
}

} // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    ExperimentResult res;
    const OpSequence seq = make_workload(cfg);

    if (is_sum_structure(cfg.structure)) {
        if (!is_sum_family(cfg.family))
            throw std::invalid_argument("structure " + cfg.structure +
                                        " needs a partial-sums workload");
        TracedMemory mem(cfg.b);
        auto s = make_structure(cfg.structure, mem, cfg.n, cfg.delta);
        res.stats = run_sequence(*s, seq, mem);
        res.trace = mem.trace();
        res.num_ops = seq.ops.size();
    } else if (cfg.structure == "ett") {
        if (is_sum_family(cfg.family))
            throw std::invalid_argument("structure ett needs a connectivity workload");
        TracedMemory mem(cfg.b);
        EulerTourForest<TracedMemory> forest(mem, static_cast<std::uint32_t>(seq.n), cfg.seed);
        res.stats = run_conn_sequence(forest, seq, mem);
        res.trace = mem.trace();
        res.num_ops = seq.ops.size();
    } else {
        throw std::invalid_argument("unknown structure: " + cfg.structure);
    }

    const ProbeCost pc = probe_cost_from_trace(res.trace, res.num_ops);
    const TimeTree tree = build_time_tree(res.trace, res.num_ops, cfg.arity);

    res.row.n = seq.n;
    res.row.b = cfg.b;
    res.row.delta = cfg.delta;
    res.row.structure = cfg.structure;
    res.row.family = cfg.family;
    res.row.total_reads = pc.total_reads;
    res.row.total_writes = pc.total_writes;
    res.row.amortized_per_op = pc.amortized_per_op();
    res.row.transfer_total = tree.transfer_total();
    res.row.per_level_transfer = tree.per_level_transfer();
    return res;
}

std::string cost_rows_to_csv(const std::vector<CostRow>& rows) {
    std::string out = "# schema=1\n";
    out += "n,b,delta,structure,family,total_reads,total_writes,amortized_per_op,"
           "transfer_total,per_level_transfer\n";
    char buf[64];
    for (const CostRow& r : rows) {
        out += std::to_string(r.n);
        out += ',';
        out += std::to_string(r.b);
        out += ',';
        out += std::to_string(r.delta);
        out += ',';
        out += r.structure;
        out += ',';
        out += r.family;
        out += ',';
        out += std::to_string(r.total_reads);
        out += ',';
        out += std::to_string(r.total_writes);
        out += ',';
        std::snprintf(buf, sizeof buf, "%.6f", r.amortized_per_op);
        out += buf;
        out += ',';
        out += std::to_string(r.transfer_total);
        out += ',';
        for (std::size_t i = 0; i < r.per_level_transfer.size(); ++i) {
            if (i) out += ';';
            out += std::to_string(r.per_level_transfer[i]);
        }
        out += '\n';
    }
    return out;
}

LogFit fit_log_curve(const std::vector<std::pair<std::uint64_t, double>>& rows) {
    if (rows.size() < 3) throw std::invalid_argument("need at least three samples");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(rows.size());
    for (const auto& [n, y] : rows) {
        const double x = std::log2(static_cast<double>(n));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double det = m * sxx - sx * sx;
    if (std::abs(det) < 1e-12) throw std::invalid_argument("samples need distinct n");
    LogFit fit;
    fit.slope = (m * sxy - sx * sy) / det;
    fit.intercept = (sy - fit.slope * sx) / m;

    double ss_res = 0, ss_tot = 0;
    const double mean_y = sy / m;
    for (const auto& [n, y] : rows) {
        const double x = std::log2(static_cast<double>(n));
        const double pred = fit.slope * x + fit.intercept;
        ss_res += (y - pred) * (y - pred);
        ss_tot += (y - mean_y) * (y - mean_y);
    }
    fit.r2 = ss_tot < 1e-12 ? (ss_res < 1e-12 ? 1.0 : 0.0) : 1.0 - ss_res / ss_tot;
    return fit;
}

} // namespace probelab
