#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "probelab/conn_world.hpp"
#include "probelab/hardgen.hpp"
#include "probelab/memory.hpp"
#include "probelab/sum_structures.hpp"

namespace probelab {

struct RunStats {
    std::uint64_t ops = 0;
    std::uint64_t mismatches = 0;
    std::vector<std::string> mismatch_notes; // first few, for reporting
};

namespace detail {
inline void note_mismatch(RunStats& st, std::string what) {
    ++st.mismatches;
    if (st.mismatch_notes.size() < 8) st.mismatch_notes.push_back(std::move(what));
}
} // namespace detail

// Replays a partial-sums workload, attributing each op's probes to its index
// and checking attached expected answers.
template <class Backend>
RunStats run_sequence(PartialSums& s, const OpSequence& seq, Backend& mem) {
    RunStats st;
    for (std::size_t t = 0; t < seq.ops.size(); ++t) {
        mem.set_current_op(static_cast<std::int64_t>(t));
        const Op& op = seq.ops[t];
        switch (op.kind) {
            case OpKind::update:
                s.update(op.index, op.delta);
                break;
            case OpKind::sum: {
                const std::int64_t got = s.sum(op.index);
                if (got != op.expected)
                    detail::note_mismatch(st, "op " + std::to_string(t) + ": sum(" +
                                                  std::to_string(op.index) + ") = " +
                                                  std::to_string(got) + ", expected " +
                                                  std::to_string(op.expected));
                break;
            }
            case OpKind::select: {
                const std::uint64_t got = s.select(op.sigma);
                if (got != static_cast<std::uint64_t>(op.expected))
                    detail::note_mismatch(st, "op " + std::to_string(t) + ": select(" +
                                                  std::to_string(op.sigma) + ") = " +
                                                  std::to_string(got) + ", expected " +
                                                  std::to_string(op.expected));
                break;
            }
            default:
                throw std::invalid_argument("connectivity op in a partial-sums workload");
        }
        ++st.ops;
    }
    return st;
}

// Replays a connectivity workload on the forest.
template <class Backend>
RunStats run_conn_sequence(EulerTourForest<Backend>& f, const OpSequence& seq, Backend& mem) {
    RunStats st;
    for (std::size_t t = 0; t < seq.ops.size(); ++t) {
        mem.set_current_op(static_cast<std::int64_t>(t));
        const Op& op = seq.ops[t];
        switch (op.kind) {
            case OpKind::insert:
                f.link(op.u, op.v);
                break;
            case OpKind::erase:
                f.cut(op.u, op.v);
                break;
            case OpKind::connected: {
                const bool got = f.connected(op.u, op.v);
                if (got != op.expected_flag)
                    detail::note_mismatch(st, "op " + std::to_string(t) + ": connected(" +
                                                  std::to_string(op.u) + "," +
                                                  std::to_string(op.v) + ") = " +
                                                  (got ? "true" : "false"));
                break;
            }
            default:
                throw std::invalid_argument("partial-sums op in a connectivity workload");
        }
        ++st.ops;
    }
    return st;
}

struct ProbeCost {
    std::uint64_t total_reads = 0;
    std::uint64_t total_writes = 0;
    std::vector<std::uint64_t> reads_per_op;
    std::vector<std::uint64_t> writes_per_op;

    double amortized_per_op() const {
        const std::size_t n = reads_per_op.size();
        return n == 0 ? 0.0
                      : static_cast<double>(total_reads + total_writes) / static_cast<double>(n);
    }
    double amortized_reads_per_op() const {
        const std::size_t n = reads_per_op.size();
        return n == 0 ? 0.0 : static_cast<double>(total_reads) / static_cast<double>(n);
    }
};

inline ProbeCost probe_cost_from_trace(const ProbeTrace& trace, std::uint64_t num_ops) {
    ProbeCost pc;
    pc.reads_per_op.assign(num_ops, 0);
    pc.writes_per_op.assign(num_ops, 0);
    for (const ProbeEvent& e : trace) {
        if (e.op_index < 0 || static_cast<std::uint64_t>(e.op_index) >= num_ops)
            throw std::range_error("event operation index outside the sequence");
        if (e.is_write) {
            ++pc.writes_per_op[e.op_index];
            ++pc.total_writes;
        } else {
            ++pc.reads_per_op[e.op_index];
            ++pc.total_reads;
        }
    }
    return pc;
}

// Executes a workload on a traced instance and reports per-op and amortized
// probe counts along with the stats of the run itself.
inline ProbeCost probe_cost_report(PartialSums& s, const OpSequence& seq, TracedMemory& mem,
                                   RunStats* stats_out = nullptr) {
    const std::size_t before = mem.trace().size();
    RunStats st = run_sequence(s, seq, mem);
    if (stats_out) *stats_out = st;
    ProbeTrace fresh(mem.trace().begin() + static_cast<std::ptrdiff_t>(before),
                     mem.trace().end());
    return probe_cost_from_trace(fresh, seq.ops.size());
}

} // namespace probelab
