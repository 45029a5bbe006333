// Command-line driver: run structures on generated workloads under the
// cell-probe tracer, dump workloads and traces, and analyze traces into
// time-tree transfer tables.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "probelab/bench.hpp"
#include "probelab/separator.hpp"
#include "probelab/trace_io.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 2;
constexpr int exit_mismatch = 3;

// Write-to-temp-then-rename so partial output never lands under the target name.
void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot open " + tmp);
        os << content;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot move output into place: " + path);
}

void emit(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-")
        std::cout << content;
    else
        write_file_atomic(path, content);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cell-probe workload bench for partial sums and dynamic connectivity"};
    app.require_subcommand(1);

    probelab::ExperimentConfig cfg;
    std::string csv_path;
    std::string trace_path;

    auto add_workload_flags = [&](CLI::App* cmd) {
        cmd->add_option("--family", cfg.family,
                        "bitrev | random | blocks | permbox-verify | permbox-paths");
        cmd->add_option("--n", cfg.n, "array length (sums families)");
        cmd->add_option("--b", cfg.b, "cell width in bits (64 or 128)");
        cmd->add_option("--delta", cfg.delta, "update argument width in bits");
        cmd->add_option("--ops", cfg.ops, "operation count for random/blocks");
        cmd->add_option("--tu", cfg.t_u, "queries per block (blocks family)");
        cmd->add_option("--tq", cfg.t_q, "updates per block (blocks family)");
        cmd->add_option("--side", cfg.side, "wires per column (permbox families)");
        cmd->add_option("--blocks", cfg.blocks, "macro-update rounds (permbox families)");
        cmd->add_option("--qpb", cfg.queries_per_block,
                        "queries per block (permbox-paths family)");
        cmd->add_option("--seed", cfg.seed, "workload seed");
        cmd->add_option("--arity", cfg.arity, "time-tree arity for analysis");
    };

    CLI::App* bench = app.add_subcommand("bench", "run a structure on a workload under tracing");
    bench->add_option("--structure", cfg.structure,
                      "naive | classic-query | classic-update | packed | ett")
        ->required();
    add_workload_flags(bench);
    bench->add_option("--csv", csv_path, "cost table output path (default stdout)");
    bench->add_option("--trace", trace_path, "also dump the probe trace as JSONL");

    CLI::App* gen = app.add_subcommand("gen", "generate a workload as JSONL");
    add_workload_flags(gen);
    std::string out_path;
    gen->add_option("--out", out_path, "output path (default stdout)");

    CLI::App* analyze = app.add_subcommand("analyze", "trace JSONL -> time-tree transfer CSV");
    std::string trace_in;
    std::uint64_t analyze_ops = 0;
    unsigned analyze_arity = 2;
    analyze->add_option("--trace", trace_in, "input trace JSONL")->required();
    analyze->add_option("--arity", analyze_arity, "time-tree arity");
    analyze->add_option("--ops", analyze_ops, "operation count (default: max op index + 1)");
    analyze->add_option("--csv", csv_path, "output path (default stdout)");

    CLI::App* sep = app.add_subcommand("separator-demo",
                                       "build and verify a separator set system");
    unsigned sep_a = 2, sep_b = 2, sep_u = 16;
    std::uint64_t sep_seed = 1;
    sep->add_option("--a", sep_a, "bound on |A|");
    sep->add_option("--b", sep_b, "bound on |B|");
    sep->add_option("--u", sep_u, "universe size (at most 64)");
    sep->add_option("--seed", sep_seed, "sampling seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (bench->parsed()) {
            if (cfg.family.empty())
                cfg.family = cfg.structure == "ett" ? "permbox-paths" : "random";
            const probelab::ExperimentResult res = probelab::run_experiment(cfg);
            emit(csv_path, probelab::cost_rows_to_csv({res.row}));
            if (!trace_path.empty()) {
                std::ostringstream os;
                probelab::write_trace_jsonl(os, res.trace);
                write_file_atomic(trace_path, os.str());
            }
            if (res.stats.mismatches != 0) {
                std::cerr << res.stats.mismatches << " expected-answer mismatches\n";
                for (const std::string& s : res.stats.mismatch_notes) std::cerr << "  " << s << "\n";
                return exit_mismatch;
            }
            return exit_ok;
        }

        if (gen->parsed()) {
            if (cfg.family.empty()) cfg.family = "random";
            const probelab::OpSequence seq = probelab::make_workload(cfg);
            std::ostringstream os;
            probelab::write_sequence_jsonl(os, seq);
            emit(out_path, os.str());
            return exit_ok;
        }

        if (analyze->parsed()) {
            std::ifstream is(trace_in);
            if (!is) throw std::runtime_error("cannot open " + trace_in);
            const probelab::ProbeTrace trace = probelab::read_trace_jsonl(is);
            std::uint64_t num_ops = analyze_ops;
            if (num_ops == 0) {
                for (const probelab::ProbeEvent& e : trace)
                    num_ops = std::max(num_ops, static_cast<std::uint64_t>(e.op_index) + 1);
                if (num_ops == 0) num_ops = 1;
            }
            const probelab::TimeTree tree = probelab::build_time_tree(trace, num_ops, analyze_arity);
            emit(csv_path, probelab::time_tree_to_csv(tree));
            std::cerr << "cross-op reads " << probelab::total_cross_reads(trace)
                      << ", tree transfer total " << tree.transfer_total() << "\n";
            return exit_ok;
        }

        if (sep->parsed()) {
            const probelab::SetSystem sys = probelab::build_system(sep_a, sep_b, sep_u, sep_seed);
            const double lg_size = std::log2(static_cast<double>(sys.sets.size()));
            double choose = 1.0; // C(a+b, a)
            for (unsigned i = 1; i <= sep_a; ++i)
                choose = choose * (sep_b + i) / i;
            const double denom = std::log2(std::log2(static_cast<double>(sep_u))) +
                                 std::log2(choose);
            std::cout << "universe " << sep_u << ", |A|<=" << sep_a << ", |B|<=" << sep_b
                      << ": " << sys.sets.size() << " sets, "
                      << (sys.verified ? "verified" : "unverified") << "\n";
            std::cout << "lg|S| = " << lg_size << ", lglg u + lg C(a+b,a) = " << denom
                      << ", measured constant = " << lg_size / denom << "\n";
            return exit_ok;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_usage;
}
