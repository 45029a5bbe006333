// Acceptance suite: one check per release criterion, one pass/fail line each.
// Exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "probelab/bench.hpp"
#include "probelab/conn_world.hpp"
#include "probelab/graph_oracle.hpp"
#include "probelab/hardgen.hpp"
#include "probelab/runner.hpp"
#include "probelab/separator.hpp"
#include "probelab/sum_structures.hpp"
#include "probelab/time_tree.hpp"
#include "probelab/trace_io.hpp"

using namespace probelab;

namespace {

struct Check {
    bool ok = true;
    std::string note;

    void fail(const std::string& why) {
        ok = false;
        if (!note.empty()) note += "; ";
        note += why;
    }
    void require(bool cond, const std::string& why) {
        if (!cond) fail(why);
    }
};

std::string fmt(double x, int prec = 3) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*f", prec, x);
    return buf;
}

// ---------------------------------------------------------------- criterion 1

void oracle_equivalence(Check& c) {
    std::uint64_t combos = 0;
    for (const std::uint64_t n : {std::uint64_t{1} << 8, std::uint64_t{1} << 12}) {
        for (const unsigned delta : {1u, 4u, 8u}) {
            for (const unsigned b : {64u, 128u}) {
                if (max_packed_elements(delta, b, 2) < 2) continue; // no packed layout
                PlainMemory mem(b);
                NaivePrefixOracle<PlainMemory> naive(mem, n, delta);
                ClassicTree<PlainMemory> cq(mem, n, 2, ClassicTreeMode::fast_query, delta);
                ClassicTree<PlainMemory> cu(mem, n, 2, ClassicTreeMode::fast_update, delta);
                PackedTree<PlainMemory> packed(mem, n, delta, false);
                ++combos;

                SplitMix64 rng(n * 100 + delta * 10 + b);
                const std::int64_t dmax = (std::int64_t{1} << delta) - 1;
                for (int t = 0; t < 100000; ++t) {
                    const std::uint64_t k = rng.below(n);
                    if (t % 2 == 0) {
                        const std::int64_t d =
                            static_cast<std::int64_t>(rng.below(2 * dmax + 1)) - dmax;
                        naive.update(k, d);
                        cq.update(k, d);
                        cu.update(k, d);
                        packed.update(k, d);
                    } else {
                        const std::int64_t want = naive.sum(k);
                        if (cq.sum(k) != want || cu.sum(k) != want || packed.sum(k) != want) {
                            c.fail("divergence at n=" + std::to_string(n) + " delta=" +
                                   std::to_string(delta) + " b=" + std::to_string(b));
                            return;
                        }
                    }
                }
            }
        }
    }
    c.note = std::to_string(combos) + " (n,delta,b) combos x 3 structures, 1e5 ops each";
}

// ---------------------------------------------------------------- criterion 2

void word_parallel_exhaustive(Check& c) {
    SplitMix64 rng(20240809);
    std::uint64_t checks = 0;
    for (unsigned B = 1; B <= 5 && c.ok; ++B) {
        for (unsigned f = 2; f <= 6 && c.ok; ++f) {
            const PackedLayout lay = make_custom_layout(B, 1, f, 64, 4);
            std::vector<word128> words{0, lay.clean_mask,
                                       lay.ones_pattern * (word_one << (f - 1))};
            for (int i = 0; i < 64; ++i)
                words.push_back(((static_cast<word128>(rng.next()) << 64) | rng.next()) &
                                lay.clean_mask);
            const auto cap = static_cast<std::int64_t>(low_mask(f - 1));
            for (const word128 w : words) {
                for (unsigned k = 0; k < B; ++k) {
                    for (std::int64_t v = -cap; v <= cap; ++v) {
                        const word128 got = broadcast_suffix_add(w, k, v, lay);
                        word128 want = w & ~lay.fields_mask;
                        for (unsigned i = 0; i < B; ++i) {
                            word128 fv = lay.field(w, i);
                            if (i >= k)
                                fv = (fv + encode_signed(v, f)) & low_mask(f);
                            want |= fv << (i * lay.stride());
                        }
                        ++checks;
                        if (got != want) {
                            c.fail("mismatch B=" + std::to_string(B) + " f=" + std::to_string(f));
                            return;
                        }
                        if ((got & lay.pad_mask) != 0) {
                            c.fail("dirty padding B=" + std::to_string(B));
                            return;
                        }
                    }
                }
            }
        }
    }
    c.note = std::to_string(checks) + " word/index/value combinations";
}

// ---------------------------------------------------------------- criterion 3

void select_discipline(Check& c) {
    const std::uint64_t n = 1024;
    const unsigned delta = 4;
    PlainMemory mem(128);
    PackedTree<PlainMemory> tree(mem, n, delta, true);
    const PackedLayout& lay = tree.layout();
    const unsigned B = tree.branching();

    std::vector<std::int64_t> ref(n, 0);
    std::vector<std::int64_t> prefix(n, 0);
    const auto refresh_prefix = [&] {
        std::int64_t acc = 0;
        for (std::uint64_t i = 0; i < n; ++i) {
            acc += ref[i];
            prefix[i] = acc;
        }
    };

    SplitMix64 rng(555);
    // make every element positive first
    for (std::uint64_t i = 0; i < n; ++i) {
        const std::int64_t d = 1 + static_cast<std::int64_t>(rng.below(7));
        tree.update(i, d);
        ref[i] = d;
    }

    std::uint64_t selects = 0;
    for (int t = 0; t < 100000 && c.ok; ++t) {
        if (rng.chance(1, 2)) {
            const std::uint64_t k = rng.below(n);
            const std::int64_t d = 1 + static_cast<std::int64_t>(rng.below(7));
            tree.update(k, d);
            ref[k] += d;
        } else {
            refresh_prefix();
            const std::int64_t total = prefix[n - 1];
            const std::int64_t sigma =
                1 + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(total)));
            const std::uint64_t got = tree.select(sigma);
            ++selects;
            // binary search on the oracle prefix sums
            const auto it = std::lower_bound(prefix.begin(), prefix.end(), sigma);
            const std::uint64_t want = static_cast<std::uint64_t>(it - prefix.begin());
            if (got != want) {
                c.fail("select(" + std::to_string(sigma) + ") = " + std::to_string(got) +
                       ", oracle " + std::to_string(want));
                break;
            }
            // candidate discipline at every node on the descent path
            std::uint64_t span = 1;
            for (unsigned l = 0; l < tree.depth(); ++l) span *= B;
            std::uint64_t node = 0, rest = got;
            for (unsigned l = 0; l < tree.depth(); ++l) {
                span /= B;
                const auto& small = tree.small(l, node);
                const auto& insp = small.last_inspection();
                const word128 rep = mem.peek(small.addr_rep());
                const word128 len = mem.peek(small.addr_len());
                const unsigned k_succ = insp.successor;
                bool fine = true;
                if (insp.resolved_case == 2) {
                    fine = k_succ < B &&
                           insp.answer == k_succ + static_cast<unsigned>(lay.field(len, k_succ));
                } else {
                    const unsigned start = insp.examined_lo;
                    fine = static_cast<unsigned>(lay.field(rep, start)) == start &&
                           insp.examined_hi ==
                               start + static_cast<unsigned>(lay.field(len, start));
                    if (fine && insp.resolved_case == 0) fine = start == k_succ;
                    if (fine && insp.resolved_case == 1) {
                        const unsigned before = k_succ >= B ? B - 1 : k_succ - 1;
                        fine = start == static_cast<unsigned>(lay.field(rep, before));
                    }
                }
                if (!fine) {
                    c.fail("select looked outside its three candidate locations");
                    break;
                }
                node = node * B + rest / span;
                rest %= span;
            }
        }
    }
    if (c.ok) c.note = std::to_string(selects) + " selects, all within candidate runs";
}

// ---------------------------------------------------------------- criterion 4

void transfer_conservation(Check& c) {
    std::uint64_t traces = 0;

    const auto check_trace = [&](const ProbeTrace& trace, std::uint64_t num_ops,
                                 const std::string& what) {
        const std::uint64_t cross = total_cross_reads(trace);
        for (const unsigned arity : {2u, 4u, 8u}) {
            const TimeTree tree = build_time_tree(trace, num_ops, arity);
            if (tree.transfer_total() != cross)
                c.fail(what + ": transfer sum != cross reads at arity " +
                       std::to_string(arity));
            if (tree.left_sibling_total() != cross)
                c.fail(what + ": left-sibling sum mismatch at arity " + std::to_string(arity));
            if (tree.right_sibling_total() != cross)
                c.fail(what + ": right-sibling sum mismatch at arity " + std::to_string(arity));
        }
        ++traces;
    };

    // 50 random raw traces
    SplitMix64 rng(8);
    for (int trial = 0; trial < 50; ++trial) {
        TracedMemory mem(64);
        const auto base = mem.alloc(12);
        const std::uint64_t num_ops = 32 + rng.below(200);
        for (std::uint64_t t = 0; t < num_ops; ++t) {
            mem.set_current_op(static_cast<std::int64_t>(t));
            const unsigned probes = 1 + static_cast<unsigned>(rng.below(5));
            for (unsigned p = 0; p < probes; ++p) {
                const std::uint64_t addr = base + rng.below(12);
                if (rng.chance(2, 5)) mem.write(addr, rng.below(512));
                else mem.read(addr);
            }
        }
        check_trace(mem.trace(), num_ops, "random trace");
    }

    // every generator family, run on real structures under tracing
    const auto run_sums = [&](const OpSequence& seq, const std::string& what) {
        TracedMemory mem(64);
        PartialSumsAdapter<ClassicTree<TracedMemory>> s(mem, seq.n, 2u,
                                                        ClassicTreeMode::fast_query,
                                                        seq.delta);
        const RunStats st = run_sequence(s, seq, mem);
        if (st.mismatches != 0) c.fail(what + ": replay mismatches");
        check_trace(mem.trace(), seq.ops.size(), what);
    };
    run_sums(bitrev_sequence(256, 4, 21), "bitrev");
    run_sums(random_alternating(2048, 256, 4, 22), "random");
    run_sums(tradeoff_blocks(128, 6, 2, 256, 4, 23), "blocks");

    for (const auto mode : {PermBoxQueryMode::macro_verify, PermBoxQueryMode::random_pairs}) {
        const OpSequence seq = permbox_sequence(8, 8, 6, PermBoxOrder::bitrev, mode, 24);
        TracedMemory mem(64);
        EulerTourForest<TracedMemory> f(mem, static_cast<std::uint32_t>(seq.n), 1);
        const RunStats st = run_conn_sequence(f, seq, mem);
        if (st.mismatches != 0) c.fail("permbox: replay mismatches");
        check_trace(mem.trace(), seq.ops.size(), "permbox");
    }

    if (c.ok) c.note = std::to_string(traces) + " traces conserved exactly at arity 2/4/8";
}

// ---------------------------------------------------------------- criterion 5

void interleaving_statistics(Check& c) {
    const std::uint64_t L = 1000;
    SplitMix64 rng(31);
    double mean = 0;
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<int> side(2 * L, 0);
        std::uint64_t rem = L;
        for (std::uint64_t i = 0; i < 2 * L; ++i) {
            if (rng.below(2 * L - i) < rem) {
                side[i] = 1;
                --rem;
            }
        }
        std::vector<std::int64_t> a, b;
        for (std::uint64_t i = 0; i < 2 * L; ++i)
            (side[i] ? a : b).push_back(static_cast<std::int64_t>(i));
        mean += static_cast<double>(interleaving(std::move(a), std::move(b)));
    }
    mean /= 100.0;
    c.require(mean >= 0.4 * static_cast<double>(L) && mean <= 0.6 * static_cast<double>(L),
              "mean " + fmt(mean) + " outside [400,600]");
    c.note = "mean interleaving " + fmt(mean, 1) + " of L=1000";
}

// ---------------------------------------------------------------- criterion 6

void bitrev_interleaving_shape(Check& c) {
    double lo = 1e18, hi = 0;
    for (unsigned k = 6; k <= 12; ++k) {
        const std::uint64_t n = std::uint64_t{1} << k;
        const OpSequence seq = bitrev_sequence(n, 4, 1);
        std::vector<OpTouch> touches;
        touches.reserve(seq.ops.size());
        for (const Op& op : seq.ops)
            touches.push_back({static_cast<std::int64_t>(op.index), op.kind == OpKind::update});
        const double norm = static_cast<double>(total_tree_interleaving(touches)) /
                            (static_cast<double>(n) * k);
        lo = std::min(lo, norm);
        hi = std::max(hi, norm);
    }
    c.require(hi / lo < 1.10, "normalized band " + fmt(lo) + ".." + fmt(hi) +
                                  " varies by " + fmt(100 * (hi / lo - 1), 1) + "%");
    c.note = "total/(n lg n) in [" + fmt(lo) + ", " + fmt(hi) + "], spread " +
             fmt(100 * (hi / lo - 1), 2) + "%";
}

// ---------------------------------------------------------------- criterion 7

void probe_shape(Check& c) {
    std::vector<std::pair<std::uint64_t, double>> classic_probes;
    std::vector<std::pair<std::uint64_t, double>> classic_reads;
    const std::uint64_t m = 8192;

    for (unsigned k = 8; k <= 18; ++k) {
        const std::uint64_t n = std::uint64_t{1} << k;
        const OpSequence seq = random_alternating(m, n, 8, 1000 + k);
        TracedMemory mem(64);
        PartialSumsAdapter<ClassicTree<TracedMemory>> s(mem, n, 2u,
                                                        ClassicTreeMode::fast_query, 8u);
        RunStats st;
        const ProbeCost pc = probe_cost_report(s, seq, mem, &st);
        if (st.mismatches != 0) c.fail("classic replay mismatch at n=2^" + std::to_string(k));
        classic_probes.emplace_back(n, pc.amortized_per_op());
        classic_reads.emplace_back(n, pc.amortized_reads_per_op());
    }

    const LogFit fit = fit_log_curve(classic_probes);
    c.require(fit.r2 > 0.99, "classic r^2 = " + fmt(fit.r2, 5));

    bool packed_always_lower = true;
    double worst_gap = 1e18;
    for (unsigned k = 12; k <= 18; ++k) {
        const std::uint64_t n = std::uint64_t{1} << k;
        const OpSequence seq = random_alternating(m, n, 8, 1000 + k);
        TracedMemory mem(128);
        PartialSumsAdapter<PackedTree<TracedMemory>> s(mem, n, 8u, false);
        RunStats st;
        const ProbeCost pc = probe_cost_report(s, seq, mem, &st);
        if (st.mismatches != 0) c.fail("packed replay mismatch at n=2^" + std::to_string(k));
        const double classic = classic_reads[k - 8].second;
        const double packed = pc.amortized_reads_per_op();
        if (packed >= classic) packed_always_lower = false;
        worst_gap = std::min(worst_gap, classic - packed);
    }
    c.require(packed_always_lower, "packed reads not strictly below classic somewhere");
    c.note = "classic fit r^2 " + fmt(fit.r2, 5) + ", slope " + fmt(fit.slope, 2) +
             "; packed read margin >= " + fmt(worst_gap, 2) + "/op";
}

// ---------------------------------------------------------------- criterion 8

void connectivity_equivalence(Check& c) {
    std::uint64_t ops_total = 0, conn_queries = 0;

    for (const auto mode : {PermBoxQueryMode::macro_verify, PermBoxQueryMode::random_pairs}) {
        const std::uint32_t side = 16;
        const std::uint64_t blocks = mode == PermBoxQueryMode::macro_verify ? 90 : 40;
        const std::uint64_t qpb = 100; // random_pairs only
        std::vector<PermBoxInstance> states;
        const OpSequence seq =
            permbox_sequence(side, blocks, qpb, PermBoxOrder::uniform, mode, 606, &states);
        ops_total += seq.ops.size();

        PlainMemory mem(64);
        EulerTourForest<PlainMemory> f(mem, static_cast<std::uint32_t>(seq.n), 9);
        GraphOracle oracle(static_cast<std::uint32_t>(seq.n));
        std::size_t at_state = 0;
        std::uint64_t macro_seen = 0;
        const std::uint64_t prologue = static_cast<std::uint64_t>(side) * side;

        for (const Op& op : seq.ops) {
            switch (op.kind) {
                case OpKind::insert:
                    f.link(op.u, op.v);
                    oracle.insert(op.u, op.v);
                    ++macro_seen;
                    break;
                case OpKind::erase:
                    f.cut(op.u, op.v);
                    oracle.erase(op.u, op.v);
                    ++macro_seen;
                    break;
                case OpKind::connected: {
                    ++conn_queries;
                    const bool got = f.connected(op.u, op.v);
                    if (got != op.expected_flag) {
                        c.fail("expected-answer mismatch");
                        return;
                    }
                    if (got != oracle.connected(op.u, op.v)) {
                        c.fail("forest disagrees with BFS oracle");
                        return;
                    }
                    break;
                }
                default:
                    c.fail("unexpected op kind");
                    return;
            }
            const bool boundary =
                macro_seen == prologue ||
                (macro_seen > prologue && (macro_seen - prologue) % (2 * side) == 0);
            if (boundary && op.kind != OpKind::connected) {
                // after every macro-update: side disjoint paths, and the
                // box composition agrees with actual path tracing
                if (oracle.num_components() != side) {
                    c.fail("not a union of side paths after a macro-update");
                    return;
                }
                if (at_state < states.size() &&
                    macro_seen == prologue + at_state * 2 * side) {
                    const PermBoxInstance& inst = states[at_state];
                    for (std::uint32_t x = 0; x <= side; ++x) {
                        const Permutation comp = inst.compose_prefix(x);
                        for (std::uint32_t y = 0; y < side; ++y) {
                            if (!oracle.connected(inst.vertex_id(0, y),
                                                  inst.vertex_id(x, comp(y)))) {
                                c.fail("compose_prefix disagrees with path tracing");
                                return;
                            }
                        }
                    }
                    ++at_state;
                }
            }
        }
    }
    c.note = std::to_string(ops_total) + " ops, " + std::to_string(conn_queries) +
             " queries, zero mismatches, both query modes";
}

// ---------------------------------------------------------------- criterion 9

void reductions(Check& c) {
    // part 1: single-query reduction on an evolving disjoint-paths instance,
    // checked against a BFS oracle of the base graph, with exact edge-set
    // restoration after every query
    {
        const std::uint32_t side = 12;
        PermBoxInstance inst = PermBoxInstance::identity(side);
        PlainMemory mem(64);
        ConnectivityWorld<PlainMemory> w(mem, inst.num_vertices());
        GraphOracle base(inst.num_vertices());
        SplitMix64 rng(17);

        const auto add = [&](std::uint32_t a, std::uint32_t b) {
            w.insert(a, b);
            base.insert(a, b);
        };
        const auto del = [&](std::uint32_t a, std::uint32_t b) {
            w.erase(a, b);
            base.erase(a, b);
        };
        for (std::uint32_t x = 0; x < side; ++x)
            for (std::uint32_t y = 0; y < side; ++y)
                add(inst.vertex_id(x, y), inst.vertex_id(x + 1, y));

        std::vector<std::uint32_t> anchors;
        for (std::uint32_t y = 0; y < side; ++y) anchors.push_back(inst.vertex_id(0, y));
        w.install_gadget(anchors);
        if (!w.whole_graph_connected()) {
            c.fail("gadget did not connect the path instance");
            return;
        }

        auto snapshot = w.forest().edges();
        for (int t = 0; t < 1000; ++t) {
            if (t % 50 == 25) {
                // macro-update: swap one box for a fresh permutation
                const auto box = static_cast<std::uint32_t>(rng.below(side));
                for (std::uint32_t y = 0; y < side; ++y)
                    del(inst.vertex_id(box, y), inst.vertex_id(box + 1, inst.boxes[box](y)));
                inst.boxes[box] = Permutation::random(side, rng);
                for (std::uint32_t y = 0; y < side; ++y)
                    add(inst.vertex_id(box, y), inst.vertex_id(box + 1, inst.boxes[box](y)));
                snapshot = w.forest().edges();
            }
            const auto u = static_cast<std::uint32_t>(rng.below(side)); // first column
            const auto v = static_cast<std::uint32_t>(rng.below(inst.num_vertices()));
            const bool direct = base.connected(u, v);
            if (w.reduce_connectivity_query_via_whole(u, v) != direct) {
                c.fail("reduction disagrees with base connectivity");
                return;
            }
            if (w.forest().edges() != snapshot) {
                c.fail("edge set changed by a reduction query");
                return;
            }
        }
    }

    // part 2: msf == n-1 iff whole graph connected, on random forests
    SplitMix64 rng(18);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::uint32_t n = 2 + static_cast<std::uint32_t>(rng.below(30));
        PlainMemory mem(64);
        ConnectivityWorld<PlainMemory> w(mem, n);
        GraphOracle oracle(n);
        const std::uint64_t attempts = rng.below(3 * n);
        for (std::uint64_t i = 0; i < attempts; ++i) {
            const auto u = static_cast<std::uint32_t>(rng.below(n));
            const auto v = static_cast<std::uint32_t>(rng.below(n));
            if (u != v && !oracle.connected(u, v)) {
                w.insert(u, v);
                oracle.insert(u, v);
            }
        }
        const std::int64_t msf = w.msf_cost_unit();
        const bool whole = w.whole_graph_connected();
        const std::int64_t oracle_msf =
            static_cast<std::int64_t>(n) - static_cast<std::int64_t>(oracle.num_components());
        if (msf != oracle_msf) {
            c.fail("msf cost disagrees with vertex minus component count");
            return;
        }
        if ((msf == static_cast<std::int64_t>(n) - 1) != whole) {
            c.fail("msf == n-1 does not match whole-graph connectivity");
            return;
        }
    }
    c.note = "1000 reduction queries restored state; 1000 random forests for msf";
}

// --------------------------------------------------------------- criterion 10

void separator_lemma(Check& c) {
    for (unsigned a = 1; a <= 3 && c.ok; ++a)
        for (unsigned b = 1; b <= 3 && c.ok; ++b)
            for (const unsigned u : {8u, 16u, 32u}) {
                try {
                    const SetSystem sys = build_system(a, b, u, 1);
                    if (!sys.verified) {
                        c.fail("unverified at a=" + std::to_string(a) + " b=" +
                               std::to_string(b) + " u=" + std::to_string(u));
                        return;
                    }
                } catch (const std::exception& e) {
                    c.fail("construction failed at a=" + std::to_string(a) + " b=" +
                           std::to_string(b) + " u=" + std::to_string(u) + ": " + e.what());
                    return;
                }
            }

    // first-try success rate on the reference point
    unsigned first_try = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed)
        if (verify_system(sample_system(2, 2, 16, seed, 0))) ++first_try;
    c.require(first_try >= 9, "only " + std::to_string(first_try) + "/10 seeds verified first try");
    c.note = "all 27 (a,b,u) combos verified; " + std::to_string(first_try) +
             "/10 first-try at a=b=2,u=16";
}

// --------------------------------------------------------------- criterion 11

void reproducibility(Check& c) {
    ExperimentConfig cfg;
    cfg.structure = "packed";
    cfg.family = "blocks";
    cfg.n = 512;
    cfg.b = 128;
    cfg.delta = 6;
    cfg.t_u = 3;
    cfg.t_q = 2;
    cfg.ops = 2000;
    cfg.seed = 4242;

    const ExperimentResult r1 = run_experiment(cfg);
    const ExperimentResult r2 = run_experiment(cfg);

    const std::string csv1 = cost_rows_to_csv({r1.row});
    const std::string csv2 = cost_rows_to_csv({r2.row});
    c.require(csv1 == csv2, "CSV differs between runs");

    std::ostringstream t1, t2;
    write_trace_jsonl(t1, r1.trace);
    write_trace_jsonl(t2, r2.trace);
    c.require(t1.str() == t2.str(), "trace JSONL differs between runs");

    std::ostringstream g1, g2;
    write_sequence_jsonl(g1, make_workload(cfg));
    write_sequence_jsonl(g2, make_workload(cfg));
    c.require(g1.str() == g2.str(), "workload JSONL differs between runs");

    if (c.ok)
        c.note = std::to_string(csv1.size()) + "B CSV and " + std::to_string(t1.str().size()) +
                 "B trace byte-identical";
}

} // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<void(Check&)> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "oracle equivalence (sums)", oracle_equivalence},
        {2, "word-parallel suffix add, exhaustive", word_parallel_exhaustive},
        {3, "select candidate discipline", select_discipline},
        {4, "transfer conservation", transfer_conservation},
        {5, "random interleaving statistics", interleaving_statistics},
        {6, "bit-reversal total interleaving shape", bitrev_interleaving_shape},
        {7, "logarithmic probe shape and packed advantage", probe_shape},
        {8, "connectivity equivalence on permutation boxes", connectivity_equivalence},
        {9, "whole-graph and msf reductions", reductions},
        {10, "separator systems at desk scale", separator_lemma},
        {11, "byte-identical reruns", reproducibility},
    };

    int failures = 0;
    for (const Criterion& cr : criteria) {
        Check check;
        const auto start = std::chrono::steady_clock::now();
        try {
            cr.run(check);
        } catch (const std::exception& e) {
            check.fail(std::string("exception: ") + e.what());
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] %2d. %s (%.1fs)%s%s\n", check.ok ? "PASS" : "FAIL", cr.id, cr.name,
                    secs, check.note.empty() ? "" : " -- ", check.note.c_str());
        std::fflush(stdout);
        if (!check.ok) ++failures;
    }
    if (failures != 0) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
