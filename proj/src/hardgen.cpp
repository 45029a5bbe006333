#include "probelab/hardgen.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "probelab/words.hpp"

namespace probelab {

namespace {

// Replay oracle for attaching expected answers while generating.
struct FenwickRef {
    std::uint64_t n;
    std::vector<std::int64_t> bit;

    explicit FenwickRef(std::uint64_t n) : n(n), bit(n + 1, 0) {}

    void update(std::uint64_t k, std::int64_t d) {
        for (std::uint64_t i = k + 1; i <= n; i += i & (~i + 1)) bit[i] += d;
    }

    std::int64_t sum(std::uint64_t k) const {
        std::int64_t s = 0;
        for (std::uint64_t i = k + 1; i > 0; i -= i & (~i + 1)) s += bit[i];
        return s;
    }
};

std::int64_t signed_delta(SplitMix64& rng, unsigned delta) {
    const std::uint64_t raw = rng.below(std::uint64_t{1} << delta);
    return static_cast<std::int64_t>(raw) - (std::int64_t{1} << (delta - 1));
}

void check_delta_bits(unsigned delta) {
    if (delta < 1 || delta > 62) throw std::invalid_argument("delta out of supported range");
}

} // namespace

Permutation::Permutation(std::uint32_t order) : map(order) {}

Permutation Permutation::identity(std::uint32_t order) {
    Permutation p(order);
    for (std::uint32_t i = 0; i < order; ++i) p.map[i] = i;
    return p;
}

Permutation Permutation::random(std::uint32_t order, SplitMix64& rng) {
    Permutation p = identity(order);
    for (std::uint32_t i = order; i > 1; --i)
        std::swap(p.map[i - 1], p.map[rng.below(i)]);
    return p;
}

bool Permutation::is_valid() const {
    std::vector<bool> seen(map.size(), false);
    for (std::uint32_t x : map) {
        if (x >= map.size() || seen[x]) return false;
        seen[x] = true;
    }
    return true;
}

Permutation Permutation::then(const Permutation& next) const {
    if (next.order() != order()) throw std::invalid_argument("order mismatch");
    Permutation r(order());
    for (std::uint32_t i = 0; i < order(); ++i) r.map[i] = next.map[map[i]];
    return r;
}

std::uint32_t bit_reverse(std::uint32_t i, unsigned k) {
    std::uint32_t r = 0;
    for (unsigned b = 0; b < k; ++b) {
        r = (r << 1) | (i & 1);
        i >>= 1;
    }
    return r;
}

Permutation bitrev_perm(unsigned k) {
    Permutation p(std::uint32_t{1} << k);
    for (std::uint32_t i = 0; i < p.order(); ++i) p.map[i] = bit_reverse(i, k);
    return p;
}

OpSequence bitrev_sequence(std::uint64_t n, unsigned delta, std::uint64_t seed) {
    if (!is_power_of_two(n)) throw std::invalid_argument("n must be a power of two");
    check_delta_bits(delta);
    const unsigned k = ceil_log2(n);

    OpSequence seq;
    seq.family = "bitrev";
    seq.n = n;
    seq.delta = delta;
    seq.seed = seed;
    seq.ops.reserve(2 * n);

    FenwickRef oracle(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        const std::uint64_t idx = bit_reverse(static_cast<std::uint32_t>(i), k);
        SplitMix64 rng = substream(seed, 2 * i);
        const std::int64_t d = signed_delta(rng, delta);
        oracle.update(idx, d);
        seq.ops.push_back({OpKind::update, idx, d, 0, 0, 0, 0, false});
        seq.ops.push_back({OpKind::sum, idx, 0, 0, oracle.sum(idx), 0, 0, false});
    }
    return seq;
}

OpSequence random_alternating(std::uint64_t m, std::uint64_t n, unsigned delta,
                              std::uint64_t seed) {
    if (m % 2 != 0) throw std::invalid_argument("operation count must be even");
    if (n == 0) throw std::invalid_argument("empty array");
    check_delta_bits(delta);

    OpSequence seq;
    seq.family = "random";
    seq.n = n;
    seq.delta = delta;
    seq.seed = seed;
    seq.ops.reserve(m);

    FenwickRef oracle(n);
    for (std::uint64_t t = 0; t < m; ++t) {
        SplitMix64 rng = substream(seed, t);
        const std::uint64_t k = rng.below(n);
        if (t % 2 == 0) {
            const std::int64_t d = signed_delta(rng, delta);
            oracle.update(k, d);
            seq.ops.push_back({OpKind::update, k, d, 0, 0, 0, 0, false});
        } else {
            seq.ops.push_back({OpKind::sum, k, 0, 0, oracle.sum(k), 0, 0, false});
        }
    }
    return seq;
}

OpSequence tradeoff_blocks(std::uint64_t num_blocks, std::uint64_t t_u, std::uint64_t t_q,
                           std::uint64_t n, unsigned delta, std::uint64_t seed) {
    if (t_u < 1 || t_q < 1) throw std::invalid_argument("t_u and t_q must be positive");
    if (n == 0) throw std::invalid_argument("empty array");
    check_delta_bits(delta);

    OpSequence seq;
    seq.family = "blocks";
    seq.n = n;
    seq.delta = delta;
    seq.seed = seed;
    seq.ops.reserve(num_blocks * (t_u + t_q));

    FenwickRef oracle(n);
    std::uint64_t t = 0;
    for (std::uint64_t b = 0; b < num_blocks; ++b) {
        // updates first, then queries; intra-block order is fixed for
        // reproducibility
        for (std::uint64_t i = 0; i < t_q; ++i, ++t) {
            SplitMix64 rng = substream(seed, t);
            const std::uint64_t k = rng.below(n);
            const std::int64_t d = signed_delta(rng, delta);
            oracle.update(k, d);
            seq.ops.push_back({OpKind::update, k, d, 0, 0, 0, 0, false});
        }
        for (std::uint64_t i = 0; i < t_u; ++i, ++t) {
            SplitMix64 rng = substream(seed, t);
            const std::uint64_t k = rng.below(n);
            seq.ops.push_back({OpKind::sum, k, 0, 0, oracle.sum(k), 0, 0, false});
        }
    }
    return seq;
}

PermBoxInstance PermBoxInstance::identity(std::uint32_t side) {
    PermBoxInstance inst;
    inst.side = side;
    inst.boxes.assign(side, Permutation::identity(side));
    return inst;
}

Permutation PermBoxInstance::compose_prefix(std::uint32_t x) const {
    if (x > side) throw std::out_of_range("column out of range");
    Permutation c = Permutation::identity(side);
    for (std::uint32_t b = 0; b < x; ++b) c = c.then(boxes[b]);
    return c;
}

OpSequence permbox_sequence(std::uint32_t side, std::uint64_t blocks,
                            std::uint64_t queries_per_block, PermBoxOrder order,
                            PermBoxQueryMode query_mode, std::uint64_t seed,
                            std::vector<PermBoxInstance>* out_states) {
    if (side < 1) throw std::invalid_argument("side must be positive");
    if (order == PermBoxOrder::bitrev) {
        if (!is_power_of_two(side))
            throw std::invalid_argument("bit-reversal box order needs a power-of-two side");
        if (blocks > side)
            throw std::invalid_argument("bit-reversal box order touches each box once");
    }
    if (query_mode == PermBoxQueryMode::random_pairs && queries_per_block < 1)
        throw std::invalid_argument("need at least one query per block");

    OpSequence seq;
    seq.family = query_mode == PermBoxQueryMode::macro_verify ? "permbox-verify" : "permbox-paths";
    seq.n = (static_cast<std::uint64_t>(side) + 1) * side;
    seq.seed = seed;
    seq.side = side;

    PermBoxInstance inst = PermBoxInstance::identity(side);
    const auto vid = [&](std::uint32_t col, std::uint32_t wire) {
        return inst.vertex_id(col, wire);
    };

    // prologue: materialize the identity boxes
    for (std::uint32_t x = 0; x < side; ++x)
        for (std::uint32_t y = 0; y < side; ++y)
            seq.ops.push_back({OpKind::insert, 0, 0, 0, 0, vid(x, y), vid(x + 1, y), false});
    if (out_states) {
        out_states->clear();
        out_states->push_back(inst);
    }

    const unsigned kbits = ceil_log2(side);
    for (std::uint64_t b = 0; b < blocks; ++b) {
        SplitMix64 rng = substream(seed, b);
        const std::uint32_t box =
            order == PermBoxOrder::bitrev
                ? bit_reverse(static_cast<std::uint32_t>(b), kbits)
                : static_cast<std::uint32_t>(rng.below(side));

        // macro-update: clear the box, rebuild it with a fresh permutation
        for (std::uint32_t y = 0; y < side; ++y)
            seq.ops.push_back({OpKind::erase, 0, 0, 0, 0, vid(box, y),
                               vid(box + 1, inst.boxes[box](y)), false});
        inst.boxes[box] = Permutation::random(side, rng);
        for (std::uint32_t y = 0; y < side; ++y)
            seq.ops.push_back({OpKind::insert, 0, 0, 0, 0, vid(box, y),
                               vid(box + 1, inst.boxes[box](y)), false});
        if (out_states) out_states->push_back(inst);

        if (query_mode == PermBoxQueryMode::macro_verify) {
            const auto col = static_cast<std::uint32_t>(rng.range(1, side));
            const Permutation comp = inst.compose_prefix(col);
            for (std::uint32_t y = 0; y < side; ++y)
                seq.ops.push_back({OpKind::connected, 0, 0, 0, 0, vid(0, y),
                                   vid(col, comp(y)), true});
        } else {
            for (std::uint64_t q = 0; q < queries_per_block; ++q) {
                const auto y0 = static_cast<std::uint32_t>(rng.below(side));
                const auto col = static_cast<std::uint32_t>(rng.range(1, side));
                const Permutation comp = inst.compose_prefix(col);
                seq.ops.push_back({OpKind::connected, 0, 0, 0, 0, vid(0, y0),
                                   vid(col, comp(y0)), true});
            }
        }
    }
    return seq;
}

namespace {

const char* kind_name(OpKind k) {
    switch (k) {
        case OpKind::update: return "update";
        case OpKind::sum: return "sum";
        case OpKind::select: return "select";
        case OpKind::insert: return "insert";
        case OpKind::erase: return "delete";
        case OpKind::connected: return "conn";
    }
    return "?";
}

} // namespace

void write_sequence_jsonl(std::ostream& os, const OpSequence& seq) {
    os << "{\"family\":\"" << seq.family << "\",\"n\":" << seq.n << ",\"delta\":" << seq.delta
       << ",\"seed\":" << seq.seed << ",\"side\":" << seq.side << "}\n";
    for (const Op& op : seq.ops) {
        switch (op.kind) {
            case OpKind::update:
                os << "{\"op\":\"update\",\"k\":" << op.index << ",\"d\":" << op.delta << "}\n";
                break;
            case OpKind::sum:
                os << "{\"op\":\"sum\",\"k\":" << op.index << ",\"expect\":" << op.expected
                   << "}\n";
                break;
            case OpKind::select:
                os << "{\"op\":\"select\",\"sigma\":" << op.sigma << ",\"expect\":" << op.expected
                   << "}\n";
                break;
            case OpKind::insert:
            case OpKind::erase:
                os << "{\"op\":\"" << kind_name(op.kind) << "\",\"u\":" << op.u
                   << ",\"v\":" << op.v << "}\n";
                break;
            case OpKind::connected:
                os << "{\"op\":\"conn\",\"u\":" << op.u << ",\"v\":" << op.v << ",\"expect\":"
                   << (op.expected_flag ? "true" : "false") << "}\n";
                break;
        }
    }
}

OpSequence read_sequence_jsonl(std::istream& is) {
    OpSequence seq;
    std::string line;
    bool have_header = false;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        auto j = nlohmann::json::parse(line);
        if (!have_header) {
            seq.family = j.at("family").get<std::string>();
            seq.n = j.at("n").get<std::uint64_t>();
            seq.delta = j.at("delta").get<unsigned>();
            seq.seed = j.at("seed").get<std::uint64_t>();
            seq.side = j.value("side", std::uint64_t{0});
            have_header = true;
            continue;
        }
        Op op;
        const std::string kind = j.at("op").get<std::string>();
        if (kind == "update") {
            op.kind = OpKind::update;
            op.index = j.at("k").get<std::uint64_t>();
            op.delta = j.at("d").get<std::int64_t>();
        } else if (kind == "sum") {
            op.kind = OpKind::sum;
            op.index = j.at("k").get<std::uint64_t>();
            op.expected = j.at("expect").get<std::int64_t>();
        } else if (kind == "select") {
            op.kind = OpKind::select;
            op.sigma = j.at("sigma").get<std::int64_t>();
            op.expected = j.at("expect").get<std::int64_t>();
        } else if (kind == "insert" || kind == "delete") {
            op.kind = kind == "insert" ? OpKind::insert : OpKind::erase;
            op.u = j.at("u").get<std::uint32_t>();
            op.v = j.at("v").get<std::uint32_t>();
        } else if (kind == "conn") {
            op.kind = OpKind::connected;
            op.u = j.at("u").get<std::uint32_t>();
            op.v = j.at("v").get<std::uint32_t>();
            op.expected_flag = j.at("expect").get<bool>();
        } else {
            throw std::runtime_error("unknown operation kind: " + kind);
        }
        seq.ops.push_back(op);
    }
    if (!have_header) throw std::runtime_error("sequence file is missing its header line");
    return seq;
}

} // namespace probelab
