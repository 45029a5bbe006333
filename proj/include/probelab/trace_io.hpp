#pragma once

#include <istream>
#include <ostream>
#include <string>

#include "probelab/memory.hpp"

namespace probelab {

// One event per line: {"op":int,"kind":"r"|"w","addr":uint,"lw":int|-1}
// lw = -1 encodes a cell never written before this probe.
inline void write_trace_jsonl(std::ostream& os, const ProbeTrace& trace) {
    for (const ProbeEvent& e : trace) {
        os << "{\"op\":" << e.op_index
           << ",\"kind\":\"" << (e.is_write ? 'w' : 'r')
           << "\",\"addr\":" << e.address
           << ",\"lw\":" << e.last_write_op << "}\n";
    }
}

ProbeTrace read_trace_jsonl(std::istream& is);

} // namespace probelab
