#include "probelab/trace_io.hpp"

#include <stdexcept>

#include <json.hpp>

namespace probelab {

ProbeTrace read_trace_jsonl(std::istream& is) {
    ProbeTrace trace;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        auto j = nlohmann::json::parse(line);
        ProbeEvent e;
        e.op_index = j.at("op").get<std::int64_t>();
        const std::string kind = j.at("kind").get<std::string>();
        if (kind != "r" && kind != "w")
            throw std::runtime_error("trace event kind must be \"r\" or \"w\"");
        e.is_write = (kind == "w");
        e.address = j.at("addr").get<std::uint64_t>();
        e.last_write_op = j.at("lw").get<std::int64_t>();
        trace.push_back(e);
    }
    return trace;
}

} // namespace probelab
