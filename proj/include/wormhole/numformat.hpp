#pragma once

#include <charconv>
#include <string>

namespace wormhole {

// Shortest decimal string that round-trips to the same double. Used for CSV
// output so files are byte-reproducible across runs and machines.
inline std::string format_shortest(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

// Fixed 17 significant digits (general format), enough to reconstruct any
// double exactly. Used for OBJ vertex lines.
inline std::string format_sig17(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

} // namespace wormhole
