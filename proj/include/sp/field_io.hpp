#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "sp/core.hpp"
#include "sp/stepper.hpp"

namespace sp {

/// Node-ordered (lexicographic in grid indices) CSV: index,re,im per line.
inline void save_field_csv(const std::string& path, const Field& u) {
    std::ofstream out(path);
    require(out.good(), "cannot open " + path + " for writing");
    out.precision(17);
    out << "index,re,im\n";
    for (Index i = 0; i < u.size(); ++i)
        out << i << ',' << u[i].real() << ',' << u[i].imag() << '\n';
}

inline Field load_field_csv(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), "cannot open " + path);
    std::string line;
    std::getline(in, line);  // header
    std::vector<cplx> vals;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto c1 = line.find(','), c2 = line.find(',', c1 + 1);
        require(c1 != std::string::npos && c2 != std::string::npos, "malformed field CSV line");
        vals.emplace_back(std::stod(line.substr(c1 + 1, c2 - c1 - 1)),
                          std::stod(line.substr(c2 + 1)));
    }
    Field u(static_cast<Index>(vals.size()));
    for (size_t i = 0; i < vals.size(); ++i) u[static_cast<Index>(i)] = vals[i];
    return u;
}

/// Flat binary: interleaved re/im doubles, node-ordered.
inline void save_field_binary(const std::string& path, const Field& u) {
    std::ofstream out(path, std::ios::binary);
    require(out.good(), "cannot open " + path + " for writing");
    out.write(reinterpret_cast<const char*>(u.data()),
              static_cast<std::streamsize>(sizeof(cplx) * u.size()));
}

inline Field load_field_binary(const std::string& path, Index expected_size) {
    std::ifstream in(path, std::ios::binary | std::ios::ate);
    require(in.good(), "cannot open " + path);
    const auto bytes = in.tellg();
    require(bytes == static_cast<std::streamoff>(sizeof(cplx) * expected_size),
            "binary field size mismatch in " + path);
    in.seekg(0);
    Field u(expected_size);
    in.read(reinterpret_cast<char*>(u.data()), bytes);
    return u;
}

/// Trace CSV: time column plus one column per monitor.
inline void save_trace_csv(const std::string& path, const EvolutionTrace& tr,
                           const std::vector<Monitor>& monitors) {
    std::ofstream out(path);
    require(out.good(), "cannot open " + path + " for writing");
    out.precision(17);
    out << "time";
    for (const auto& m : monitors) {
        out << ",p" << (std::isinf(m.p) ? std::string("inf") : std::to_string(m.p)) << "_w"
            << m.theta;
    }
    out << '\n';
    for (size_t s = 0; s < tr.times.size(); ++s) {
        out << tr.times[s];
        for (const auto& col : tr.norms) out << ',' << col[s];
        out << '\n';
    }
}

}  // namespace sp
