#include "nlcg/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>

#include "nlcg/errors.hpp"

namespace nlcg {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_field_binary(const std::string& path, const Field& f, double time) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open " + path + " for writing");
    const std::int64_t n = f.grid().n_points;
    const double length = f.grid().length;
    os.write(reinterpret_cast<const char*>(&n), sizeof n);
    os.write(reinterpret_cast<const char*>(&length), sizeof length);
    os.write(reinterpret_cast<const char*>(&time), sizeof time);
    os.write(reinterpret_cast<const char*>(f.values().data()),
             static_cast<std::streamsize>(f.values().size() * sizeof(double)));
    if (!os) throw IoError("short write to " + path);
}

FieldSnapshot read_field_binary(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open " + path);
    std::int64_t n = 0;
    double length = 0.0, time = 0.0;
    is.read(reinterpret_cast<char*>(&n), sizeof n);
    is.read(reinterpret_cast<char*>(&length), sizeof length);
    is.read(reinterpret_cast<char*>(&time), sizeof time);
    if (!is || n < 16 || n > 4096) throw IoError("corrupt field header in " + path);
    FieldSnapshot snap{Field(make_grid(static_cast<int>(n), length)), time};
    is.read(reinterpret_cast<char*>(snap.field.values().data()),
            static_cast<std::streamsize>(snap.field.values().size() * sizeof(double)));
    if (!is) throw IoError("truncated field payload in " + path);
    return snap;
}

void write_field_csv(const std::string& path, const Field& f) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open " + path + " for writing");
    os << "x,y,z,u\n";
    const Grid& g = f.grid();
    for (int i = 0; i < g.n_points; ++i)
        for (int j = 0; j < g.n_points; ++j)
            for (int k = 0; k < g.n_points; ++k)
                os << format_double(g.coord(i)) << ',' << format_double(g.coord(j)) << ','
                   << format_double(g.coord(k)) << ',' << format_double(f(i, j, k)) << '\n';
    if (!os) throw IoError("short write to " + path);
}

void write_trace_csv(std::ostream& os, const RunResult& result,
                     const std::string& header_comment) {
    if (!header_comment.empty()) os << header_comment;
    os << "t,dt,l1,lbeta,lbam1,linf,nonlocal_mass,scheme\n";
    const std::string scheme = to_string(result.scheme);
    for (const auto& row : result.trace) {
        os << format_double(row.t) << ',' << format_double(row.dt) << ','
           << format_double(row.l1) << ',' << format_double(row.lbeta) << ','
           << format_double(row.lbam1) << ',' << format_double(row.linf) << ','
           << format_double(row.nonlocal_mass) << ',' << scheme << '\n';
    }
}

}  // namespace nlcg
