#pragma once

#include <ostream>
#include <string>

#include "nlcg/field.hpp"
#include "nlcg/integrate.hpp"

namespace nlcg {

// Prints a double with full round-trip precision (%.17g); all tabular output
// goes through this so repeated runs are byte-identical.
std::string format_double(double v);

// Flat binary snapshot: int64 N, double L, double time, then N^3 row-major
// doubles (z fastest), native little-endian.
void write_field_binary(const std::string& path, const Field& f, double time);
struct FieldSnapshot {
    Field field;
    double time;
};
FieldSnapshot read_field_binary(const std::string& path);

// x,y,z,u rows; intended for small grids.
void write_field_csv(const std::string& path, const Field& f);

// Trace rows: t,dt,l1,lbeta,lbam1,linf,nonlocal_mass,scheme. Lines starting
// with '#' carry run metadata (parameters, seed).
void write_trace_csv(std::ostream& os, const RunResult& result,
                     const std::string& header_comment);

}  // namespace nlcg
