#ifndef COSEC_CODEIO_HPP
#define COSEC_CODEIO_HPP

#include <iosfwd>
#include <string>

#include "cosec/descent.hpp"
#include "cosec/gf2.hpp"

// Serialization: code files are JSON objects
//   {"kappa": k, "n": n, "columns": [ ... ]}
// and descent traces are CSV with one row per recorded step.

namespace cosec {

void write_code(std::ostream& out, const GeneratorMatrix& g);
void write_code_file(const std::string& path, const GeneratorMatrix& g);

GeneratorMatrix read_code(std::istream& in);
GeneratorMatrix read_code_file(const std::string& path);

/// CSV trace: a `# seed=...` comment line, then the column header
/// `step,objective,dist_from_uniform,q_norm_sq,k_g,tau` and the records.
/// When q snapshots are present they follow as a second section of JSON
/// arrays, one per line, prefixed with `# q `.
void write_trace(std::ostream& out, const DescentTrace& trace);
void write_trace_file(const std::string& path, const DescentTrace& trace);

}  // namespace cosec

#endif
