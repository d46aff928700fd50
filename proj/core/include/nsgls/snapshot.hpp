#ifndef NSGLS_SNAPSHOT_HPP
#define NSGLS_SNAPSHOT_HPP

#include <string>

#include "nsgls/field.hpp"

// NSGLS1 snapshot files: one ASCII header line
//   NSGLS1 d=<d> n=<n> L=<float> t=<float> comps=<d>\n
// followed by d * n^d little-endian IEEE doubles, component-major, row-major
// within each component.

namespace nsgls {

void write_snapshot(const std::string& path, const VectorField& u);

// Throws std::runtime_error with the byte offset of the first malformed
// element on parse failure.
VectorField read_snapshot(const std::string& path);

} // namespace nsgls

#endif
