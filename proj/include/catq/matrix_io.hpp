#pragma once

#include <iosfwd>
#include <string>

#include "catq/types.hpp"

namespace catq {

// Text format: first line "n", then n lines of n whitespace-separated
// "re,im" entries. Numbers are written in shortest round-trip form.

CMatrix read_matrix(std::istream& in);
void write_matrix(std::ostream& out, const CMatrix& m);

/// Throws ParseError naming line and column on malformed input.
CMatrix load_hamiltonian(const std::string& path);

/// Writes through a temporary file and renames it into place.
void save_hamiltonian(const std::string& path, const CMatrix& m);

/// Shortest decimal string that parses back to exactly `x`.
std::string format_double(double x);

/// Write `contents` to `path` via temp file + rename.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace catq
