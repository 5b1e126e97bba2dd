#pragma once
/// @file io.hpp
/// @brief Line-oriented text serialization of cochains, and the module
///        descriptor grammar shared with the command line.
///
/// Format: a header line `q N module levelbound`, then one line per stored
/// canonical tuple:
///
///     J[n,j,k] J[n,j,k] ... : poly ; poly ; ...
///
/// with one polynomial per module component (scalar modules have exactly
/// one). A 0-cochain's single line starts directly with the colon. The
/// level bound is the completeness bound of the cochain (-1 when the listed
/// support is exact). Polynomials use the parse_poly grammar; `#` starts a
/// comment line and blank lines are skipped. Values are symmetrized and
/// normalized on load, so hand-authored files acquire the stabilizer
/// symmetry automatically; duplicate tuple lines accumulate. Tuples must be
/// written in canonical (sorted) order. Writing and re-reading a cochain
/// reproduces it exactly.

#include <iosfwd>
#include <string>

#include "ccoh/cochain.hpp"
#include "ccoh/modules.hpp"

namespace ccoh {

/// Parses `trivial | twisted:<a> | natural:<N>:<alpha>` with exact rational
/// parameters (`p` or `p/q`). `twisted:0` yields the trivial module, which
/// it is. Throws std::invalid_argument on malformed input.
[[nodiscard]] ModuleDescriptor module_from_string(const std::string& text);

/// Serializes a basic cochain over gc_N in the file format above. Throws
/// std::invalid_argument for ordered assignments (they have no canonical
/// text form) and for non-gc_N cochains.
[[nodiscard]] std::string write_cochain(const Cochain& c);

/// Parses the file format. Throws std::runtime_error with a `line <k>:`
/// prefix on malformed input; polynomial errors keep their character
/// position.
[[nodiscard]] Cochain read_cochain(std::istream& in);
[[nodiscard]] Cochain parse_cochain(const std::string& text);

/// read_cochain on the named file; error messages carry the path.
[[nodiscard]] Cochain load_cochain_file(const std::string& path);

}  // namespace ccoh
