#pragma once

#include <map>
#include <string>

#include "gerbelab/gerbe.hpp"
#include "gerbelab/intmat.hpp"

namespace gerbelab::io {

/// Nerve schema: {"vertices": N, "simplices": {"1": [[i,j],...], ...},
/// "cochains": {"name": {"degree": p, "ring": "Z"|"R"|"R/Z", "values": [..]}}}.
/// Simplices are listed in the deterministic lexicographic order.
std::string nerve_to_json(const Nerve& nerve,
                          const std::map<std::string, Cochain>& cochains = {});

Nerve nerve_from_json(const std::string& text);
std::map<std::string, Cochain> cochains_from_json(const std::string& text,
                                                  const Nerve& nerve);

/// Gerbe file = nerve schema with cochains "g" (circle, degree 2) and
/// "winding" (integral, degree 3).
std::string gerbe_to_json(const CechGerbe& gerbe);
CechGerbe gerbe_from_json(const std::string& text);

/// {"matrix": {"rows": r, "cols": c, "entries": [...]}} row major.
std::string matrix_to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace gerbelab::io
