#pragma once

#include <string>

#include "cmr/matrix.hpp"

namespace cmr {

/// A matrix read back from the JSON schema; exactly one of c, q is filled.
struct LoadedMatrix {
  int n = 0;
  bool exact = false;
  CMatrix c;
  QMatrix q;
};

/// {"n", "rows", "cols", "mode": "c64"|"exact", "entries": [[re, im], …]},
/// entries row-major; exact entries are "p/q" strings.
std::string matrix_to_json(const CMatrix& m, int n);
std::string matrix_to_json(const QMatrix& m, int n);

/// Throws std::invalid_argument on schema violations.
LoadedMatrix matrix_from_json(const std::string& text);

}  // namespace cmr
