#pragma once

#include <string>

#include "fgdist/dist.hpp"
#include "fgdist/series.hpp"

namespace fgdist {

// Sums of operands with integer coefficients, e.g. "2*d[x^2 y] - m[x:1,1] + 1".
//   d[x^a y^b]            additive basis element (d[] is the unit)
//   m[x:d0,d1,... ; y:...] ordered product of generators with digits d_t < p
//   1                     the unit
// Throws ParseError on bad syntax and DomainError on out-of-level operands.
Distribution parse_distribution(const DistLevel& dist, const std::string& text);

// "x x^2 y": generator tokens, each exponent a power p^t with t <= R. The
// word keeps the written order.
Word parse_word(const LevelShape& shape, const std::string& text);

// "x' + x'' + x'*x''", "2*x'^2*y''", "-x'": variables are coordinate names
// with one prime per tensor copy (none for rank 1).
TruncatedSeries parse_series(const VariableSet& vars, unsigned cap, Prime p, const std::string& text);

}  // namespace fgdist
