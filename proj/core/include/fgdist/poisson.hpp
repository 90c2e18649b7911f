#pragma once

#include "fgdist/report.hpp"
#include "fgdist/rewrite.hpp"

namespace fgdist {

// pi~ on words by the bi-derivation law
//   pi~(u x, v) = u pi~(x, v) + pi~(u, v) x
//   pi~(x, v y) = pi~(x, v) y + v pi~(x, y)
// down to generator brackets, with every product normalized in U.
Combination extend_biderivation(const RewriteSystem& sys, const Word& u, const Word& v);
// Bilinear extension to combinations of normal monomials.
Combination extend_biderivation(const RewriteSystem& sys, const Combination& a, const Combination& b);

CheckReport check_skew_and_constants(const PoissonTable& table);
// Generator triples k >> j >> i.
CheckReport check_jacobi(const PoissonTable& table);
CheckReport check_strongly_filtered(const PoissonTable& table);
// Delta pi = (. (x) pi + pi (x) . + pi (x) pi)(1 (x) tau (x) 1)(Delta (x) Delta)
// on every cross-block generator pair.
CheckReport check_strongly_multiplicative(const PoissonTable& table);
// The four checks above, in that order.
CheckReport check_poisson_axioms(const PoissonTable& table);

}  // namespace fgdist
