#pragma once

#include <vector>

#include "sailkit/numeric.hpp"

namespace sailkit {

// Dense integer matrices, stored row-major. Sizes here are tiny (degree of
// the field, or a handful of polytope vertices), so the algorithms favour
// clarity over asymptotics; entries use exact bignums throughout.
using IMat = std::vector<std::vector<Int>>;

IMat imat_transpose(const IMat& m);
Int imat_det(IMat m);  // square matrices, fraction-free elimination
unsigned imat_rank(IMat m);

// Basis of the integer kernel {x : m x = 0}, returned as rows. Kernels of
// integer matrices are saturated lattices.
IMat integer_kernel(const IMat& m);

// Saturation of the lattice spanned by the rows: (row space over Q) cap Z^n.
IMat saturate_rows(const IMat& rows);

// Expresses each row of `rows` in terms of the basis `basis` (rows), which
// must span a lattice containing them; exact rational solve, results integral.
IMat express_in_basis(const IMat& rows, const IMat& basis);

// Index of the lattice spanned by `rows` inside its saturation (0 if the
// rank of rows is below the saturation rank cannot happen; rows full rank in
// their span). Equals the product of the elementary divisors.
Int lattice_index_in_saturation(const IMat& rows);

// Row Hermite normal form (pivots left to right); returns the nonzero rows.
IMat hnf_rows(const IMat& rows);

}  // namespace sailkit
