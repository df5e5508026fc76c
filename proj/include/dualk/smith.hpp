#pragma once

#include <cstddef>
#include <vector>

#include "dualk/int_matrix.hpp"

namespace dualk {

/// Smith normal form U * A * V = D.
///
/// U and V are unimodular; D is diagonal with nonnegative entries and
/// d_0 | d_1 | ... | d_{rank-1}, all later diagonal entries zero. The inverses
/// of U and V are tracked alongside so callers can move between the
/// original and the diagonal bases without a separate inversion.
struct SmithForm {
    IntMatrix U;
    IntMatrix D;
    IntMatrix V;
    IntMatrix U_inverse;
    IntMatrix V_inverse;
    std::size_t rank = 0;

    /// The nonzero diagonal entries d_0 .. d_{rank-1}.
    std::vector<Integer> invariant_factors() const;
};

/// Pivot rule: smallest nonzero absolute value in the active submatrix,
/// ties broken by lowest row then lowest column. Deterministic for a fixed
/// input.
SmithForm smith_normal_form(const IntMatrix& a);

/// Z-basis of {x : A x = 0}, as columns.
IntMatrix integer_kernel(const IntMatrix& a);

} // namespace dualk
