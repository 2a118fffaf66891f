#pragma once

#include "ssrent/ssr.hpp"

namespace ssrent {

/// Transpose of the chosen party's indices.  An involution; trace preserving;
/// the result can fail to be positive, which is the whole point.
DensityOperator partial_transpose(const DensityOperator& rho, Party party);

double min_partial_transpose_eigenvalue(const DensityOperator& rho,
                                        Party party = Party::A);

/// Positive partial transpose test: min eigenvalue of the partial transpose
/// >= -tol.  Decides separability exactly on 2x2 support blocks.
bool is_ppt(const DensityOperator& rho, double tol = kNormTol);

/// Distillability verdict for a sector-block-diagonal operator, as produced
/// by twirl_pure: true iff some block is entangled.  Decided by scanning 2x2
/// compressions of each block for a partial-transpose violation, a route
/// deliberately different from the pure-state sector Schmidt test it
/// cross-checks; a per-block purity + Schmidt computation runs alongside and
/// a disagreement raises ConsistencyError.  Throws DomainError if the input
/// is not block diagonal across sector keys.
bool twirled_one_distillable(const DensityOperator& rho, const ChargeRule& rule);

} // namespace ssrent
