#pragma once

#include <map>
#include <utility>
#include <vector>

#include "ssrent/fock.hpp"

namespace ssrent {

/// Sparse Hermitian operator over Fock basis labels.  Used for twirled
/// (mixed) states and for the partial-transpose oracle; the latter produces
/// operators that are Hermitian but possibly not positive, so positivity is
/// checked by callers, not enforced here.
class DensityOperator {
public:
    using Key = std::pair<BasisLabel, BasisLabel>;
    using EntryMap = std::map<Key, cplx>;

    /// Entries at or below kDropTol in magnitude are dropped.
    DensityOperator(ModeLayout layout, EntryMap entries);

    const ModeLayout& layout() const { return layout_; }
    const EntryMap& entries() const { return entries_; }

    cplx entry(const BasisLabel& row, const BasisLabel& col) const;
    double trace() const;
    bool is_hermitian(double tol = kDropTol) const;

    /// Distinct labels appearing in any entry, sorted.
    std::vector<BasisLabel> support_labels() const;

private:
    ModeLayout layout_;
    EntryMap entries_;
};

/// Eigenvalues of the materialized support block, ascending.
std::vector<double> support_eigenvalues(const DensityOperator& rho);

} // namespace ssrent
