#pragma once

#include <compare>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "ssrent/common.hpp"

namespace ssrent {

/// Bipartite mode split: how many Fock modes Alice and Bob each hold.
struct ModeLayout {
    int alice_modes = 1;
    int bob_modes = 1;

    bool operator==(const ModeLayout&) const = default;
};

/// Occupation-number list for one party.
using Occ = std::vector<int>;

/// Computational Fock basis index |alice_occ ; bob_occ>.
struct BasisLabel {
    Occ alice;
    Occ bob;

    auto operator<=>(const BasisLabel&) const = default;
};

/// Sparse bipartite pure state: a finite complex amplitude map over basis
/// labels, all sharing one mode layout.  Fock space is infinite-dimensional
/// but every state handled here has finite support, so no global cutoff is
/// needed.  Values are immutable; all operations return new states.
class PureState {
public:
    using AmpMap = std::map<BasisLabel, cplx>;

    /// Amplitudes at or below kDropTol in magnitude are dropped.  An empty
    /// map yields the zero state (valid only as a projection result).
    PureState(ModeLayout layout, AmpMap amps, bool normalized = false);

    const ModeLayout& layout() const { return layout_; }
    const AmpMap& amps() const { return amps_; }
    bool normalized() const { return normalized_; }
    bool is_zero() const { return amps_.empty(); }
    std::size_t support_size() const { return amps_.size(); }

    cplx amplitude(const BasisLabel& label) const;
    double norm_squared() const;
    double norm() const;

    /// Returns the unit-norm version of this state.
    /// Throws EmptyStateError on the zero state.
    PureState normalize() const;

    PureState scaled(cplx factor) const;

private:
    ModeLayout layout_;
    AmpMap amps_;
    bool normalized_;
};

/// Builds the (unnormalized) superposition of the given terms.  Duplicate
/// labels are summed; near-zero amplitudes dropped.  Throws LayoutError on a
/// label length mismatch and EmptyStateError if nothing survives.
PureState make_ket(const ModeLayout& layout,
                   const std::vector<std::pair<cplx, BasisLabel>>& terms);

/// Party-wise tensor product: Alice modes of psi concatenate with Alice modes
/// of phi, likewise for Bob, so the A:B bipartition is preserved.  This is
/// the canonical copy layout for n-copy states.
PureState tensor(const PureState& psi, const PureState& phi);

PureState tensor_power(const PureState& psi, int n);

/// Singular values of the A:B coefficient matrix of psi, descending.  The
/// matrix is materialized only over the support's distinct sub-labels, never
/// over the full Fock space.  Throws EmptyStateError on the zero state.
std::vector<double> schmidt_coefficients(const PureState& psi);

/// True iff exactly one Schmidt coefficient exceeds tol times the largest.
bool is_product(const PureState& psi, double tol = kRankTol);

/// Component of psi on labels satisfying the predicate, plus its squared
/// norm (the post-selection probability when psi is normalized).  An empty
/// projection returns the zero state with probability 0.
std::pair<PureState, double> project(const PureState& psi,
                                     const std::function<bool(const BasisLabel&)>& keep);

/// <a|b>.  Throws LayoutError on mismatched layouts.
cplx inner(const PureState& a, const PureState& b);

/// |<a|b>|^2 / (|a|^2 |b|^2) -- insensitive to norm and global phase.
double fidelity(const PureState& a, const PureState& b);

/// Sum of amplitude maps.  Throws LayoutError on mismatched layouts.
PureState add(const PureState& a, const PureState& b);

/// Distinct per-party sub-labels occurring in the support, sorted.
std::vector<Occ> alice_sublabels(const PureState& psi);
std::vector<Occ> bob_sublabels(const PureState& psi);

} // namespace ssrent
