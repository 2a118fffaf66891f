#pragma once

#include <optional>
#include <string>

#include "ssrent/ssr.hpp"

namespace ssrent {

enum class StateClass {
    LP,             // product and locally invariant: locally preparable
    BLP,            // product, not locally invariant
    OneDistillable, // non-product with a non-product sector block
    BoundOneD,      // non-product, distillation number >= 2
};

std::string to_string(StateClass c);

struct ClassificationReport {
    bool product = false;
    bool locally_invariant = false;
    StateClass state_class = StateClass::LP;
    // Present iff non-product; 1, 2 or 3.
    std::optional<int> distillation_number;
    // Witnessing sector of the n-copy state, with the copy count n.
    std::optional<SectorKey> witness_sector;
    std::optional<int> witness_copies;
};

struct DistillCheck {
    bool distillable = false;
    std::optional<SectorKey> witness;
};

inline constexpr int kDefaultMaxCopies = 4;

/// True iff some sector's normalized projection is a non-product state; the
/// witness is the lexicographically first such sector.  For an Abelian rule
/// every locally invariant 2x2 subspace sits inside a single sector pair, and
/// a non-product sector block always admits a non-product 2x2 projection, so
/// this block scan decides 1-distillability exactly.  Product states return
/// false trivially.  Throws EmptyStateError on the zero state.
DistillCheck is_one_distillable(const PureState& psi, const ChargeRule& rule);

/// is_one_distillable on the n-fold party-wise tensor power.
/// Throws ResourceLimitError when n exceeds max_copies.
DistillCheck is_n_distillable(const PureState& psi, int n, const ChargeRule& rule,
                              int max_copies = kDefaultMaxCopies);

/// Smallest n with is_n_distillable true; guaranteed <= 3 for any non-product
/// state.  A scan reaching 4 raises ConsistencyError (that would falsify the
/// implementation, not the theorem).  Throws DomainError on product input.
int distillation_number(const PureState& psi, const ChargeRule& rule,
                        int max_copies = kDefaultMaxCopies);

ClassificationReport classify(const PureState& psi, const ChargeRule& rule,
                              int max_copies = kDefaultMaxCopies);

/// Sufficient-condition cross-check used by tests: scans pairs of
/// equal-charge support labels on each side for a non-product 2x2 projection.
bool has_invariant_nonproduct_projection(const PureState& psi,
                                         const ChargeRule& rule);

} // namespace ssrent
