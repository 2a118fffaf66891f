#pragma once

#include <map>

#include "ssrent/density.hpp"
#include "ssrent/fock.hpp"

namespace ssrent {

enum class Party { A, B };

/// Abelian superselection rule: how a local occupation list maps to a
/// conserved charge.  TotalNumber is the U(1) particle/photon-number rule;
/// TotalNumberMod(d) is the finite cyclic Z_d rule.  Only Abelian rules are
/// representable; there is nothing to twirl over beyond charge sectors.
class ChargeRule {
public:
    enum class Kind { TotalNumber, TotalNumberMod };

    static ChargeRule total_number() { return ChargeRule(Kind::TotalNumber, 0); }

    /// Throws DomainError unless d >= 2.
    static ChargeRule total_number_mod(int d);

    Kind kind() const { return kind_; }
    int modulus() const { return modulus_; }

    /// Sum of occupations, reduced mod d when applicable.
    int charge_of(const Occ& occ) const;

    bool operator==(const ChargeRule&) const = default;

private:
    ChargeRule(Kind kind, int modulus) : kind_(kind), modulus_(modulus) {}

    Kind kind_;
    int modulus_;
};

/// Charge-sector index pair (n, m): Alice's and Bob's local charges.
struct SectorKey {
    int alice_charge = 0;
    int bob_charge = 0;

    auto operator<=>(const SectorKey&) const = default;
};

int local_charge(const BasisLabel& label, Party party, const ChargeRule& rule);

SectorKey sector_of(const BasisLabel& label, const ChargeRule& rule);

/// Component of psi with the given local charges on both sides, plus its
/// squared norm.
std::pair<PureState, double> sector_project(const PureState& psi,
                                            const SectorKey& key,
                                            const ChargeRule& rule);

/// All sectors with nonzero weight; weights sum to 1 for a normalized state.
std::map<SectorKey, double> sector_support(const PureState& psi,
                                           const ChargeRule& rule);

/// A pure state is invariant under the local twirl iff it is a simultaneous
/// eigenstate of both local charges, i.e. its support lives in one sector.
bool is_locally_invariant(const PureState& psi, const ChargeRule& rule);

/// Applies both parties' twirls to |psi><psi|: the continuous phase average
/// is taken in its exact projector form, summing Pi_key |psi><psi| Pi_key
/// over sector keys.  All inter-sector coherence is removed; each surviving
/// block equals the corresponding sector projection.
DensityOperator twirl_pure(const PureState& psi, const ChargeRule& rule);

std::string to_string(const SectorKey& key);
std::string to_string(const ChargeRule& rule);

} // namespace ssrent
