#include "ssrent/ssr.hpp"

#include <numeric>

namespace ssrent {

ChargeRule ChargeRule::total_number_mod(int d) {
    if (d < 2) throw DomainError("cyclic charge rule needs modulus >= 2");
    return ChargeRule(Kind::TotalNumberMod, d);
}

int ChargeRule::charge_of(const Occ& occ) const {
    const int total = std::accumulate(occ.begin(), occ.end(), 0);
    return kind_ == Kind::TotalNumberMod ? total % modulus_ : total;
}

int local_charge(const BasisLabel& label, Party party, const ChargeRule& rule) {
    return rule.charge_of(party == Party::A ? label.alice : label.bob);
}

SectorKey sector_of(const BasisLabel& label, const ChargeRule& rule) {
    return {rule.charge_of(label.alice), rule.charge_of(label.bob)};
}

std::pair<PureState, double> sector_project(const PureState& psi,
                                            const SectorKey& key,
                                            const ChargeRule& rule) {
    return project(psi, [&](const BasisLabel& label) {
        return sector_of(label, rule) == key;
    });
}

std::map<SectorKey, double> sector_support(const PureState& psi,
                                           const ChargeRule& rule) {
    std::map<SectorKey, double> weights;
    for (const auto& [label, amp] : psi.amps()) {
        weights[sector_of(label, rule)] += std::norm(amp);
    }
    return weights;
}

bool is_locally_invariant(const PureState& psi, const ChargeRule& rule) {
    return sector_support(psi, rule).size() == 1;
}

DensityOperator twirl_pure(const PureState& psi, const ChargeRule& rule) {
    DensityOperator::EntryMap entries;
    for (const auto& [x, ax] : psi.amps()) {
        const SectorKey sx = sector_of(x, rule);
        for (const auto& [y, ay] : psi.amps()) {
            if (sector_of(y, rule) == sx) {
                entries.emplace(std::make_pair(x, y), ax * std::conj(ay));
            }
        }
    }
    return DensityOperator(psi.layout(), std::move(entries));
}

std::string to_string(const SectorKey& key) {
    return "(" + std::to_string(key.alice_charge) + "," +
           std::to_string(key.bob_charge) + ")";
}

std::string to_string(const ChargeRule& rule) {
    return rule.kind() == ChargeRule::Kind::TotalNumber
               ? "number"
               : "mod:" + std::to_string(rule.modulus());
}

} // namespace ssrent
