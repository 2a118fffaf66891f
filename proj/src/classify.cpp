#include "ssrent/classify.hpp"

#include <cmath>

namespace ssrent {

std::string to_string(StateClass c) {
    switch (c) {
        case StateClass::LP: return "LP";
        case StateClass::BLP: return "BLP";
        case StateClass::OneDistillable: return "1-D";
        case StateClass::BoundOneD: return "B1-D";
    }
    return "?";
}

DistillCheck is_one_distillable(const PureState& psi, const ChargeRule& rule) {
    if (psi.is_zero()) throw EmptyStateError("zero state");
    // lexicographic key order gives a deterministic witness
    for (const auto& [key, weight] : sector_support(psi, rule)) {
        if (weight <= kDropTol) continue;
        const auto [block, w] = sector_project(psi, key, rule);
        if (!is_product(block)) {
            return {true, key};
        }
    }
    return {false, std::nullopt};
}

DistillCheck is_n_distillable(const PureState& psi, int n, const ChargeRule& rule,
                              int max_copies) {
    if (n < 1) throw DomainError("copy count must be >= 1");
    if (n > max_copies) {
        throw ResourceLimitError("copy count " + std::to_string(n) +
                                 " exceeds the configured bound of " +
                                 std::to_string(max_copies));
    }
    return is_one_distillable(tensor_power(psi, n), rule);
}

int distillation_number(const PureState& psi, const ChargeRule& rule,
                        int max_copies) {
    if (is_product(psi)) {
        throw DomainError("product states have no distillation number");
    }
    for (int n = 1; n <= 3; ++n) {
        if (n > max_copies) {
            throw ResourceLimitError(
                "copy bound " + std::to_string(max_copies) +
                " reached before the guaranteed distillable copy count");
        }
        if (is_n_distillable(psi, n, rule, max_copies).distillable) return n;
    }
    throw ConsistencyError(
        "non-product state not distillable within 3 copies; the sector scan "
        "contradicts the distillation theorem");
}

ClassificationReport classify(const PureState& psi, const ChargeRule& rule,
                              int max_copies) {
    ClassificationReport report;
    report.product = is_product(psi);
    report.locally_invariant = is_locally_invariant(psi, rule);
    if (report.product) {
        report.state_class =
            report.locally_invariant ? StateClass::LP : StateClass::BLP;
        return report;
    }
    const int n = distillation_number(psi, rule, max_copies);
    report.distillation_number = n;
    report.state_class =
        n == 1 ? StateClass::OneDistillable : StateClass::BoundOneD;
    report.witness_sector = is_n_distillable(psi, n, rule, max_copies).witness;
    report.witness_copies = n;
    return report;
}

bool has_invariant_nonproduct_projection(const PureState& psi,
                                         const ChargeRule& rule) {
    const auto as = alice_sublabels(psi);
    const auto bs = bob_sublabels(psi);
    for (std::size_t i = 0; i < as.size(); ++i) {
        for (std::size_t j = i + 1; j < as.size(); ++j) {
            if (rule.charge_of(as[i]) != rule.charge_of(as[j])) continue;
            for (std::size_t k = 0; k < bs.size(); ++k) {
                for (std::size_t l = k + 1; l < bs.size(); ++l) {
                    if (rule.charge_of(bs[k]) != rule.charge_of(bs[l])) continue;
                    const cplx a = psi.amplitude({as[i], bs[k]});
                    const cplx b = psi.amplitude({as[i], bs[l]});
                    const cplx c = psi.amplitude({as[j], bs[k]});
                    const cplx d = psi.amplitude({as[j], bs[l]});
                    const double scale = std::norm(a) + std::norm(b) +
                                         std::norm(c) + std::norm(d);
                    if (std::abs(a * d - b * c) > kRankTol * scale) {
                        return true;
                    }
                }
            }
        }
    }
    return false;
}

} // namespace ssrent
