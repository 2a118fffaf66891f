#include <doctest.h>

#include <random>

#include "generators.hpp"
#include "states.hpp"
#include "ssrent/classify.hpp"

using namespace ssrent;

namespace {
const ChargeRule kNumber = ChargeRule::total_number();
}

TEST_CASE("worked-example classification table") {
    SUBCASE("shared single photon: bound until two copies") {
        const auto report = classify(states::veper(), kNumber);
        CHECK(report.state_class == StateClass::BoundOneD);
        CHECK(report.distillation_number == 2);
        CHECK_FALSE(report.locally_invariant);
        CHECK(report.witness_sector == SectorKey{1, 1});
        CHECK(report.witness_copies == 2);
    }
    SUBCASE("dual-rail singlet: immediately distillable") {
        const auto report = classify(states::eeper(), kNumber);
        CHECK(report.state_class == StateClass::OneDistillable);
        CHECK(report.distillation_number == 1);
        CHECK(report.locally_invariant);
        CHECK(report.witness_sector == SectorKey{1, 1});
    }
    SUBCASE("refbits are products no local machine can make") {
        CHECK(classify(states::refbit(), kNumber).state_class == StateClass::BLP);
        CHECK(classify(states::refbit(-1.0), kNumber).state_class ==
              StateClass::BLP);
    }
    SUBCASE("a single Fock ket is locally preparable") {
        const auto report = classify(
            make_ket(ModeLayout{1, 1}, {{1.0, {{0}, {1}}}}), kNumber);
        CHECK(report.state_class == StateClass::LP);
        CHECK(report.locally_invariant);
        CHECK_FALSE(report.distillation_number.has_value());
    }
    SUBCASE("two-copy family") {
        for (const PureState& psi :
             {states::psi_prime(), states::psi_dprime(), states::veper()}) {
            const auto report = classify(psi, kNumber);
            CHECK(report.distillation_number == 2);
            CHECK_FALSE(report.locally_invariant);
        }
    }
    SUBCASE("three-copy example") {
        const auto report = classify(states::psi_3d(), kNumber);
        CHECK(report.distillation_number == 3);
        CHECK_FALSE(is_n_distillable(states::psi_3d(), 2, kNumber).distillable);
    }
}

TEST_CASE("one-copy scan details") {
    CHECK_FALSE(is_one_distillable(states::veper(), kNumber).distillable);
    const auto hit = is_one_distillable(states::eeper(), kNumber);
    CHECK(hit.distillable);
    CHECK(hit.witness == SectorKey{1, 1});
    CHECK_THROWS_AS(
        is_one_distillable(
            project(states::veper(), [](const BasisLabel&) { return false; })
                .first,
            kNumber),
        EmptyStateError);
}

TEST_CASE("copy-count guards") {
    CHECK_THROWS_AS(is_n_distillable(states::veper(), 5, kNumber),
                    ResourceLimitError);
    CHECK_THROWS_AS(is_n_distillable(states::veper(), 0, kNumber), DomainError);
    CHECK_THROWS_AS(distillation_number(states::refbit(), kNumber), DomainError);
    CHECK_THROWS_AS(distillation_number(states::psi_3d(), kNumber, 2),
                    ResourceLimitError);
}

TEST_CASE("cyclic rules can only help") {
    // under mod:2 the two wings of the shared photon still occupy distinct
    // local parities, so nothing changes
    CHECK(classify(states::veper(), ChargeRule::total_number_mod(2))
              .state_class == StateClass::BoundOneD);
    // a state straddling charges 0 and 2 becomes invariant and 1-distillable
    const PureState psi = make_ket(
        ModeLayout{1, 1},
        {{states::kInvSqrt2, {{0}, {0}}}, {states::kInvSqrt2, {{2}, {2}}}});
    CHECK(classify(psi, kNumber).state_class == StateClass::BoundOneD);
    CHECK(classify(psi, ChargeRule::total_number_mod(2)).state_class ==
          StateClass::OneDistillable);
}

TEST_CASE("random non-product states always land on 1, 2 or 3 copies") {
    std::mt19937 rng(52818);
    for (int trial = 0; trial < 200; ++trial) {
        const PureState psi = gen::random_nonproduct_state(rng);
        const int n = distillation_number(psi, kNumber);
        CHECK(n >= 1);
        CHECK(n <= 3);
        // cross-check against the sufficient-condition scan at one copy
        if (has_invariant_nonproduct_projection(psi, kNumber)) {
            CHECK(n == 1);
        }
    }
}
