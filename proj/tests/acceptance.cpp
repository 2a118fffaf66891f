// Acceptance gate: one line per criterion, exit code = number of failures.
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <string>

#include "unit/generators.hpp"
#include "unit/states.hpp"
#include "ssrent/classify.hpp"
#include "ssrent/oracle.hpp"
#include "ssrent/parser.hpp"
#include "ssrent/protocols.hpp"
#include "ssrent/report.hpp"

using namespace ssrent;

namespace {

const ChargeRule kNumber = ChargeRule::total_number();
constexpr double kTol = 1e-9;

bool approx(double a, double b, double tol = kTol) {
    return std::abs(a - b) <= tol;
}

DensityOperator projector(const PureState& psi) {
    DensityOperator::EntryMap entries;
    for (const auto& [x, ax] : psi.amps()) {
        for (const auto& [y, ay] : psi.amps()) {
            entries.emplace(std::make_pair(x, y), ax * std::conj(ay));
        }
    }
    return DensityOperator(psi.layout(), std::move(entries));
}

bool criterion_1_example_table() {
    bool ok = true;

    const auto veper = classify(states::veper(), kNumber);
    ok &= veper.state_class == StateClass::BoundOneD;
    ok &= veper.distillation_number == 2;

    ok &= classify(states::eeper(), kNumber).state_class ==
          StateClass::OneDistillable;

    ok &= classify(states::refbit(1.0), kNumber).state_class == StateClass::BLP;
    ok &= classify(states::refbit(-1.0), kNumber).state_class == StateClass::BLP;

    const PureState single = make_ket(ModeLayout{1, 1}, {{1.0, {{0}, {1}}}});
    ok &= classify(single, kNumber).state_class == StateClass::LP;

    for (const PureState& psi :
         {states::psi_prime(), states::psi_dprime(), states::veper()}) {
        ok &= distillation_number(psi, kNumber) == 2;
        ok &= !is_locally_invariant(psi, kNumber);
    }

    ok &= distillation_number(states::psi_3d(), kNumber) == 3;
    ok &= !is_n_distillable(states::psi_3d(), 2, kNumber).distillable;
    return ok;
}

bool criterion_2_activation() {
    const ProtocolOutcome outcome =
        verify_activation(states::veper(), states::refbit(), kNumber);
    if (!outcome.success || !outcome.output) return false;
    return fidelity(*outcome.output, states::eeper()) >= 1.0 - kTol &&
           approx(outcome.probability, 0.25);
}

bool criterion_3_two_copy() {
    const ProtocolOutcome outcome = protocol_B(states::veper(), kNumber);
    if (!outcome.success || !outcome.output || !outcome.lambdas) return false;
    const double r = 1.0 / std::sqrt(2.0);
    return fidelity(*outcome.output, states::eeper()) >= 1.0 - kTol &&
           approx(outcome.probability, 0.5) &&
           approx(std::abs(outcome.lambdas->first), r) &&
           approx(std::abs(outcome.lambdas->second), r);
}

bool criterion_4_distillation_theorem() {
    std::mt19937 rng(181818);
    for (int trial = 0; trial < 200; ++trial) {
        const PureState psi = gen::random_nonproduct_state(rng);
        const int n = distillation_number(psi, kNumber);
        if (n < 1 || n > 3) return false;
        const ProtocolOutcome a = protocol_A(psi, kNumber);
        if (!a.success && !protocol_B(psi, kNumber).success) return false;
    }
    return true;
}

bool criterion_5_activation_theorem() {
    std::mt19937 rng(271828);
    for (int trial = 0; trial < 100; ++trial) {
        const PureState psi = gen::random_bound_state(rng, kNumber);
        auto [chi, choice] = build_activator(psi, kNumber);
        if (classify(chi, kNumber).state_class != StateClass::BLP) return false;
        if (!verify_activation(psi, chi, kNumber, choice).success) return false;
        const ProtocolOutcome b = protocol_B(psi, kNumber);
        if (!b.lambdas || std::abs(b.lambdas->second) <= 1e-9) return false;
    }
    return true;
}

bool criterion_6_oracle_equivalence() {
    std::mt19937 rng(314159);
    std::vector<PureState> suite = {states::veper(),     states::eeper(),
                                    states::refbit(1.0), states::refbit(-1.0),
                                    states::psi_prime(), states::psi_dprime(),
                                    states::psi_3d()};
    for (int trial = 0; trial < 100; ++trial) {
        suite.push_back(gen::random_nonproduct_state(rng));
    }
    for (const PureState& psi : suite) {
        const bool direct = is_one_distillable(psi, kNumber).distillable;
        const bool oracle =
            twirled_one_distillable(twirl_pure(psi, kNumber), kNumber);
        if (direct != oracle) return false;
    }
    return true;
}

bool criterion_7_ppt() {
    const DensityOperator epr = projector(states::eeper());
    return !is_ppt(epr) &&
           approx(min_partial_transpose_eigenvalue(epr), -0.5) &&
           is_ppt(twirl_pure(states::veper(), kNumber));
}

bool criterion_8_twirl_algebra() {
    std::mt19937 rng(424242);
    for (int trial = 0; trial < 100; ++trial) {
        const PureState psi = gen::random_nonproduct_state(rng);
        const DensityOperator rho = twirl_pure(psi, kNumber);
        if (!approx(rho.trace(), 1.0)) return false;
        // idempotence: every surviving entry is already within one sector,
        // so a second dephasing keeps each entry exactly
        for (const auto& [key, value] : rho.entries()) {
            if (sector_of(key.first, kNumber) != sector_of(key.second, kNumber))
                return false;
        }
        double sum = 0.0;
        for (const auto& [key, w] : sector_support(psi, kNumber)) sum += w;
        if (!approx(sum, 1.0)) return false;
    }
    return true;
}

bool criterion_9_coherent_demo() {
    const TruncatedState chi = make_coherent_pair(1.0, 8);
    const ProtocolOutcome outcome =
        verify_activation(states::veper(), chi.state, kNumber);
    if (!outcome.success || !outcome.output) return false;
    if (fidelity(*outcome.output, states::eeper()) < 1.0 - kTol) return false;
    // the kept weight of |alpha=1> at cutoff 8 is 1 - 1.1252e-6, so this
    // bound is not attainable at the mandated cutoff; kept as an honest check
    return chi.truncation_loss < 1e-6;
}

bool criterion_10_parser_cli() {
    const std::vector<std::string> corpus = {
        "|0;0>", "|0;1>", "|1;0>", "|2;2>", "|0,0;0,0>", "|0,1;1,0>",
        "1/sqrt2 |0;1> + 1/sqrt2 |1;0>", "1/sqrt2 |0;1> - 1/sqrt2 |1;0>",
        "|0,1;1,0> + |1,0;0,1>", "|0,1;1,0> - |1,0;0,1>",
        "1/2 |0;0> + 1/2 |0;1> + 1/2 |1;0> + 1/2 |1;1>",
        "1/2 |0;0> - 1/2 |0;1> - 1/2 |1;0> + 1/2 |1;1>",
        "1/2 |0;0> + 1/2 |0;1> + 1/2 |1;0> - 1/2 |1;1>",
        "1/sqrt2 |0,1;0> + 1/sqrt2 |1,0;1>",
        "1/2 |0,1;0> + 1/2 |0,1;1> + 1/2 |1,0;0> - 1/2 |1,0;1>",
        "0.6 |0;0> + 0.8 |1;1>", "3/5 |0;0> + 4/5 |2;2>",
        "2 |0;1> + 3 |1;0>", "1e-3 |0;0> + |1;1>",
        "2.5e2 |0;0> + 1.25e2 |1;1>",
        "1/sqrt3 |0;0> + 1/sqrt3 |1;1> + 1/sqrt3 |2;2>",
        "5/7 |0,2;1> + 2/7 |2,0;1>", "|0;1> * |1;0>",
        "|0;1> x |1;0> x |0;0>", "(|0;1> + |1;0>) * |0;0>",
        "(|0;1> + |1;0>) * (|0;1> - |1;0>)",
        "1/2 (|0;1> + |1;0>) * (|0;1> + |1;0>)", "- |0;1> + |1;0>",
        "(((|0;1>)))", "1/sqrt2 (|0;0> + |1;1>)",
        "0.1 |0;0> + 0.2 |0;1> + 0.3 |1;0> + 0.4 |1;1>",
        "|1,2;2,1> + 2 |2,1;1,2>", "7 |0,0;2> - 0.5 |1,1;0>",
    };
    if (corpus.size() < 30) return false;
    for (const std::string& text : corpus) {
        const PureState once = parse_state(text).state;
        const PureState twice = parse_state(render_state(once)).state;
        if (once.support_size() != twice.support_size()) return false;
        const cplx adjust = once.amps().begin()->second /
                            twice.amps().begin()->second;
        for (const auto& [label, amp] : once.amps()) {
            if (std::abs(twice.amplitude(label) * adjust - amp) > 1e-12) {
                return false;
            }
        }
    }
    // JSON determinism and the exit-code contract run as subprocess checks in
    // cli_tests; here the document builder itself must be reproducible
    const ordered_json a = report_to_json(classify(states::veper(), kNumber));
    const ordered_json b = report_to_json(classify(states::veper(), kNumber));
    return dump_report(a) == dump_report(b);
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<bool()>>> criteria = {
        {"1. worked-example classification table", criterion_1_example_table},
        {"2. refbit activation of the shared single photon",
         criterion_2_activation},
        {"3. two-copy distillation of the shared single photon",
         criterion_3_two_copy},
        {"4. distillation theorem over 200 random non-product states",
         criterion_4_distillation_theorem},
        {"5. activation theorem over 100 random bound states",
         criterion_5_activation_theorem},
        {"6. sector scan agrees with the PPT oracle",
         criterion_6_oracle_equivalence},
        {"7. PPT sanity at 2x2", criterion_7_ppt},
        {"8. twirl algebra on 100 random states", criterion_8_twirl_algebra},
        {"9. coherent-state activation demo (loss < 1e-6)",
         criterion_9_coherent_demo},
        {"10. parser round-trip and report determinism",
         criterion_10_parser_cli},
    };

    int failures = 0;
    for (const auto& [name, check] : criteria) {
        bool ok = false;
        std::string note;
        try {
            ok = check();
        } catch (const std::exception& e) {
            note = std::string("  (") + e.what() + ")";
        }
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << note << "\n";
        if (!ok) ++failures;
    }
    return failures;
}
