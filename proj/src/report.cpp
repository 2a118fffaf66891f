#include "ssrent/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace ssrent {

double round12(double x) {
    if (x == 0.0 || !std::isfinite(x)) return x == 0.0 ? 0.0 : x;
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    const double r = std::strtod(buf, nullptr);
    return r == 0.0 ? 0.0 : r;
}

ordered_json json_number(double x) { return round12(x); }

ordered_json json_complex(cplx z) {
    return ordered_json::array({round12(z.real()), round12(z.imag())});
}

namespace {

std::string occ_string(const Occ& occ) {
    std::string out;
    for (std::size_t i = 0; i < occ.size(); ++i) {
        if (i > 0) out += ",";
        out += std::to_string(occ[i]);
    }
    return out;
}

std::string label_string(const BasisLabel& label) {
    return occ_string(label.alice) + ";" + occ_string(label.bob);
}

} // namespace

ordered_json state_to_json(const PureState& psi) {
    ordered_json doc;
    doc["alice_modes"] = psi.layout().alice_modes;
    doc["bob_modes"] = psi.layout().bob_modes;
    ordered_json amps = ordered_json::object();
    for (const auto& [label, amp] : psi.amps()) {
        amps[label_string(label)] = json_complex(amp);
    }
    doc["amplitudes"] = std::move(amps);
    return doc;
}

ordered_json density_to_json(const DensityOperator& rho) {
    ordered_json doc;
    doc["alice_modes"] = rho.layout().alice_modes;
    doc["bob_modes"] = rho.layout().bob_modes;
    ordered_json entries = ordered_json::object();
    for (const auto& [key, value] : rho.entries()) {
        entries[label_string(key.first) + "|" + label_string(key.second)] =
            json_complex(value);
    }
    doc["entries"] = std::move(entries);
    return doc;
}

ordered_json sector_to_json(const SectorKey& key) {
    return ordered_json::array({key.alice_charge, key.bob_charge});
}

ordered_json report_to_json(const ClassificationReport& report) {
    ordered_json doc;
    doc["class"] = to_string(report.state_class);
    doc["product"] = report.product;
    doc["locally_invariant"] = report.locally_invariant;
    doc["distillation_number"] =
        report.distillation_number ? ordered_json(*report.distillation_number)
                                   : ordered_json(nullptr);
    doc["witness_sector"] = report.witness_sector
                                ? sector_to_json(*report.witness_sector)
                                : ordered_json(nullptr);
    doc["witness_copies"] =
        report.witness_copies ? ordered_json(*report.witness_copies)
                              : ordered_json(nullptr);
    return doc;
}

namespace {

ordered_json choice_to_json(const LemmaChoice& choice) {
    ordered_json doc;
    doc["alice"] = ordered_json::array(
        {occ_string(choice.alice.ket1), occ_string(choice.alice.ket2)});
    doc["bob"] = ordered_json::array(
        {occ_string(choice.bob.ket1), occ_string(choice.bob.ket2)});
    return doc;
}

} // namespace

ordered_json outcome_to_json(const ProtocolOutcome& outcome) {
    ordered_json doc;
    doc["success"] = outcome.success;
    doc["probability"] = json_number(outcome.probability);
    doc["output"] =
        outcome.output ? state_to_json(*outcome.output) : ordered_json(nullptr);
    ordered_json steps = ordered_json::array();
    for (const auto& step : outcome.transcript) {
        ordered_json s;
        s["action"] = step.action;
        s["probability"] = json_number(step.probability);
        if (step.sector) s["sector"] = sector_to_json(*step.sector);
        steps.push_back(std::move(s));
    }
    doc["transcript"] = std::move(steps);
    doc["reason"] = outcome.reason;
    doc["subspace"] =
        outcome.choice ? choice_to_json(*outcome.choice) : ordered_json(nullptr);
    if (outcome.lambdas) {
        doc["lambda_plus"] = json_complex(outcome.lambdas->first);
        doc["lambda_minus"] = json_complex(outcome.lambdas->second);
    }
    return doc;
}

std::string dump_report(const ordered_json& doc) { return doc.dump(2) + "\n"; }

} // namespace ssrent
