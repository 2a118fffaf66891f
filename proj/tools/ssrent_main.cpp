#include <cmath>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ssrent/classify.hpp"
#include "ssrent/oracle.hpp"
#include "ssrent/parser.hpp"
#include "ssrent/protocols.hpp"
#include "ssrent/report.hpp"

namespace {

using namespace ssrent;

std::string resolve_text(const std::string& arg) {
    if (arg != "-") return arg;
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
}

ChargeRule parse_rule(const std::string& text) {
    if (text == "number") return ChargeRule::total_number();
    if (text.rfind("mod:", 0) == 0) {
        try {
            return ChargeRule::total_number_mod(std::stoi(text.substr(4)));
        } catch (const DomainError&) {
            throw;
        } catch (const std::exception&) {
            throw DomainError("bad modulus in rule '" + text + "'");
        }
    }
    throw DomainError("unknown rule '" + text + "'; use number or mod:d");
}

// render_state covers real-amplitude states only; fall back to compact JSON
std::string describe_state(const PureState& psi) {
    try {
        return render_state(psi);
    } catch (const DomainError&) {
        return state_to_json(psi).dump();
    }
}

ordered_json report_header(const std::string& command, const ChargeRule& rule) {
    ordered_json doc;
    doc["schema"] = kSchemaTag;
    doc["command"] = command;
    doc["rule"] = to_string(rule);
    return doc;
}

void emit(const ordered_json& doc) { std::cout << dump_report(doc); }

void print_outcome_text(const ProtocolOutcome& outcome) {
    std::cout << "success: " << (outcome.success ? "yes" : "no") << "\n";
    std::cout << "probability: " << round12(outcome.probability) << "\n";
    if (outcome.lambdas) {
        std::cout << "lambda_plus: " << round12(std::abs(outcome.lambdas->first))
                  << "  lambda_minus: "
                  << round12(std::abs(outcome.lambdas->second)) << "\n";
    }
    for (const auto& step : outcome.transcript) {
        std::cout << "  step: " << step.action
                  << "  (p = " << round12(step.probability);
        if (step.sector) std::cout << ", sector " << to_string(*step.sector);
        std::cout << ")\n";
    }
    if (outcome.output) {
        std::cout << "output: " << describe_state(*outcome.output) << "\n";
    }
    if (!outcome.reason.empty()) {
        std::cout << "reason: " << outcome.reason << "\n";
    }
}

int cmd_classify(const std::string& text, const ChargeRule& rule, int max_copies,
                 bool json) {
    const ParsedState parsed = parse_state(resolve_text(text));
    const ClassificationReport report = classify(parsed.state, rule, max_copies);
    if (json) {
        ordered_json doc = report_header("classify", rule);
        doc["input"] = text;
        doc["original_norm"] = json_number(parsed.original_norm);
        doc["state"] = state_to_json(parsed.state);
        doc["report"] = report_to_json(report);
        emit(doc);
    } else {
        std::cout << "state: " << describe_state(parsed.state) << "\n";
        std::cout << "class: " << to_string(report.state_class) << "\n";
        std::cout << "product: " << (report.product ? "yes" : "no") << "\n";
        std::cout << "locally_invariant: "
                  << (report.locally_invariant ? "yes" : "no") << "\n";
        if (report.distillation_number) {
            std::cout << "distillation_number: " << *report.distillation_number
                      << "\n";
        }
        if (report.witness_sector) {
            std::cout << "witness_sector: " << to_string(*report.witness_sector)
                      << " at " << *report.witness_copies << " copies\n";
        }
    }
    return 0;
}

int cmd_activate(const std::string& text, const std::string& activator_text,
                 const ChargeRule& rule, bool json) {
    const ParsedState parsed = parse_state(resolve_text(text));
    PureState chi = parsed.state; // placeholder, reassigned below
    ProtocolOutcome outcome;
    if (activator_text.empty()) {
        auto [built, choice] = build_activator(parsed.state, rule);
        chi = built;
        outcome = verify_activation(parsed.state, chi, rule, choice);
    } else {
        chi = parse_state(resolve_text(activator_text)).state;
        outcome = verify_activation(parsed.state, chi, rule);
    }
    if (json) {
        ordered_json doc = report_header("activate", rule);
        doc["input"] = text;
        doc["activator"] = state_to_json(chi);
        doc["outcome"] = outcome_to_json(outcome);
        emit(doc);
    } else {
        std::cout << "activator: " << describe_state(chi) << "\n";
        print_outcome_text(outcome);
    }
    return 0;
}

int cmd_distill(const std::string& text, const std::string& protocol,
                const ChargeRule& rule, bool json) {
    const ParsedState parsed = parse_state(resolve_text(text));
    std::string used = protocol;
    ProtocolOutcome outcome;
    if (protocol == "A") {
        outcome = protocol_A(parsed.state, rule);
    } else if (protocol == "B") {
        outcome = protocol_B(parsed.state, rule);
    } else if (protocol == "auto") {
        outcome = protocol_A(parsed.state, rule);
        used = "A";
        if (!outcome.success) {
            outcome = protocol_B(parsed.state, rule);
            used = "B";
        }
    } else {
        throw DomainError("unknown protocol '" + protocol + "'; use A, B or auto");
    }
    if (json) {
        ordered_json doc = report_header("distill", rule);
        doc["input"] = text;
        doc["protocol"] = used;
        doc["outcome"] = outcome_to_json(outcome);
        emit(doc);
    } else {
        std::cout << "protocol: " << used << "\n";
        print_outcome_text(outcome);
    }
    return 0;
}

int cmd_twirl(const std::string& text, const ChargeRule& rule, bool json) {
    const ParsedState parsed = parse_state(resolve_text(text));
    const DensityOperator rho = twirl_pure(parsed.state, rule);
    const auto weights = sector_support(parsed.state, rule);
    const bool ppt = is_ppt(rho);
    if (json) {
        ordered_json doc = report_header("twirl", rule);
        doc["input"] = text;
        ordered_json sectors = ordered_json::array();
        for (const auto& [key, weight] : weights) {
            ordered_json s;
            s["sector"] = sector_to_json(key);
            s["weight"] = json_number(weight);
            sectors.push_back(std::move(s));
        }
        doc["sector_weights"] = std::move(sectors);
        doc["ppt"] = ppt;
        doc["density"] = density_to_json(rho);
        emit(doc);
    } else {
        std::cout << "sectors:\n";
        for (const auto& [key, weight] : weights) {
            std::cout << "  " << to_string(key) << ": " << round12(weight)
                      << "\n";
        }
        std::cout << "ppt: " << (ppt ? "yes" : "no") << "\n";
    }
    return 0;
}

PureState veper() {
    const double r = 1.0 / std::sqrt(2.0);
    return make_ket(ModeLayout{1, 1},
                    {{r, {{0}, {1}}}, {r, {{1}, {0}}}});
}

PureState eeper() {
    const double r = 1.0 / std::sqrt(2.0);
    return make_ket(ModeLayout{2, 2},
                    {{r, {{0, 1}, {1, 0}}}, {r, {{1, 0}, {0, 1}}}});
}

PureState refbit() {
    return make_ket(ModeLayout{1, 1}, {{0.5, {{0}, {0}}},
                                       {0.5, {{0}, {1}}},
                                       {0.5, {{1}, {0}}},
                                       {0.5, {{1}, {1}}}});
}

int cmd_demo(const std::string& name, int cutoff, bool json) {
    const ChargeRule rule = ChargeRule::total_number();
    ordered_json doc = report_header("demo", rule);
    doc["demo"] = name;

    if (name == "veper-activation") {
        const PureState psi = veper();
        auto [chi, choice] = build_activator(psi, rule);
        const ProtocolOutcome outcome = verify_activation(psi, chi, rule, choice);
        const double fid = outcome.output ? fidelity(*outcome.output, eeper()) : 0.0;
        if (json) {
            doc["activator"] = state_to_json(chi);
            doc["outcome"] = outcome_to_json(outcome);
            doc["fidelity_to_two_mode_singlet"] = json_number(fid);
            emit(doc);
        } else {
            std::cout << "A shared single photon, " << describe_state(psi)
                      << ", is entangled but not 1-distillable under the local "
                         "number rule.\n";
            std::cout << "The product activator " << describe_state(chi)
                      << " is not number-invariant; measuring local totals "
                         "post-selects a distillable state.\n";
            print_outcome_text(outcome);
            std::cout << "fidelity to dual-rail singlet: " << round12(fid)
                      << "\n";
        }
        return 0;
    }

    if (name == "veper-2copy") {
        const PureState psi = veper();
        const ProtocolOutcome outcome = protocol_B(psi, rule);
        const double fid = outcome.output ? fidelity(*outcome.output, eeper()) : 0.0;
        if (json) {
            doc["outcome"] = outcome_to_json(outcome);
            doc["fidelity_to_two_mode_singlet"] = json_number(fid);
            emit(doc);
        } else {
            std::cout << "Two copies of " << describe_state(psi)
                      << " project onto the charge-(1,1) pair sector.\n";
            print_outcome_text(outcome);
            std::cout << "fidelity to dual-rail singlet: " << round12(fid)
                      << "\n";
        }
        return 0;
    }

    if (name == "coherent-activation") {
        const PureState psi = veper();
        const TruncatedState chi = make_coherent_pair(1.0, cutoff);
        const ProtocolOutcome outcome = verify_activation(psi, chi.state, rule);
        const double fid = outcome.output ? fidelity(*outcome.output, eeper()) : 0.0;
        if (json) {
            doc["cutoff"] = cutoff;
            doc["truncation_loss"] = json_number(chi.truncation_loss);
            doc["outcome"] = outcome_to_json(outcome);
            doc["fidelity_to_two_mode_singlet"] = json_number(fid);
            emit(doc);
        } else {
            std::cout << "Correlated coherent beams (alpha = 1, truncated at "
                      << cutoff << " photons, loss "
                      << round12(chi.truncation_loss)
                      << ") serve as local oscillators.\n";
            std::cout << "They activate the shared single photon exactly as "
                         "the qubit activator does.\n";
            print_outcome_text(outcome);
            std::cout << "fidelity to dual-rail singlet: " << round12(fid)
                      << "\n";
        }
        return 0;
    }

    if (name == "squeezed-activation") {
        const TruncatedState psi = make_two_mode_squeezed(0.5, cutoff);
        const TruncatedState chi = make_coherent_pair(1.0, cutoff);
        const ProtocolOutcome outcome =
            verify_activation(psi.state, chi.state, rule);
        if (json) {
            doc["cutoff"] = cutoff;
            doc["squeezed_truncation_loss"] = json_number(psi.truncation_loss);
            doc["coherent_truncation_loss"] = json_number(chi.truncation_loss);
            doc["outcome"] = outcome_to_json(outcome);
            emit(doc);
        } else {
            std::cout << "A two-mode squeezed state (gamma = 0.5) is the "
                         "entanglement resource; alone it is not "
                         "1-distillable under the number rule.\n";
            std::cout << "The coherent pair (alpha = 1) acts as a quantum "
                         "phase reference and activates it.\n";
            print_outcome_text(outcome);
        }
        return 0;
    }

    if (name == "refbit-gap") {
        const PureState plus = refbit();
        const PureState epr = eeper();
        const ClassificationReport plus_report = classify(plus, rule);
        const ClassificationReport epr_report = classify(epr, rule);
        const bool plus_ppt = is_ppt(twirl_pure(plus, rule));
        const double epr_min_eig =
            min_partial_transpose_eigenvalue(twirl_pure(epr, rule));
        if (json) {
            doc["refbit_class"] = to_string(plus_report.state_class);
            doc["refbit_twirl_ppt"] = plus_ppt;
            doc["singlet_class"] = to_string(epr_report.state_class);
            doc["singlet_min_pt_eigenvalue"] = json_number(epr_min_eig);
            emit(doc);
        } else {
            std::cout << "The refbit " << describe_state(plus)
                      << " is a product state, yet no local machine can "
                         "prepare it: class "
                      << to_string(plus_report.state_class) << ".\n";
            std::cout << "Its number twirl is PPT ("
                      << (plus_ppt ? "yes" : "no")
                      << "), so it holds no distillable entanglement.\n";
            std::cout << "The dual-rail singlet " << describe_state(epr)
                      << " is class " << to_string(epr_report.state_class)
                      << " with minimum partial-transpose eigenvalue "
                      << round12(epr_min_eig) << ".\n";
            std::cout << "The gap between them is exactly what activation "
                         "bridges.\n";
        }
        return 0;
    }

    throw DomainError("unknown demo '" + name + "'");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"bipartite bosonic entanglement under a local charge "
                 "superselection rule"};
    app.require_subcommand(1);

    std::string state_text, activator_text, rule_text = "number";
    std::string protocol = "auto", demo_name;
    bool json = false;
    int cutoff = kDefaultCutoff;
    int max_copies = kDefaultMaxCopies;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--rule", rule_text,
                        "charge rule: number or mod:d (default number)");
        cmd->add_flag("--json", json, "machine-readable report");
    };

    CLI::App* c_classify = app.add_subcommand("classify", "classify a state");
    c_classify->add_option("state", state_text, "bra-ket expression, - for stdin")
        ->required();
    c_classify->add_option("--max-copies", max_copies, "copy-count bound");
    add_common(c_classify);

    CLI::App* c_activate =
        app.add_subcommand("activate", "activate bound entanglement");
    c_activate->add_option("state", state_text, "bra-ket expression, - for stdin")
        ->required();
    c_activate->add_option("activator", activator_text,
                           "activator expression (default: constructed)");
    add_common(c_activate);

    CLI::App* c_distill = app.add_subcommand("distill", "multi-copy distillation");
    c_distill->add_option("state", state_text, "bra-ket expression, - for stdin")
        ->required();
    c_distill->add_option("--protocol", protocol, "A, B or auto");
    add_common(c_distill);

    CLI::App* c_twirl = app.add_subcommand("twirl", "dephase across charge sectors");
    c_twirl->add_option("state", state_text, "bra-ket expression, - for stdin")
        ->required();
    add_common(c_twirl);

    CLI::App* c_demo = app.add_subcommand("demo", "worked scenarios");
    c_demo
        ->add_option("name", demo_name,
                     "veper-activation | veper-2copy | coherent-activation | "
                     "squeezed-activation | refbit-gap")
        ->required();
    c_demo->add_option("--cutoff", cutoff, "photon-number truncation");
    c_demo->add_flag("--json", json, "machine-readable report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const ChargeRule rule = parse_rule(rule_text);
        if (c_classify->parsed()) {
            return cmd_classify(state_text, rule, max_copies, json);
        }
        if (c_activate->parsed()) {
            return cmd_activate(state_text, activator_text, rule, json);
        }
        if (c_distill->parsed()) {
            return cmd_distill(state_text, protocol, rule, json);
        }
        if (c_twirl->parsed()) {
            return cmd_twirl(state_text, rule, json);
        }
        if (c_demo->parsed()) {
            return cmd_demo(demo_name, cutoff, json);
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const ConsistencyError& e) {
        std::cerr << "internal consistency error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const ResourceLimitError& e) {
        std::cerr << "internal limit error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 3;
}
