#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ssrent/classify.hpp"

namespace ssrent {

/// Two basis labels spanning a local 2-dimensional subspace on one party.
struct SubspaceChoice {
    Party party = Party::A;
    Occ ket1;
    Occ ket2;
};

/// A full 2x2 subspace selection: one choice per party.
struct LemmaChoice {
    SubspaceChoice alice;
    SubspaceChoice bob;
};

struct StepRecord {
    std::string action;
    double probability = 1.0;
    std::optional<SectorKey> sector;
};

struct ProtocolOutcome {
    bool success = false;
    double probability = 0.0;
    // Normalized, locally invariant and non-product when success.
    std::optional<PureState> output;
    std::vector<StepRecord> transcript;
    std::string reason;
    std::optional<LemmaChoice> choice;
    // (lambda_plus, lambda_minus) of the S+/S- expansion, when applicable.
    std::optional<std::pair<cplx, cplx>> lambdas;
};

/// First (lexicographic) pair of support-label pairs whose 2x2 projection of
/// psi is non-product; nullopt iff psi has no such subspace (product state).
std::optional<LemmaChoice> find_lemma_subspace(const PureState& psi,
                                               const ChargeRule& rule);

/// Activator construction: chi = (|n> + |n'>) x (|m> + |m'>) normalized, on
/// psi's own layout, built from the first Lemma subspace of psi.  chi is a
/// product state that is not locally invariant, hence BLP.
/// Throws DomainError unless psi is in B1-D.
std::pair<PureState, LemmaChoice> build_activator(const PureState& psi,
                                                  const ChargeRule& rule);

/// Projects psi (x) chi onto the invariant pair subspace S^A_{n+n'} (x)
/// S^B_{m+m'} of the chosen Lemma subspace and reports whether the result is
/// non-product and locally invariant, with the post-selection probability.
/// Tries every Lemma-valid subspace of psi and returns the first success;
/// failure is a false verdict with transcript, never an exception.
/// chi must live on psi's layout.
ProtocolOutcome verify_activation(const PureState& psi, const PureState& chi,
                                  const ChargeRule& rule);
ProtocolOutcome verify_activation(const PureState& psi, const PureState& chi,
                                  const ChargeRule& rule, const LemmaChoice& choice);

/// Three-copy distillation via activation.  Needs a subspace with distinct
/// charges on both sides whose residuals are not locally invariant; if no
/// choice qualifies, fails with reason "condition unsatisfiable".
/// Throws DomainError on product input.
ProtocolOutcome protocol_A(const PureState& psi, const ChargeRule& rule);

/// Two-copy distillation.  Projects both copies onto a Lemma subspace and
/// then onto the invariant pair subspace; the output is
/// lambda+ |S+>|S+> + lambda- |S->|S->.  lambda- never vanishes; success iff
/// some admissible choice gives lambda+ != 0.  Within a degenerate charge
/// sector any basis is an eigenbasis, so same-charge label pairs are also
/// searched over rotated bases.  Throws DomainError on product input.
ProtocolOutcome protocol_B(const PureState& psi, const ChargeRule& rule);

struct QndOutcome {
    int charge = 0;
    double probability = 0.0;
    PureState post_state;
};

/// Non-demolition measurement of one party's local charge: one entry per
/// occupied charge, deterministic enumeration (no sampling), sorted by
/// charge.  Probabilities sum to 1 for a normalized state.
std::vector<QndOutcome> qnd_measure(const PureState& psi, Party party,
                                    const ChargeRule& rule);

inline constexpr int kDefaultCutoff = 8;
inline constexpr double kDefaultLossBound = 1e-5;

/// Single-mode factor truncated to occupations 0..cutoff, renormalized.
struct TruncatedKet {
    std::vector<cplx> amps; // index = occupation
    double truncation_loss = 0.0; // 1 - kept weight before renormalization
};

/// Coherent state  sum_n e^{-|alpha|^2/2} alpha^n / sqrt(n!) |n>.
/// Throws CutoffError when the truncation loss exceeds loss_bound.
TruncatedKet make_coherent(cplx alpha, int cutoff,
                           double loss_bound = kDefaultLossBound);

/// |alpha>_A |alpha>_B on a (1,1) layout; truncation_loss is the larger
/// single-mode loss.
struct TruncatedState {
    PureState state;
    double truncation_loss = 0.0;
};

TruncatedState make_coherent_pair(cplx alpha, int cutoff,
                                  double loss_bound = kDefaultLossBound);

/// Two-mode squeezed state sqrt(1-gamma^2) sum_n gamma^n |n,n> with Alice
/// holding the first mode and Bob the second, truncated and renormalized.
/// gamma in [0,1).
TruncatedState make_two_mode_squeezed(double gamma, int cutoff,
                                      double loss_bound = kDefaultLossBound);

} // namespace ssrent
