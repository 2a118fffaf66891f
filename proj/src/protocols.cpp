#include "ssrent/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace ssrent {

namespace {

using Matrix2 = Eigen::Matrix2cd;

Occ concat(const Occ& a, const Occ& b) {
    Occ out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

cplx perm2(const Matrix2& m) { return m(0, 0) * m(1, 1) + m(0, 1) * m(1, 0); }

struct Candidate {
    Occ a1, a2, b1, b2;
    Matrix2 m;    // amplitudes of psi on the 2x2 subspace
    double p_sub; // squared norm of those amplitudes
};

Candidate make_candidate(const PureState& psi, const Occ& a1, const Occ& a2,
                         const Occ& b1, const Occ& b2) {
    Candidate c{a1, a2, b1, b2, Matrix2::Zero(), 0.0};
    c.m(0, 0) = psi.amplitude({a1, b1});
    c.m(0, 1) = psi.amplitude({a1, b2});
    c.m(1, 0) = psi.amplitude({a2, b1});
    c.m(1, 1) = psi.amplitude({a2, b2});
    c.p_sub = c.m.squaredNorm();
    return c;
}

// All 2x2 subspaces spanned by support-label pairs whose projection of psi is
// non-product, in lexicographic (a1,a2,b1,b2) order.
std::vector<Candidate> lemma_candidates(const PureState& psi) {
    std::vector<Candidate> out;
    const auto as = alice_sublabels(psi);
    const auto bs = bob_sublabels(psi);
    for (std::size_t i = 0; i < as.size(); ++i) {
        for (std::size_t j = i + 1; j < as.size(); ++j) {
            for (std::size_t k = 0; k < bs.size(); ++k) {
                for (std::size_t l = k + 1; l < bs.size(); ++l) {
                    Candidate c = make_candidate(psi, as[i], as[j], bs[k], bs[l]);
                    if (std::abs(c.m.determinant()) > kRankTol * c.p_sub) {
                        out.push_back(std::move(c));
                    }
                }
            }
        }
    }
    return out;
}

LemmaChoice to_choice(const Candidate& c) {
    return {{Party::A, c.a1, c.a2}, {Party::B, c.b1, c.b2}};
}

// Local vector confined to a two-label subspace.
using LocalVec = std::map<Occ, cplx>;

PureState product_state(const ModeLayout& layout, const LocalVec& alice,
                        const LocalVec& bob) {
    PureState::AmpMap amps;
    for (const auto& [la, aa] : alice) {
        for (const auto& [lb, ab] : bob) {
            amps.emplace(BasisLabel{la, lb}, aa * ab);
        }
    }
    return PureState(layout, std::move(amps));
}

// Eigenbasis rotation search.  Within a degenerate charge sector every basis
// is an eigenbasis, so when one side's two labels share a charge the basis
// may be rotated there to make the permanent of the coefficient matrix
// nonzero; for det(m) != 0 such a rotation always exists.
struct BasisFix {
    Matrix2 u = Matrix2::Identity();
    Matrix2 v = Matrix2::Identity();
    bool rotated = false;
};

Matrix2 apply_basis(const Matrix2& m, const BasisFix& fix) {
    return fix.u.adjoint() * m * fix.v.conjugate();
}

std::vector<Matrix2> rotation_family() {
    const cplx i{0.0, 1.0};
    std::vector<Matrix2> out;
    Matrix2 x, h1, h2, p;
    x << 0, 1, 1, 0;
    h1 << 1, 1, 1, -1;
    h2 << 1, -1, 1, 1;
    p << 1, i, i, 1;
    out.push_back(x);
    out.push_back(h1 / std::sqrt(2.0));
    out.push_back(h2 / std::sqrt(2.0));
    out.push_back(p / std::sqrt(2.0));
    for (int k = 1; k < 16; ++k) {
        const double theta = k * M_PI / 16.0;
        for (int f = 0; f < 4; ++f) {
            const double phi = f * M_PI / 4.0;
            const cplx e = std::exp(i * phi);
            Matrix2 u;
            u << std::cos(theta), -std::sin(theta) * std::conj(e),
                std::sin(theta) * e, std::cos(theta);
            out.push_back(u);
        }
    }
    return out;
}

BasisFix choose_eigenbasis(const Matrix2& m, bool rot_alice, bool rot_bob) {
    const double thresh = kRankTol * m.squaredNorm();
    if (std::abs(perm2(m)) > thresh) return {};
    BasisFix best;
    if (rot_alice && rot_bob) {
        Eigen::JacobiSVD<Matrix2> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
        best.u = svd.matrixU();
        best.v = svd.matrixV().conjugate();
        best.rotated = true;
        return best;
    }
    if (!rot_alice && !rot_bob) return {};
    double best_perm = std::abs(perm2(m));
    for (const Matrix2& r : rotation_family()) {
        BasisFix fix;
        if (rot_alice) {
            fix.u = r;
        } else {
            fix.v = r;
        }
        fix.rotated = true;
        const double p = std::abs(perm2(apply_basis(m, fix)));
        if (p > best_perm) {
            best_perm = p;
            best = fix;
        }
    }
    return best;
}

ProtocolOutcome failure(std::string reason) {
    ProtocolOutcome out;
    out.success = false;
    out.probability = 0.0;
    out.reason = std::move(reason);
    return out;
}

ProtocolOutcome attempt_activation(const PureState& psi, const PureState& chi,
                                   const ChargeRule& rule, const Candidate& cand) {
    ProtocolOutcome out;
    out.choice = to_choice(cand);

    auto [psi_sub, p1] = project(psi, [&](const BasisLabel& label) {
        return (label.alice == cand.a1 || label.alice == cand.a2) &&
               (label.bob == cand.b1 || label.bob == cand.b2);
    });
    out.transcript.push_back({"project state onto 2x2 subspace", p1, std::nullopt});
    if (p1 <= kDropTol) {
        out.reason = "state has no weight in the chosen subspace";
        return out;
    }

    const PureState joint = tensor(psi_sub.normalize(), chi);
    const Occ pair_a1 = concat(cand.a1, cand.a2), pair_a2 = concat(cand.a2, cand.a1);
    const Occ pair_b1 = concat(cand.b1, cand.b2), pair_b2 = concat(cand.b2, cand.b1);
    const SectorKey sector{rule.charge_of(pair_a1), rule.charge_of(pair_b1)};

    auto [kept, p2] = project(joint, [&](const BasisLabel& label) {
        return (label.alice == pair_a1 || label.alice == pair_a2) &&
               (label.bob == pair_b1 || label.bob == pair_b2);
    });
    out.transcript.push_back(
        {"project joint state onto invariant pair subspace", p2, sector});
    out.probability = p1 * p2;
    if (p2 <= kDropTol) {
        out.reason = "joint state has no weight in the invariant pair subspace";
        out.probability = 0.0;
        return out;
    }

    const PureState result = kept.normalize();
    if (is_product(result)) {
        out.reason = "projected joint state is a product state";
        return out;
    }
    if (!is_locally_invariant(result, rule)) {
        // cannot happen: both pair labels carry the same charges
        throw ConsistencyError("invariant pair projection left multiple sectors");
    }
    out.success = true;
    out.output = result;
    return out;
}

} // namespace

std::optional<LemmaChoice> find_lemma_subspace(const PureState& psi,
                                               const ChargeRule&) {
    const auto cands = lemma_candidates(psi);
    if (cands.empty()) return std::nullopt;
    return to_choice(cands.front());
}

std::pair<PureState, LemmaChoice> build_activator(const PureState& psi,
                                                  const ChargeRule& rule) {
    if (is_product(psi)) {
        throw DomainError("activation applies to non-product states only");
    }
    if (is_one_distillable(psi, rule).distillable) {
        throw DomainError("state is already 1-distillable; nothing to activate");
    }
    const auto cands = lemma_candidates(psi);
    if (cands.empty()) {
        throw ConsistencyError("non-product state without a Lemma subspace");
    }
    const Candidate& c = cands.front();
    const LocalVec alice{{c.a1, 1.0}, {c.a2, 1.0}};
    const LocalVec bob{{c.b1, 1.0}, {c.b2, 1.0}};
    return {product_state(psi.layout(), alice, bob).normalize(), to_choice(c)};
}

ProtocolOutcome verify_activation(const PureState& psi, const PureState& chi,
                                  const ChargeRule& rule, const LemmaChoice& choice) {
    if (!(chi.layout() == psi.layout())) {
        throw LayoutError("activator must live on the state's own layout");
    }
    if (std::abs(chi.norm_squared() - 1.0) > kNormTol) {
        throw DomainError("activator must be normalized");
    }
    if (!is_product(chi)) {
        throw DomainError("activator must be a product state");
    }
    return attempt_activation(
        psi, chi, rule,
        make_candidate(psi, choice.alice.ket1, choice.alice.ket2, choice.bob.ket1,
                       choice.bob.ket2));
}

ProtocolOutcome verify_activation(const PureState& psi, const PureState& chi,
                                  const ChargeRule& rule) {
    if (!(chi.layout() == psi.layout())) {
        throw LayoutError("activator must live on the state's own layout");
    }
    if (std::abs(chi.norm_squared() - 1.0) > kNormTol) {
        throw DomainError("activator must be normalized");
    }
    if (!is_product(chi)) {
        throw DomainError("activator must be a product state");
    }
    const auto cands = lemma_candidates(psi);
    if (cands.empty()) {
        return failure("state has no non-product 2x2 projection");
    }
    std::optional<ProtocolOutcome> first;
    for (const Candidate& cand : cands) {
        ProtocolOutcome out = attempt_activation(psi, chi, rule, cand);
        if (out.success) return out;
        if (!first) first = std::move(out);
    }
    first->reason = "no subspace choice produced an entangled invariant state";
    return *first;
}

ProtocolOutcome protocol_A(const PureState& psi, const ChargeRule& rule) {
    if (is_product(psi)) {
        throw DomainError("distillation applies to non-product states only");
    }
    for (const Candidate& cand : lemma_candidates(psi)) {
        // the protocol needs distinct charges on both sides
        if (rule.charge_of(cand.a1) == rule.charge_of(cand.a2)) continue;
        if (rule.charge_of(cand.b1) == rule.charge_of(cand.b2)) continue;

        // a residual is non-invariant iff it mixes both (distinct-charge)
        // basis labels; take the first qualifying outcome by label order
        const Matrix2& m = cand.m;
        const double tol = kRankTol * std::sqrt(cand.p_sub);
        int row = -1, col = -1;
        for (int i = 0; i < 2 && row < 0; ++i) {
            if (std::abs(m(i, 0)) > tol && std::abs(m(i, 1)) > tol) row = i;
        }
        for (int j = 0; j < 2 && col < 0; ++j) {
            if (std::abs(m(0, j)) > tol && std::abs(m(1, j)) > tol) col = j;
        }
        if (row < 0 || col < 0) continue;

        const double p_sub = cand.p_sub;
        const double prob_row =
            (std::norm(m(row, 0)) + std::norm(m(row, 1))) / p_sub;
        const double prob_col =
            (std::norm(m(0, col)) + std::norm(m(1, col))) / p_sub;

        // Alice's copy-1 measurement leaves Bob's residual; Bob's copy-2
        // measurement leaves Alice's.  Their product is the BLP activator.
        const double row_norm =
            std::sqrt(std::norm(m(row, 0)) + std::norm(m(row, 1)));
        const double col_norm =
            std::sqrt(std::norm(m(0, col)) + std::norm(m(1, col)));
        const LocalVec residual_bob{{cand.b1, m(row, 0) / row_norm},
                                    {cand.b2, m(row, 1) / row_norm}};
        const LocalVec residual_alice{{cand.a1, m(0, col) / col_norm},
                                      {cand.a2, m(1, col) / col_norm}};
        const PureState chi =
            product_state(psi.layout(), residual_alice, residual_bob).normalize();

        ProtocolOutcome act = attempt_activation(psi, chi, rule, cand);
        if (!act.success) continue;

        ProtocolOutcome out;
        out.success = true;
        out.choice = to_choice(cand);
        out.output = act.output;
        out.transcript.push_back(
            {"project copy 1 onto 2x2 subspace", p_sub, std::nullopt});
        out.transcript.push_back(
            {"project copy 2 onto 2x2 subspace", p_sub, std::nullopt});
        out.transcript.push_back(
            {"Alice measures copy 1 in the subspace basis", prob_row, std::nullopt});
        out.transcript.push_back(
            {"Bob measures copy 2 in the subspace basis", prob_col, std::nullopt});
        out.transcript.insert(out.transcript.end(), act.transcript.begin(),
                              act.transcript.end());
        out.probability = p_sub * p_sub * prob_row * prob_col * act.probability;
        return out;
    }
    return failure("condition unsatisfiable");
}

ProtocolOutcome protocol_B(const PureState& psi, const ChargeRule& rule) {
    if (is_product(psi)) {
        throw DomainError("distillation applies to non-product states only");
    }
    const auto cands = lemma_candidates(psi);
    if (cands.empty()) {
        throw ConsistencyError("non-product state without a Lemma subspace");
    }

    std::optional<ProtocolOutcome> first_attempt;
    for (const Candidate& cand : cands) {
        const bool rot_alice = rule.charge_of(cand.a1) == rule.charge_of(cand.a2);
        const bool rot_bob = rule.charge_of(cand.b1) == rule.charge_of(cand.b2);
        const BasisFix fix = choose_eigenbasis(cand.m, rot_alice, rot_bob);
        const Matrix2 m = apply_basis(cand.m, fix);

        const cplx prod_diag = m(0, 0) * m(1, 1);
        const cplx prod_anti = m(0, 1) * m(1, 0);
        const double joint_weight =
            2.0 * (std::norm(prod_diag) + std::norm(prod_anti));
        const double denom = std::sqrt(joint_weight);
        const cplx lambda_plus = (prod_diag + prod_anti) / denom;
        const cplx lambda_minus = (prod_diag - prod_anti) / denom;
        if (std::abs(lambda_minus) <= kNormTol) {
            throw ConsistencyError("lambda_minus vanished on a Lemma subspace");
        }

        ProtocolOutcome out;
        out.choice = to_choice(cand);
        out.lambdas = std::make_pair(lambda_plus, lambda_minus);
        out.transcript.push_back(
            {"project copy 1 onto 2x2 subspace", cand.p_sub, std::nullopt});
        out.transcript.push_back(
            {"project copy 2 onto 2x2 subspace", cand.p_sub, std::nullopt});
        if (fix.rotated) {
            out.transcript.push_back(
                {"re-express degenerate charge sector in a rotated eigenbasis",
                 1.0, std::nullopt});
        }
        const SectorKey sector{rule.charge_of(concat(cand.a1, cand.a2)),
                               rule.charge_of(concat(cand.b1, cand.b2))};
        out.transcript.push_back(
            {"project both copies onto invariant pair subspace",
             joint_weight / (cand.p_sub * cand.p_sub), sector});
        out.probability = joint_weight;

        if (!first_attempt) first_attempt = out;
        if (std::abs(perm2(m)) <= kRankTol * cand.p_sub) continue;

        // output = lambda+ |S+>|S+> + lambda- |S->|S->, expanded in Fock basis
        const LocalVec basis_a[2] = {
            {{cand.a1, fix.u(0, 0)}, {cand.a2, fix.u(1, 0)}},
            {{cand.a1, fix.u(0, 1)}, {cand.a2, fix.u(1, 1)}}};
        const LocalVec basis_b[2] = {
            {{cand.b1, fix.v(0, 0)}, {cand.b2, fix.v(1, 0)}},
            {{cand.b1, fix.v(0, 1)}, {cand.b2, fix.v(1, 1)}}};
        auto symmetrized = [](const LocalVec& e0, const LocalVec& e1, double sign) {
            LocalVec out_vec;
            for (const auto& [l0, c0] : e0) {
                for (const auto& [l1, c1] : e1) {
                    out_vec[concat(l0, l1)] += c0 * c1 / std::sqrt(2.0);
                    out_vec[concat(l1, l0)] += sign * c0 * c1 / std::sqrt(2.0);
                }
            }
            return out_vec;
        };
        PureState::AmpMap amps;
        const cplx lambdas[2] = {lambda_plus, lambda_minus};
        for (int s = 0; s < 2; ++s) {
            const double sign = s == 0 ? 1.0 : -1.0;
            const LocalVec sa = symmetrized(basis_a[0], basis_a[1], sign);
            const LocalVec sb = symmetrized(basis_b[0], basis_b[1], sign);
            for (const auto& [la, ca] : sa) {
                for (const auto& [lb, cb] : sb) {
                    amps[BasisLabel{la, lb}] += lambdas[s] * ca * cb / 2.0;
                }
            }
        }
        const ModeLayout doubled{2 * psi.layout().alice_modes,
                                 2 * psi.layout().bob_modes};
        out.output = PureState(doubled, std::move(amps)).normalize();
        out.success = true;
        if (is_product(*out.output) || !is_locally_invariant(*out.output, rule)) {
            throw ConsistencyError("protocol B output failed its own invariants");
        }
        return out;
    }

    first_attempt->success = false;
    first_attempt->probability = 0.0;
    first_attempt->reason =
        "lambda_plus vanishes for every admissible subspace choice";
    return *first_attempt;
}

std::vector<QndOutcome> qnd_measure(const PureState& psi, Party party,
                                    const ChargeRule& rule) {
    std::map<int, PureState::AmpMap> by_charge;
    for (const auto& [label, amp] : psi.amps()) {
        by_charge[local_charge(label, party, rule)].emplace(label, amp);
    }
    std::vector<QndOutcome> out;
    for (auto& [charge, amps] : by_charge) {
        PureState component(psi.layout(), std::move(amps));
        out.push_back(
            {charge, component.norm_squared(), component.normalize()});
    }
    return out;
}

TruncatedKet make_coherent(cplx alpha, int cutoff, double loss_bound) {
    if (cutoff < 1) throw DomainError("cutoff must be >= 1");
    TruncatedKet ket;
    ket.amps.resize(cutoff + 1);
    cplx c = std::exp(cplx{-std::norm(alpha) / 2.0, 0.0});
    double kept = 0.0;
    for (int n = 0; n <= cutoff; ++n) {
        if (n > 0) c *= alpha / std::sqrt(static_cast<double>(n));
        ket.amps[n] = c;
        kept += std::norm(c);
    }
    ket.truncation_loss = std::max(0.0, 1.0 - kept);
    if (ket.truncation_loss > loss_bound) {
        throw CutoffError("coherent-state truncation loss " +
                          std::to_string(ket.truncation_loss) +
                          " exceeds the configured bound");
    }
    const double scale = std::sqrt(kept);
    for (auto& a : ket.amps) a /= scale;
    return ket;
}

TruncatedState make_coherent_pair(cplx alpha, int cutoff, double loss_bound) {
    const TruncatedKet ket = make_coherent(alpha, cutoff, loss_bound);
    PureState::AmpMap amps;
    for (int j = 0; j < static_cast<int>(ket.amps.size()); ++j) {
        for (int k = 0; k < static_cast<int>(ket.amps.size()); ++k) {
            const cplx a = ket.amps[j] * ket.amps[k];
            amps.emplace(BasisLabel{{j}, {k}}, a);
        }
    }
    return {PureState(ModeLayout{1, 1}, std::move(amps), true),
            ket.truncation_loss};
}

TruncatedState make_two_mode_squeezed(double gamma, int cutoff,
                                      double loss_bound) {
    if (cutoff < 1) throw DomainError("cutoff must be >= 1");
    if (gamma < 0.0 || gamma >= 1.0) {
        throw DomainError("squeezing parameter must lie in [0,1)");
    }
    const double loss = std::pow(gamma, 2.0 * (cutoff + 1));
    if (loss > loss_bound) {
        throw CutoffError("squeezed-state truncation loss " +
                          std::to_string(loss) +
                          " exceeds the configured bound");
    }
    PureState::AmpMap amps;
    const double prefactor = std::sqrt((1.0 - gamma * gamma) / (1.0 - loss));
    double g = 1.0;
    for (int n = 0; n <= cutoff; ++n) {
        if (n > 0) g *= gamma;
        amps.emplace(BasisLabel{{n}, {n}}, prefactor * g);
    }
    return {PureState(ModeLayout{1, 1}, std::move(amps), true), loss};
}

} // namespace ssrent
