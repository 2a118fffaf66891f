#include "ssrent/fock.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace ssrent {

namespace {

void check_label(const ModeLayout& layout, const BasisLabel& label) {
    if (static_cast<int>(label.alice.size()) != layout.alice_modes ||
        static_cast<int>(label.bob.size()) != layout.bob_modes) {
        throw LayoutError("basis label length does not match mode layout");
    }
    for (int n : label.alice) {
        if (n < 0) throw LayoutError("negative occupation number");
    }
    for (int n : label.bob) {
        if (n < 0) throw LayoutError("negative occupation number");
    }
}

Occ concat(const Occ& a, const Occ& b) {
    Occ out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

} // namespace

PureState::PureState(ModeLayout layout, AmpMap amps, bool normalized)
    : layout_(layout), amps_(std::move(amps)), normalized_(normalized) {
    if (layout_.alice_modes < 1 || layout_.bob_modes < 1) {
        throw LayoutError("mode counts must be >= 1");
    }
    for (auto it = amps_.begin(); it != amps_.end();) {
        check_label(layout_, it->first);
        if (std::abs(it->second) <= kDropTol) {
            it = amps_.erase(it);
        } else {
            ++it;
        }
    }
    if (normalized_ && std::abs(norm_squared() - 1.0) > kNormTol) {
        throw ConsistencyError("state flagged normalized has |psi|^2 != 1");
    }
}

cplx PureState::amplitude(const BasisLabel& label) const {
    auto it = amps_.find(label);
    return it == amps_.end() ? cplx{0.0, 0.0} : it->second;
}

double PureState::norm_squared() const {
    double s = 0.0;
    for (const auto& [label, amp] : amps_) s += std::norm(amp);
    return s;
}

double PureState::norm() const { return std::sqrt(norm_squared()); }

PureState PureState::normalize() const {
    const double n = norm();
    if (n <= kDropTol) throw EmptyStateError("cannot normalize the zero state");
    AmpMap out;
    for (const auto& [label, amp] : amps_) out.emplace(label, amp / n);
    return PureState(layout_, std::move(out), true);
}

PureState PureState::scaled(cplx factor) const {
    AmpMap out;
    for (const auto& [label, amp] : amps_) out.emplace(label, amp * factor);
    return PureState(layout_, std::move(out), false);
}

PureState make_ket(const ModeLayout& layout,
                   const std::vector<std::pair<cplx, BasisLabel>>& terms) {
    PureState::AmpMap amps;
    for (const auto& [amp, label] : terms) {
        check_label(layout, label);
        amps[label] += amp;
    }
    PureState out(layout, std::move(amps));
    if (out.is_zero()) {
        throw EmptyStateError("all amplitudes vanish");
    }
    return out;
}

PureState tensor(const PureState& psi, const PureState& phi) {
    ModeLayout layout{psi.layout().alice_modes + phi.layout().alice_modes,
                      psi.layout().bob_modes + phi.layout().bob_modes};
    PureState::AmpMap amps;
    for (const auto& [la, aa] : psi.amps()) {
        for (const auto& [lb, ab] : phi.amps()) {
            amps[BasisLabel{concat(la.alice, lb.alice), concat(la.bob, lb.bob)}] +=
                aa * ab;
        }
    }
    return PureState(layout, std::move(amps),
                     psi.normalized() && phi.normalized());
}

PureState tensor_power(const PureState& psi, int n) {
    if (n < 1) throw DomainError("tensor power requires n >= 1");
    PureState out = psi;
    for (int i = 1; i < n; ++i) out = tensor(out, psi);
    return out;
}

std::vector<Occ> alice_sublabels(const PureState& psi) {
    std::set<Occ> s;
    for (const auto& [label, amp] : psi.amps()) s.insert(label.alice);
    return {s.begin(), s.end()};
}

std::vector<Occ> bob_sublabels(const PureState& psi) {
    std::set<Occ> s;
    for (const auto& [label, amp] : psi.amps()) s.insert(label.bob);
    return {s.begin(), s.end()};
}

std::vector<double> schmidt_coefficients(const PureState& psi) {
    if (psi.is_zero()) throw EmptyStateError("zero state has no Schmidt form");
    const auto rows = alice_sublabels(psi);
    const auto cols = bob_sublabels(psi);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(
        static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    for (const auto& [label, amp] : psi.amps()) {
        const auto r = std::lower_bound(rows.begin(), rows.end(), label.alice) -
                       rows.begin();
        const auto c = std::lower_bound(cols.begin(), cols.end(), label.bob) -
                       cols.begin();
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = amp;
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    const auto& sv = svd.singularValues();
    return {sv.data(), sv.data() + sv.size()};
}

bool is_product(const PureState& psi, double tol) {
    const auto sv = schmidt_coefficients(psi);
    int above = 0;
    for (double s : sv) {
        if (s > tol * sv.front()) ++above;
    }
    return above == 1;
}

std::pair<PureState, double> project(
    const PureState& psi, const std::function<bool(const BasisLabel&)>& keep) {
    PureState::AmpMap amps;
    double weight = 0.0;
    for (const auto& [label, amp] : psi.amps()) {
        if (keep(label)) {
            amps.emplace(label, amp);
            weight += std::norm(amp);
        }
    }
    return {PureState(psi.layout(), std::move(amps)), weight};
}

cplx inner(const PureState& a, const PureState& b) {
    if (!(a.layout() == b.layout())) {
        throw LayoutError("inner product requires matching layouts");
    }
    cplx s{0.0, 0.0};
    for (const auto& [label, amp] : a.amps()) {
        s += std::conj(amp) * b.amplitude(label);
    }
    return s;
}

double fidelity(const PureState& a, const PureState& b) {
    const double na = a.norm_squared(), nb = b.norm_squared();
    if (na <= kDropTol || nb <= kDropTol) {
        throw EmptyStateError("fidelity with the zero state");
    }
    return std::norm(inner(a, b)) / (na * nb);
}

PureState add(const PureState& a, const PureState& b) {
    if (!(a.layout() == b.layout())) {
        throw LayoutError("sum requires matching layouts");
    }
    PureState::AmpMap amps = a.amps();
    for (const auto& [label, amp] : b.amps()) amps[label] += amp;
    return PureState(a.layout(), std::move(amps));
}

} // namespace ssrent
