#include "ssrent/density.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <Eigen/Dense>

namespace ssrent {

DensityOperator::DensityOperator(ModeLayout layout, EntryMap entries)
    : layout_(layout), entries_(std::move(entries)) {
    if (layout_.alice_modes < 1 || layout_.bob_modes < 1) {
        throw LayoutError("mode counts must be >= 1");
    }
    for (auto it = entries_.begin(); it != entries_.end();) {
        const auto& [row, col] = it->first;
        if (static_cast<int>(row.alice.size()) != layout_.alice_modes ||
            static_cast<int>(row.bob.size()) != layout_.bob_modes ||
            static_cast<int>(col.alice.size()) != layout_.alice_modes ||
            static_cast<int>(col.bob.size()) != layout_.bob_modes) {
            throw LayoutError("entry label length does not match mode layout");
        }
        if (std::abs(it->second) <= kDropTol) {
            it = entries_.erase(it);
        } else {
            ++it;
        }
    }
}

cplx DensityOperator::entry(const BasisLabel& row, const BasisLabel& col) const {
    auto it = entries_.find({row, col});
    return it == entries_.end() ? cplx{0.0, 0.0} : it->second;
}

double DensityOperator::trace() const {
    double t = 0.0;
    for (const auto& [key, value] : entries_) {
        if (key.first == key.second) t += value.real();
    }
    return t;
}

bool DensityOperator::is_hermitian(double tol) const {
    for (const auto& [key, value] : entries_) {
        if (std::abs(value - std::conj(entry(key.second, key.first))) > tol) {
            return false;
        }
    }
    return true;
}

std::vector<BasisLabel> DensityOperator::support_labels() const {
    std::set<BasisLabel> labels;
    for (const auto& [key, value] : entries_) {
        labels.insert(key.first);
        labels.insert(key.second);
    }
    return {labels.begin(), labels.end()};
}

std::vector<double> support_eigenvalues(const DensityOperator& rho) {
    const auto labels = rho.support_labels();
    const auto dim = static_cast<Eigen::Index>(labels.size());
    if (dim == 0) return {};
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            m(i, j) = rho.entry(labels[i], labels[j]);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
    const auto& ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

} // namespace ssrent
