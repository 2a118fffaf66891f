#include "ssrent/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <Eigen/Dense>

namespace ssrent {

DensityOperator partial_transpose(const DensityOperator& rho, Party party) {
    DensityOperator::EntryMap out;
    for (const auto& [key, value] : rho.entries()) {
        const auto& [row, col] = key;
        BasisLabel r = row, c = col;
        if (party == Party::A) {
            std::swap(r.alice, c.alice);
        } else {
            std::swap(r.bob, c.bob);
        }
        out.emplace(std::make_pair(r, c), value);
    }
    return DensityOperator(rho.layout(), std::move(out));
}

double min_partial_transpose_eigenvalue(const DensityOperator& rho, Party party) {
    const auto ev = support_eigenvalues(partial_transpose(rho, party));
    if (ev.empty()) throw EmptyStateError("operator has empty support");
    return ev.front();
}

bool is_ppt(const DensityOperator& rho, double tol) {
    return min_partial_transpose_eigenvalue(rho) >= -tol;
}

namespace {

// Minimum eigenvalue of the A-partial-transpose of the compression of rho
// onto span{a1,a2} x span{b1,b2}.
double compressed_pt_min_eig(const DensityOperator& rho, const Occ& a1,
                             const Occ& a2, const Occ& b1, const Occ& b2) {
    const Occ* as[2] = {&a1, &a2};
    const Occ* bs[2] = {&b1, &b2};
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            for (int k = 0; k < 2; ++k) {
                for (int l = 0; l < 2; ++l) {
                    // partial transpose on A: swap the two A indices
                    m(2 * i + j, 2 * k + l) =
                        rho.entry(BasisLabel{*as[k], *bs[j]}, BasisLabel{*as[i], *bs[l]});
                }
            }
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(m);
    return solver.eigenvalues().minCoeff();
}

} // namespace

bool twirled_one_distillable(const DensityOperator& rho, const ChargeRule& rule) {
    // group entries into sector blocks; any cross-sector entry is a misuse
    std::map<SectorKey, DensityOperator::EntryMap> blocks;
    for (const auto& [key, value] : rho.entries()) {
        const SectorKey s = sector_of(key.first, rule);
        if (sector_of(key.second, rule) != s) {
            throw DomainError("operator is not block diagonal across sectors");
        }
        blocks[s].emplace(key, value);
    }

    for (const auto& [sector, entries] : blocks) {
        const DensityOperator block(rho.layout(), entries);
        const double weight = block.trace();
        if (weight <= kDropTol) continue;

        std::set<Occ> aset, bset;
        for (const auto& label : block.support_labels()) {
            aset.insert(label.alice);
            bset.insert(label.bob);
        }
        const std::vector<Occ> alabels(aset.begin(), aset.end());
        const std::vector<Occ> blabels(bset.begin(), bset.end());

        bool npt = false;
        for (std::size_t i = 0; i < alabels.size() && !npt; ++i) {
            for (std::size_t j = i + 1; j < alabels.size() && !npt; ++j) {
                for (std::size_t k = 0; k < blabels.size() && !npt; ++k) {
                    for (std::size_t l = k + 1; l < blabels.size() && !npt; ++l) {
                        npt = compressed_pt_min_eig(block, alabels[i], alabels[j],
                                                    blabels[k], blabels[l]) <
                              -kNormTol * weight;
                    }
                }
            }
        }

        // redundant route: a pure block is distillable iff non-product
        const auto ev = support_eigenvalues(block);
        const double top = ev.back();
        if (std::abs(top - weight) <= kNormTol * weight) {
            const auto labels = block.support_labels();
            const auto dim = static_cast<Eigen::Index>(labels.size());
            Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
            for (Eigen::Index r = 0; r < dim; ++r) {
                for (Eigen::Index c = 0; c < dim; ++c) {
                    m(r, c) = block.entry(labels[r], labels[c]);
                }
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
            const Eigen::VectorXcd vec = solver.eigenvectors().col(dim - 1);
            PureState::AmpMap amps;
            for (Eigen::Index r = 0; r < dim; ++r) {
                amps.emplace(labels[r], vec(r));
            }
            const PureState block_state(rho.layout(), std::move(amps));
            if (!block_state.is_zero() && (!is_product(block_state)) != npt) {
                throw ConsistencyError(
                    "PPT compression scan disagrees with pure-block Schmidt test");
            }
        }

        if (npt) return true;
    }
    return false;
}

} // namespace ssrent
