#pragma once

// Finite metrized cochain complexes: exactness, torsion, the canonical
// section and the shift / direct-sum calculus.

#include "adtor/linalg.hpp"

#include <utility>
#include <vector>

namespace adtor {

/// A finite complex 0 -> V^0 -> V^1 -> ... -> V^n -> 0 of Hermitian spaces
/// with differentials d_j : V^j -> V^{j+1} satisfying d_{j+1} d_j = 0.
class FiniteComplex {
public:
    FiniteComplex(std::vector<HermitianSpace> spaces, std::vector<ComplexMatrix> differentials)
        : spaces_(std::move(spaces)), d_(std::move(differentials)) {
        require(!spaces_.empty(), "complex needs at least one space");
        require(d_.size() + 1 == spaces_.size(), "complex needs one differential per adjacent pair");
        for (size_t j = 0; j < d_.size(); ++j) {
            require(d_[j].cols() == spaces_[j].dim() && d_[j].rows() == spaces_[j + 1].dim(),
                    "differential " + std::to_string(j) + " has wrong shape");
        }
        for (size_t j = 0; j + 1 < d_.size(); ++j) {
            if (!d_[j].size() || !d_[j + 1].size()) continue;
            double scale = std::max(1.0, d_[j].cwiseAbs().sum() * d_[j + 1].cwiseAbs().sum());
            double defect = max_abs(d_[j + 1] * d_[j]);
            if (!(defect <= 1e-10 * scale))
                fail("d o d != 0 at degree " + std::to_string(j) + ", defect " + std::to_string(defect));
        }
    }

    Index length() const { return static_cast<Index>(spaces_.size()) - 1; }
    const HermitianSpace& space(Index j) const { return spaces_[static_cast<size_t>(j)]; }
    const ComplexMatrix& differential(Index j) const { return d_[static_cast<size_t>(j)]; }

    /// Differential expressed between the orthonormal frames of the two
    /// spaces, L_{j+1}^H d_j L_j^{-H}; its singular values are
    /// metric-intrinsic.
    ComplexMatrix differential_orthonormal(Index j) const {
        const auto& dj = d_[static_cast<size_t>(j)];
        const auto& src = spaces_[static_cast<size_t>(j)];
        if (src.dim() == 0 || dj.size() == 0)
            return spaces_[static_cast<size_t>(j) + 1].to_orthonormal(dj);
        ComplexMatrix x = src.chol().template triangularView<Eigen::Lower>().solve(dj.adjoint());
        return spaces_[static_cast<size_t>(j) + 1].to_orthonormal(x.adjoint());
    }

    Index rank_of_differential(Index j) const {
        ComplexMatrix m = differential_orthonormal(j);
        if (m.size() == 0) return 0;
        Eigen::JacobiSVD<ComplexMatrix> svd(m);
        double tol = zero_threshold(svd.singularValues().size() ? svd.singularValues()(0) : 0.0);
        Index r = 0;
        while (r < svd.singularValues().size() && svd.singularValues()(r) > tol) ++r;
        return r;
    }

private:
    std::vector<HermitianSpace> spaces_;
    std::vector<ComplexMatrix> d_;
};

/// True iff rank(d_{j-1}) + rank(d_j) = dim V^j for every j.
inline bool is_exact(const FiniteComplex& c) {
    const Index n = c.length();
    for (Index j = 0; j <= n; ++j) {
        Index rin = j > 0 ? c.rank_of_differential(j - 1) : 0;
        Index rout = j < n ? c.rank_of_differential(j) : 0;
        if (rin + rout != c.space(j).dim()) return false;
    }
    return true;
}

/// log of torsion(c) = sum_j (-1)^j (j/2) log det((d+d*)^2 | V^j), with
/// adjoints taken in each space's Gram form. Requires exactness. On an exact
/// complex each combined Laplacian block-diagonalizes along
/// V^j = Im(d_{j-1}) + Im(d_j^*), so the value equals the alternating
/// product of the differentials' nonzero singular values,
///   log T = sum_k (-1)^{k+1} sum_{sigma in sv+(d_k)} log sigma,
/// which is how it is evaluated: each matrix is thresholded at its own scale,
/// so strongly R-scaled metrics stay well conditioned.
inline double log_torsion(const FiniteComplex& c) {
    const Index n = c.length();
    std::vector<Index> rank(static_cast<size_t>(n), 0);
    double acc = 0.0;
    for (Index k = 0; k < n; ++k) {
        ComplexMatrix dk = c.differential_orthonormal(k);
        if (dk.size() == 0) continue;
        Eigen::JacobiSVD<ComplexMatrix> svd(dk);
        double tol = zero_threshold(svd.singularValues().size() ? svd.singularValues()(0) : 0.0);
        double logdet = 0.0;
        Index r = 0;
        while (r < svd.singularValues().size() && svd.singularValues()(r) > tol) {
            logdet += std::log(svd.singularValues()(r));
            ++r;
        }
        rank[static_cast<size_t>(k)] = r;
        acc += ((k % 2 == 0) ? -1.0 : 1.0) * logdet;
    }
    for (Index j = 0; j <= n; ++j) {
        Index rin = j > 0 ? rank[static_cast<size_t>(j) - 1] : 0;
        Index rout = j < n ? rank[static_cast<size_t>(j)] : 0;
        if (rin + rout != c.space(j).dim())
            fail("complex is not exact at degree " + std::to_string(j) + " (rank defect " +
                 std::to_string(c.space(j).dim() - rin - rout) + ")");
    }
    return acc;
}

inline double torsion(const FiniteComplex& c) { return std::exp(log_torsion(c)); }

/// Norm of the canonical section rho, built from deterministic lifts: the
/// chosen representatives of V^j / d V^{j-1} are the right singular vectors
/// of d_j above the rank threshold. Equals torsion(c) on exact complexes.
inline double canonical_section_norm(const FiniteComplex& c) {
    const Index n = c.length();
    // Orthonormal-frame differentials and their SVDs.
    std::vector<ComplexMatrix> lifts(static_cast<size_t>(n) + 1);   // s_{j,k} columns
    std::vector<ComplexMatrix> images(static_cast<size_t>(n) + 1);  // d s_{j-1,k} columns in V^j
    for (Index j = 0; j <= n; ++j) {
        Index dim = c.space(j).dim();
        lifts[static_cast<size_t>(j)] = ComplexMatrix::Zero(dim, 0);
        images[static_cast<size_t>(j)] = ComplexMatrix::Zero(dim, 0);
    }
    for (Index j = 0; j < n; ++j) {
        ComplexMatrix dj = c.differential_orthonormal(j);
        if (dj.size() == 0) continue;
        Eigen::JacobiSVD<ComplexMatrix> svd(dj, Eigen::ComputeThinU | Eigen::ComputeThinV);
        double tol = zero_threshold(svd.singularValues().size() ? svd.singularValues()(0) : 0.0);
        Index r = 0;
        while (r < svd.singularValues().size() && svd.singularValues()(r) > tol) ++r;
        lifts[static_cast<size_t>(j)] = svd.matrixV().leftCols(r);
        images[static_cast<size_t>(j) + 1] = dj * svd.matrixV().leftCols(r);
    }
    double acc = 0.0;
    for (Index j = 0; j <= n; ++j) {
        Index dim = c.space(j).dim();
        if (dim == 0) continue;
        const ComplexMatrix& im = images[static_cast<size_t>(j)];
        const ComplexMatrix& lf = lifts[static_cast<size_t>(j)];
        if (im.cols() + lf.cols() != dim)
            fail("canonical section needs an exact complex (degree " + std::to_string(j) + ")");
        ComplexMatrix basis(dim, dim);
        basis << im, lf;
        Eigen::PartialPivLU<ComplexMatrix> lu(basis);
        double logvol = 0.0;
        for (Index i = 0; i < dim; ++i) logvol += std::log(std::abs(lu.matrixLU()(i, i)));
        acc += ((j % 2 == 0) ? 1.0 : -1.0) * logvol;
    }
    return std::exp(acc);
}

/// n-th right shift: V^k[n] = V^{k-n}. torsion(shift(c,n)) = torsion(c)^{(-1)^n}.
inline FiniteComplex shift(const FiniteComplex& c, Index n) {
    std::vector<HermitianSpace> spaces;
    std::vector<ComplexMatrix> diffs;
    for (Index k = 0; k < n; ++k) {
        spaces.emplace_back(0);
        diffs.emplace_back(ComplexMatrix::Zero(k + 1 < n ? 0 : c.space(0).dim(), 0));
    }
    if (n > 0) diffs.back() = ComplexMatrix::Zero(c.space(0).dim(), 0);
    for (Index j = 0; j <= c.length(); ++j) spaces.push_back(c.space(j));
    for (Index j = 0; j < c.length(); ++j) diffs.push_back(c.differential(j));
    return FiniteComplex(std::move(spaces), std::move(diffs));
}

/// Blockwise direct sum; shorter complex is padded with zero spaces.
inline FiniteComplex direct_sum(const FiniteComplex& c1, const FiniteComplex& c2) {
    const Index n = std::max(c1.length(), c2.length());
    auto space_at = [n](const FiniteComplex& c, Index j) {
        return j <= c.length() ? c.space(j) : HermitianSpace(0);
    };
    auto diff_at = [](const FiniteComplex& c, Index j) {
        if (j < c.length()) return c.differential(j);
        Index rows = j + 1 <= c.length() ? c.space(j + 1).dim() : 0;
        Index cols = j <= c.length() ? c.space(j).dim() : 0;
        return ComplexMatrix(ComplexMatrix::Zero(rows, cols));
    };
    std::vector<HermitianSpace> spaces;
    std::vector<ComplexMatrix> diffs;
    for (Index j = 0; j <= n; ++j)
        spaces.emplace_back(block_diag(space_at(c1, j).gram(), space_at(c2, j).gram()));
    for (Index j = 0; j < n; ++j) diffs.push_back(block_diag(diff_at(c1, j), diff_at(c2, j)));
    return FiniteComplex(std::move(spaces), std::move(diffs));
}

}  // namespace adtor
