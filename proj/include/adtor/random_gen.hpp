#pragma once

// Seeded generators for test and scenario data: Gaussian complex matrices,
// Haar-ish unitaries, limiting-subspace pairs sharing a controlled number of
// directions, random exact complexes and random projections. Everything is
// driven by a single 64-bit seed for reproducible suites.

#include "adtor/finite_complex.hpp"
#include "adtor/scattering.hpp"

#include <random>

namespace adtor {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::mt19937_64& engine() { return engine_; }

    double gaussian() { return normal_(engine_); }
    double uniform() { return uniform_(engine_); }
    Index uniform_index(Index lo, Index hi) {  // inclusive bounds
        std::uniform_int_distribution<long> d(lo, hi);
        return static_cast<Index>(d(engine_));
    }

    ComplexMatrix gaussian_matrix(Index rows, Index cols) {
        ComplexMatrix m(rows, cols);
        for (Index i = 0; i < rows; ++i)
            for (Index j = 0; j < cols; ++j) m(i, j) = Complex(gaussian(), gaussian());
        return m;
    }

    ComplexMatrix unitary(Index n) {
        if (n == 0) return ComplexMatrix::Zero(0, 0);
        Eigen::HouseholderQR<ComplexMatrix> qr(gaussian_matrix(n, n));
        ComplexMatrix q = qr.householderQ();
        ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
        for (Index i = 0; i < n; ++i) {
            Complex d = r(i, i);
            q.col(i) *= (std::abs(d) > 0) ? d / std::abs(d) : Complex(1.0, 0.0);
        }
        return q;
    }

    /// Orthonormal basis of a uniformly random k-dimensional subspace of C^n.
    ComplexMatrix subspace(Index n, Index k) {
        require(k >= 0 && k <= n, "subspace: bad dimension");
        if (k == 0) return ComplexMatrix::Zero(n, 0);
        return ComplexMatrix(unitary(n).leftCols(k));
    }

    /// Random SPD Gram matrix with condition number around `spread`.
    ComplexMatrix gram(Index n, double spread = 4.0) {
        if (n == 0) return ComplexMatrix::Zero(0, 0);
        ComplexMatrix q = unitary(n);
        Eigen::VectorXd d(n);
        for (Index i = 0; i < n; ++i) d(i) = std::exp(uniform() * std::log(spread));
        return q * d.asDiagonal() * q.adjoint();
    }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// A random limiting subspace: an independent random L_abs^p per degree.
inline LimitingSubspace random_limiting_subspace(Rng& rng, const YModel& y) {
    std::vector<ComplexMatrix> abs;
    for (Index p = 0; p < y.top_degree; ++p) {
        Index hp = y.h_at(p);
        abs.push_back(rng.subspace(hp, rng.uniform_index(0, hp)));
    }
    return LimitingSubspace(y, std::move(abs));
}

/// A pair of limiting subspaces whose absolute parts share a random number of
/// directions per degree, so the intersection dimensions exercised by the
/// chi-identities and the L-sequence are nontrivial.
inline std::pair<LimitingSubspace, LimitingSubspace> random_limiting_pair(Rng& rng,
                                                                          const YModel& y) {
    std::vector<ComplexMatrix> abs1, abs2;
    for (Index p = 0; p < y.top_degree; ++p) {
        const Index hp = y.h_at(p);
        ComplexMatrix pool = rng.unitary(hp);
        Index a1 = rng.uniform_index(0, hp);
        Index a2 = rng.uniform_index(0, hp);
        Index shared = rng.uniform_index(0, std::min(a1, a2));
        auto build = [&](Index total) {
            ComplexMatrix extra = rng.subspace(hp, hp);  // fresh random frame
            ComplexMatrix raw(hp, total);
            raw.leftCols(shared) = pool.leftCols(shared);
            Index added = shared, col = 0;
            while (added < total && col < hp) {
                raw.col(added) = extra.col(col);
                ++added;
                ++col;
            }
            return orthonormal_span(raw);
        };
        ComplexMatrix b1 = build(a1), b2 = build(a2);
        // span may collapse if a fresh column fell inside the shared block
        while (b1.cols() < a1) b1 = orthonormal_span((ComplexMatrix(hp, b1.cols() + 1) << b1, rng.gaussian_matrix(hp, 1)).finished());
        while (b2.cols() < a2) b2 = orthonormal_span((ComplexMatrix(hp, b2.cols() + 1) << b2, rng.gaussian_matrix(hp, 1)).finished());
        abs1.push_back(b1);
        abs2.push_back(b2);
    }
    return {LimitingSubspace(y, std::move(abs1)), LimitingSubspace(y, std::move(abs2))};
}

/// Random exact complex: dimensions n_j = r_{j-1} + r_j for random ranks r_j,
/// differentials built through random unitary frames, random SPD metrics.
inline FiniteComplex random_exact_complex(Rng& rng, Index length, Index max_rank = 3) {
    require(length >= 1, "random_exact_complex: length >= 1");
    std::vector<Index> ranks(static_cast<size_t>(length));
    for (auto& r : ranks) r = rng.uniform_index(0, max_rank);
    auto rank_at = [&](Index j) {
        return (j >= 0 && j < length) ? ranks[static_cast<size_t>(j)] : Index(0);
    };
    std::vector<Index> dims(static_cast<size_t>(length) + 1);
    for (Index j = 0; j <= length; ++j) dims[static_cast<size_t>(j)] = rank_at(j - 1) + rank_at(j);

    std::vector<ComplexMatrix> frames;
    for (Index j = 0; j <= length; ++j) frames.push_back(rng.unitary(dims[static_cast<size_t>(j)]));

    std::vector<HermitianSpace> spaces;
    std::vector<ComplexMatrix> diffs;
    for (Index j = 0; j <= length; ++j) spaces.emplace_back(rng.gram(dims[static_cast<size_t>(j)]));
    for (Index j = 0; j < length; ++j) {
        const Index r = rank_at(j);
        ComplexMatrix d = ComplexMatrix::Zero(dims[static_cast<size_t>(j) + 1], dims[static_cast<size_t>(j)]);
        if (r > 0) {
            ComplexMatrix mid = rng.gaussian_matrix(r, r);
            // keep it comfortably invertible
            mid += 3.0 * ComplexMatrix::Identity(r, r);
            d = frames[static_cast<size_t>(j) + 1].leftCols(r) * mid *
                frames[static_cast<size_t>(j)].rightCols(r).adjoint();
        }
        diffs.push_back(d);
    }
    return FiniteComplex(std::move(spaces), std::move(diffs));
}

}  // namespace adtor
