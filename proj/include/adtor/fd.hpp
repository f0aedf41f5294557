#pragma once

// Finite-difference eigenvalue oracle for the 1-D Laplacian on an interval
// (Dirichlet / Neumann) and on a circle. Second-order stencils on two grids
// combined by Richardson extrapolation; used to validate which boundary
// condition feeds which arithmetic progression.

#include "adtor/linalg.hpp"

namespace adtor {

enum class Laplace1D { Dirichlet, Neumann, Periodic };

namespace detail {
inline std::vector<double> fd_eigs_single(Laplace1D kind, double length, Index n, Index count) {
    Eigen::MatrixXd m;
    double h = 0.0;
    switch (kind) {
        case Laplace1D::Dirichlet: {
            h = length / static_cast<double>(n + 1);
            m = Eigen::MatrixXd::Zero(n, n);
            for (Index i = 0; i < n; ++i) {
                m(i, i) = 2.0;
                if (i > 0) m(i, i - 1) = -1.0;
                if (i + 1 < n) m(i, i + 1) = -1.0;
            }
            break;
        }
        case Laplace1D::Neumann: {
            // nodes at cell centers, reflecting ends
            h = length / static_cast<double>(n);
            m = Eigen::MatrixXd::Zero(n, n);
            for (Index i = 0; i < n; ++i) {
                m(i, i) = 2.0;
                if (i > 0) m(i, i - 1) = -1.0;
                if (i + 1 < n) m(i, i + 1) = -1.0;
            }
            m(0, 0) = 1.0;
            m(n - 1, n - 1) = 1.0;
            break;
        }
        case Laplace1D::Periodic: {
            h = length / static_cast<double>(n);
            m = Eigen::MatrixXd::Zero(n, n);
            for (Index i = 0; i < n; ++i) {
                m(i, i) = 2.0;
                m(i, (i + 1) % n) = -1.0;
                m(i, (i + n - 1) % n) = -1.0;
            }
            break;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    std::vector<double> out;
    for (Index i = 0; i < es.eigenvalues().size() && static_cast<Index>(out.size()) < count + 2; ++i) {
        double ev = es.eigenvalues()(i) / (h * h);
        if (ev > 1e-9) out.push_back(ev);
    }
    out.resize(static_cast<size_t>(std::min<Index>(count, static_cast<Index>(out.size()))));
    return out;
}
}  // namespace detail

/// First `count` positive eigenvalues of -d^2/dx^2 with the given boundary
/// condition, Richardson-extrapolated from n and 2n point grids. With
/// n = 200 the first 20 modes carry about 1e-4 relative error.
inline std::vector<double> fd_eigenvalues(Laplace1D kind, double length, Index count,
                                          Index n = 200) {
    std::vector<double> coarse = detail::fd_eigs_single(kind, length, n, count);
    std::vector<double> fine = detail::fd_eigs_single(kind, length, 2 * n, count);
    std::vector<double> out(coarse.size());
    for (size_t i = 0; i < coarse.size() && i < fine.size(); ++i)
        out[i] = (4.0 * fine[i] - coarse[i]) / 3.0;
    return out;
}

}  // namespace adtor
