#pragma once

// Eigenvalue sets Lambda_R of det(e^{4 i lambda R} C(lambda) - 1) = 0:
// eigenphase branch tracking over a window, closed-form and safeguarded-Newton
// root solving, near-root refinement and the frozen-vs-true weighted-sum
// comparison.

#include "adtor/scattering.hpp"

#include <functional>

namespace adtor {

/// A matrix family lambda -> C(lambda), unitary up to the modeling error of
/// the truncation. Branch phases are the phases of the polar-unitary part.
struct UnitaryFamily {
    Index dim = 0;
    Index poly_degree = 0;
    double validity_radius = 1.0;
    std::function<ComplexMatrix(double)> at;
};

inline UnitaryFamily family_full(const ScatteringFamily& f) {
    return {f.ymodel().total_dim(), f.degree(), f.validity_radius(),
            [f](double lam) { return f.full_at(lam); }};
}

inline UnitaryFamily family_block(const ScatteringFamily& f, Index p) {
    return {f.ymodel().block_dim(p), f.degree(), f.validity_radius(),
            [f, p](double lam) { return f.block_at(p, lam); }};
}

/// Restriction to H^*(Y,F), the function part (no du blocks).
inline UnitaryFamily family_h_part(const ScatteringFamily& f) {
    const YModel& y = f.ymodel();
    Index dim = 0;
    for (Index p = 0; p < y.top_degree; ++p) dim += y.h_at(p);
    return {dim, f.degree(), f.validity_radius(), [f, dim](double lam) {
                const YModel& ym = f.ymodel();
                ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
                Index off = 0;
                for (Index p = 0; p < ym.top_degree; ++p) {
                    Index hp = ym.h_at(p);
                    if (hp == 0) continue;
                    ComplexMatrix acc = f.coefficient(0).u(p);
                    double pw = 1.0;
                    for (Index k = 1; k <= f.degree(); ++k) {
                        pw *= lam;
                        acc += pw * f.coefficient(k).u(p);
                    }
                    m.block(off, off, hp, hp) = acc;
                    off += hp;
                }
                return m;
            }};
}

inline UnitaryFamily family_constant(const ComplexMatrix& c, double radius = 1.0) {
    return {c.rows(), 0, radius, [c](double) { return c; }};
}

namespace detail {
/// Schur-based spectral data of a (near-)normal matrix: principal phases and
/// orthonormal eigenvectors. unit_defect records how far the eigenvalues are
/// from the unit circle.
struct UnitarySpectrum {
    std::vector<double> phases;  // principal values, per column of q
    ComplexMatrix q;             // orthonormal eigenvector columns
    double unit_defect = 0.0;
};

inline UnitarySpectrum unitary_spectrum(const ComplexMatrix& c) {
    UnitarySpectrum out;
    if (c.rows() == 0) return out;
    Eigen::ComplexSchur<ComplexMatrix> schur(c);
    out.q = schur.matrixU();
    out.phases.resize(static_cast<size_t>(c.rows()));
    for (Index i = 0; i < c.rows(); ++i) {
        Complex mu = schur.matrixT()(i, i);
        out.phases[static_cast<size_t>(i)] = std::arg(mu);
        out.unit_defect = std::max(out.unit_defect, std::abs(std::abs(mu) - 1.0));
    }
    return out;
}

inline double wrap_to_pi(double x) {
    double y = std::remainder(x, 2.0 * M_PI);
    if (y <= -M_PI) y = M_PI;
    return y;
}
}  // namespace detail

/// Continuous eigenphase branches of a family over a window, with least
/// squares polynomial fits used for bracketing and derivatives; the exact
/// phases are always re-evaluated from the matrix when precision matters.
class PhaseBranches {
public:
    /// Grid values theta_j(lambda_i); branch j is row j of values.
    std::vector<double> grid;
    std::vector<std::vector<double>> values;    // [branch][grid point]
    std::vector<Eigen::VectorXd> fit;           // polynomial coefficients, lowest degree first
    double window_lo = 0.0, window_hi = 0.0;
    double max_residual = 0.0;                  // worst |.|mu| - 1| over the grid
    UnitaryFamily family;

    Index count() const { return static_cast<Index>(values.size()); }

    double fit_at(Index j, double lam) const {
        const Eigen::VectorXd& c = fit[static_cast<size_t>(j)];
        double t = scaled(lam), acc = 0.0;
        for (Index k = c.size() - 1; k >= 0; --k) acc = acc * t + c(k);
        return acc;
    }
    double fit_slope(Index j, double lam) const {
        const Eigen::VectorXd& c = fit[static_cast<size_t>(j)];
        double t = scaled(lam), acc = 0.0;
        for (Index k = c.size() - 1; k >= 1; --k) acc = acc * t + c(k) * static_cast<double>(k);
        return acc * 2.0 / (window_hi - window_lo);
    }

    /// Continuous lift of the exact eigenphase of branch j at lam, anchored
    /// to the fitted branch.
    double exact_at(Index j, double lam) const {
        double guess = fit_at(j, lam);
        detail::UnitarySpectrum sp = detail::unitary_spectrum(family.at(lam));
        double best = std::numeric_limits<double>::infinity(), chosen = guess;
        for (double p : sp.phases) {
            double d = std::abs(detail::wrap_to_pi(p - guess));
            if (d < best) {
                best = d;
                chosen = guess + detail::wrap_to_pi(p - guess);
            }
        }
        return chosen;
    }

private:
    double scaled(double lam) const {
        return (2.0 * lam - window_lo - window_hi) / (window_hi - window_lo);
    }
};

/// Track the eigenphase branches of a family across [window.first,
/// window.second]. Branches are matched between adjacent grid points by
/// nearest phase; a jump >= pi/4 aborts with a request for a finer grid.
inline PhaseBranches phase_branches(const UnitaryFamily& f, std::pair<double, double> window,
                                    double grid_step = 0.0) {
    require(window.first < window.second, "phase_branches: empty window");
    if (grid_step <= 0.0)
        grid_step = (window.second - window.first) /
                    (64.0 * static_cast<double>(f.poly_degree + 1));
    const Index npts =
        std::max<Index>(2, static_cast<Index>(std::ceil((window.second - window.first) / grid_step)) + 1);

    PhaseBranches out;
    out.family = f;
    out.window_lo = window.first;
    out.window_hi = window.second;
    out.grid.resize(static_cast<size_t>(npts));
    out.values.assign(static_cast<size_t>(f.dim), std::vector<double>(static_cast<size_t>(npts)));

    std::vector<double> prev;
    for (Index i = 0; i < npts; ++i) {
        double lam = window.first + (window.second - window.first) * static_cast<double>(i) /
                                        static_cast<double>(npts - 1);
        out.grid[static_cast<size_t>(i)] = lam;
        detail::UnitarySpectrum sp = detail::unitary_spectrum(f.at(lam));
        out.max_residual = std::max(out.max_residual, sp.unit_defect);
        std::vector<double> cur(static_cast<size_t>(f.dim));
        if (i == 0) {
            std::sort(sp.phases.begin(), sp.phases.end());
            cur = sp.phases;
        } else {
            // nearest-phase matching against the previous column
            std::vector<bool> used(sp.phases.size(), false);
            for (Index j = 0; j < f.dim; ++j) {
                double target = prev[static_cast<size_t>(j)];
                double best = std::numeric_limits<double>::infinity();
                size_t pick = 0;
                for (size_t k = 0; k < sp.phases.size(); ++k) {
                    if (used[k]) continue;
                    double d = std::abs(detail::wrap_to_pi(sp.phases[k] - target));
                    if (d < best) {
                        best = d;
                        pick = k;
                    }
                }
                used[pick] = true;
                if (best >= M_PI / 4.0)
                    fail("phase branch jump " + std::to_string(best) +
                         " >= pi/4 between grid points; use a finer grid");
                cur[static_cast<size_t>(j)] = target + detail::wrap_to_pi(sp.phases[pick] - target);
            }
        }
        for (Index j = 0; j < f.dim; ++j) out.values[static_cast<size_t>(j)][static_cast<size_t>(i)] = cur[static_cast<size_t>(j)];
        prev = cur;
    }

    // least squares polynomial fit per branch on the scaled variable
    const Index fit_deg = std::min<Index>({f.poly_degree + 2, npts - 1, 8});
    Eigen::MatrixXd vand(npts, fit_deg + 1);
    for (Index i = 0; i < npts; ++i) {
        double t = (2.0 * out.grid[static_cast<size_t>(i)] - window.first - window.second) /
                   (window.second - window.first);
        double pw = 1.0;
        for (Index k = 0; k <= fit_deg; ++k) {
            vand(i, k) = pw;
            pw *= t;
        }
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(vand);
    for (Index j = 0; j < f.dim; ++j) {
        Eigen::VectorXd rhs(npts);
        for (Index i = 0; i < npts; ++i) rhs(i) = out.values[static_cast<size_t>(j)][static_cast<size_t>(i)];
        out.fit.push_back(qr.solve(rhs));
    }
    return out;
}

enum class SpectrumMode { Full, Boundary };  // phase factor 4R vs 2R

struct LambdaRoot {
    double lambda = 0.0;
    Index multiplicity = 1;
    Index branch = 0;
    double residual = 0.0;  // |e^{i(cR lambda + theta(lambda))} - 1|
};

struct LambdaSet {
    double r = 0.0;
    std::pair<double, double> window{0.0, 0.0};
    SpectrumMode mode = SpectrumMode::Full;
    std::vector<LambdaRoot> roots;  // sorted by lambda

    std::vector<double> lambdas() const {
        std::vector<double> out;
        for (const auto& rt : roots)
            for (Index m = 0; m < rt.multiplicity; ++m) out.push_back(rt.lambda);
        return out;
    }
};

namespace detail {
inline void merge_root(std::vector<LambdaRoot>& roots, LambdaRoot rt) {
    for (auto& ex : roots) {
        if (std::abs(ex.lambda - rt.lambda) <= 1e-12 * std::max(1.0, std::abs(rt.lambda))) {
            ex.multiplicity += rt.multiplicity;
            ex.residual = std::max(ex.residual, rt.residual);
            return;
        }
    }
    roots.push_back(rt);
}
}  // namespace detail

/// All roots of (cR lambda + theta_j(lambda)) in 2 pi Z inside the window,
/// cR = 4R (full) or 2R (boundary). Constant families take the closed-form
/// path (2 pi k - theta_j)/cR with no iteration; polynomial families use
/// bracketing plus safeguarded Newton on the monotone phase function, with
/// exact eigenphases re-evaluated at every iterate. Roots at lambda = 0 are
/// excluded.
inline LambdaSet lambda_roots(const UnitaryFamily& f, double r, std::pair<double, double> window,
                              SpectrumMode mode = SpectrumMode::Full, double grid_step = 0.0) {
    require(r > 0.0, "lambda_roots: R must be positive");
    const double factor = (mode == SpectrumMode::Full) ? 4.0 * r : 2.0 * r;
    LambdaSet out;
    out.r = r;
    out.window = window;
    out.mode = mode;

    if (f.dim == 0) return out;

    if (f.poly_degree == 0) {
        // constant family: exact closed form
        detail::UnitarySpectrum sp = detail::unitary_spectrum(f.at(0.0));
        for (Index j = 0; j < f.dim; ++j) {
            double theta = sp.phases[static_cast<size_t>(j)];
            long klo = static_cast<long>(std::ceil((factor * window.first + theta) / (2.0 * M_PI) - 1e-12));
            long khi = static_cast<long>(std::floor((factor * window.second + theta) / (2.0 * M_PI) + 1e-12));
            for (long k = klo; k <= khi; ++k) {
                double lam = (2.0 * M_PI * static_cast<double>(k) - theta) / factor;
                if (lam < window.first - 1e-15 || lam > window.second + 1e-15) continue;
                if (std::abs(lam) < 1e-12) continue;
                detail::merge_root(out.roots,
                                   {lam, 1, j, std::abs(std::exp(Complex(0.0, factor * lam + theta)) - 1.0)});
            }
        }
    } else {
        PhaseBranches pb = phase_branches(f, window, grid_step);
        for (Index j = 0; j < pb.count(); ++j) {
            auto g_exact = [&](double lam) { return factor * lam + pb.exact_at(j, lam); };
            auto g_slope = [&](double lam) { return factor + pb.fit_slope(j, lam); };
            require(g_slope(window.first) > 0.0 && g_slope(window.second) > 0.0,
                    "lambda_roots: phase function is not monotone; R too small");
            double glo = g_exact(window.first), ghi = g_exact(window.second);
            long klo = static_cast<long>(std::ceil(glo / (2.0 * M_PI) - 1e-12));
            long khi = static_cast<long>(std::floor(ghi / (2.0 * M_PI) + 1e-12));
            for (long k = klo; k <= khi; ++k) {
                const double target = 2.0 * M_PI * static_cast<double>(k);
                double a = window.first, b = window.second;
                double x = (target - pb.fit_at(j, 0.5 * (a + b))) / factor;  // first guess
                x = std::clamp(x, a, b);
                bool converged = false;
                for (int it = 0; it < 80; ++it) {
                    double gx = g_exact(x) - target;
                    if (std::abs(gx) <= 1e-13 * std::max(1.0, std::abs(target))) {
                        converged = true;
                        break;
                    }
                    if (gx > 0)
                        b = x;
                    else
                        a = x;
                    double step = gx / g_slope(x);
                    double xn = x - step;
                    if (!(xn > a && xn < b)) xn = 0.5 * (a + b);  // bisection safeguard
                    x = xn;
                }
                if (!converged)
                    fail("lambda_roots: no convergence in bracket [" + std::to_string(a) + ", " +
                         std::to_string(b) + "]");
                if (std::abs(x) < 1e-12) continue;
                detail::merge_root(out.roots,
                                   {x, 1, j, std::abs(std::exp(Complex(0.0, g_exact(x))) - 1.0)});
            }
        }
    }
    std::sort(out.roots.begin(), out.roots.end(),
              [](const LambdaRoot& a, const LambdaRoot& b) { return a.lambda < b.lambda; });
    return out;
}

struct RefinedRoot {
    double z = 0.0;
    ComplexVector w;             // exact fixed vector, P_j(z_j) v (or zero)
    ComplexVector projected_v;   // P_j(z_0) v
    double phase = 0.0;          // branch phase at z_0
};

/// Near-root refinement: given z0 and v with ||e^{4iRz0}C(z0)v - v|| < ||v||,
/// produce per eigenphase branch a true root z_j and fixed vector
/// w_j = P_j(z_j) v, satisfying
///   |z_j - z0|^2        < ||v||^{-1} ||e^{4iRz0}C(z0)v - v||,
///   ||P_j(z0)v - w_j||^2 < ||v||     ||e^{4iRz0}C(z0)v - v||,
///   e^{4iRz_j}C(z_j)w_j = w_j.
/// Branches whose component of v is already below the second bound return
/// (z0, 0).
inline std::vector<RefinedRoot> near_root_refine(const UnitaryFamily& f, double r, double z0,
                                                 const ComplexVector& v) {
    require(r > 0.0, "near_root_refine: R must be positive");
    require(v.size() == f.dim, "near_root_refine: vector dimension mismatch");
    ComplexMatrix c0 = f.at(z0);
    ComplexVector err = std::exp(Complex(0.0, 4.0 * r * z0)) * (c0 * v) - v;
    const double en = err.norm(), vn = v.norm();
    require(vn > 0.0, "near_root_refine: zero vector");
    if (!(en < vn))
        fail("near_root_refine: precondition ||e^{4iRz0}C(z0)v - v|| < ||v|| violated (" +
             std::to_string(en) + " >= " + std::to_string(vn) + ")");

    detail::UnitarySpectrum sp = detail::unitary_spectrum(c0);
    // group coincident phases into distinct branches
    std::vector<std::pair<double, std::vector<Index>>> groups;
    for (Index i = 0; i < f.dim; ++i) {
        double ph = sp.phases[static_cast<size_t>(i)];
        bool placed = false;
        for (auto& g : groups)
            if (std::abs(detail::wrap_to_pi(g.first - ph)) < 1e-9) {
                g.second.push_back(i);
                placed = true;
                break;
            }
        if (!placed) groups.push_back({ph, {i}});
    }

    std::vector<RefinedRoot> out;
    for (const auto& g : groups) {
        ComplexMatrix basis(f.dim, static_cast<Index>(g.second.size()));
        for (size_t kk = 0; kk < g.second.size(); ++kk) basis.col(static_cast<Index>(kk)) = sp.q.col(g.second[kk]);
        ComplexVector pv = basis * (basis.adjoint() * v);
        RefinedRoot rr;
        rr.phase = g.first;
        rr.projected_v = pv;
        if (pv.squaredNorm() < vn * en) {
            rr.z = z0;
            rr.w = ComplexVector::Zero(f.dim);
            out.push_back(std::move(rr));
            continue;
        }
        // solve 4R z + theta_branch(z) = 2 pi k for the nearest k
        double lift0 = 4.0 * r * z0 + g.first;
        double target = 2.0 * M_PI * std::round(lift0 / (2.0 * M_PI));
        double z = z0, phase = g.first;
        for (int it = 0; it < 100; ++it) {
            double gz = 4.0 * r * z + phase - target;
            if (std::abs(gz) <= 1e-14 * std::max(1.0, std::abs(target))) break;
            z -= gz / (4.0 * r);
            detail::UnitarySpectrum spz = detail::unitary_spectrum(f.at(z));
            const double ref = phase;
            double best = std::numeric_limits<double>::infinity();
            for (double p : spz.phases) {
                double d = std::abs(detail::wrap_to_pi(p - ref));
                if (d < best) {
                    best = d;
                    phase = ref + detail::wrap_to_pi(p - ref);
                }
            }
        }
        // exact projection at z
        detail::UnitarySpectrum spz = detail::unitary_spectrum(f.at(z));
        ComplexMatrix cols(f.dim, 0);
        for (Index i = 0; i < f.dim; ++i) {
            if (std::abs(detail::wrap_to_pi(spz.phases[static_cast<size_t>(i)] - phase)) < 1e-7) {
                cols.conservativeResize(Eigen::NoChange, cols.cols() + 1);
                cols.col(cols.cols() - 1) = spz.q.col(i);
            }
        }
        rr.z = z;
        rr.w = cols.cols() ? ComplexVector(cols * (cols.adjoint() * v)) : ComplexVector::Zero(f.dim);
        out.push_back(std::move(rr));
    }
    return out;
}

/// |sum_{rho in Lambda_R(C), 0 < rho < gamma} f(rho)
///  - sum_{lambda in Lambda*_R(C), 0 < lambda < gamma} f(lambda)|,
/// where Lambda* freezes the family at C(0). The caller compares the result
/// against the a (gamma^2 sup|f'| + gamma sup|f|) bound with a fitted a.
inline double lambda_compare(const UnitaryFamily& f, double r, double gamma,
                             const std::function<double(double)>& test_fn) {
    require(gamma > 0.0, "lambda_compare: gamma must be positive");
    LambdaSet moving = lambda_roots(f, r, {0.0, gamma});
    UnitaryFamily frozen = family_constant(f.at(0.0), f.validity_radius);
    LambdaSet fixed = lambda_roots(frozen, r, {0.0, gamma});
    double acc = 0.0;
    for (double x : moving.lambdas())
        if (x > 0.0 && x < gamma) acc += test_fn(x);
    for (double x : fixed.lambdas())
        if (x > 0.0 && x < gamma) acc -= test_fn(x);
    return std::abs(acc);
}

}  // namespace adtor
