#pragma once

// Zeta-regularized determinants for arithmetic-progression spectra.
//
// Spectra of the model operators are unions of progressions
// {((2pi k - theta)/(4R))^2 : k >= 1}; their zeta functions continue to
// closed forms at s = 0. The Euler-Maclaurin Hurwitz zeta below is the
// independent numeric route used to cross-check every closed form.

#include "adtor/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

namespace adtor {

namespace detail {
// B_{2j} for j = 1..12.
inline constexpr double kBernoulli2j[12] = {
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
};
inline constexpr int kEmTerms = 12;   // correction terms
inline constexpr double kEmShift = 24.0;  // direct summation until a+N >= this
}  // namespace detail

struct HurwitzValue {
    Complex value;  // zeta_H(s, a)
    Complex ds;     // d/ds zeta_H(s, a)
};

/// Hurwitz zeta zeta_H(s,a) = sum_{k>=0} (k+a)^{-s} and its s-derivative,
/// continued by Euler-Maclaurin summation. Accurate to ~1e-13 absolute for
/// |s| <= 4, a >= 1e-3. s = 1 is a pole.
inline HurwitzValue hurwitz_zeta_with_ds(Complex s, double a) {
    require(a > 0.0, "hurwitz_zeta: a must be positive");
    require(std::abs(s - Complex(1.0, 0.0)) > 1e-12, "hurwitz_zeta: pole at s = 1");

    const int nshift = std::max(0, static_cast<int>(std::ceil(detail::kEmShift - a)));
    Complex sum = 0.0, dsum = 0.0;
    for (int k = 0; k < nshift; ++k) {
        const double x = a + k;
        const Complex t = std::exp(-s * std::log(x));
        sum += t;
        dsum += -std::log(x) * t;
    }
    const double x = a + nshift;
    const double lx = std::log(x);
    const Complex xs = std::exp(-s * lx);  // x^{-s}

    // integral tail x^{1-s}/(s-1) and half-term x^{-s}/2
    sum += x * xs / (s - 1.0) + 0.5 * xs;
    dsum += x * xs * (-lx / (s - 1.0) - 1.0 / ((s - 1.0) * (s - 1.0))) - 0.5 * lx * xs;

    // Euler-Maclaurin corrections: B_{2j}/(2j)! * (s)_{2j-1} * x^{-s-2j+1}
    Complex rising = 1.0, drising = 0.0;  // (s)_0 and derivative
    double fact = 1.0;                    // (2j)!
    for (int j = 1; j <= detail::kEmTerms; ++j) {
        // extend rising factorial from length 2j-3 to 2j-1
        for (int i = 2 * j - 3; i <= 2 * j - 2; ++i) {
            if (i < 0) continue;
            drising = drising * (s + static_cast<double>(i)) + rising;
            rising = rising * (s + static_cast<double>(i));
        }
        fact *= (2.0 * j) * (2.0 * j - 1.0);
        const double xp = std::pow(x, -(2.0 * j - 1.0));
        const Complex base = xs * xp;  // x^{-s-2j+1}
        const double coef = detail::kBernoulli2j[j - 1] / fact;
        sum += coef * rising * base;
        dsum += coef * (drising - rising * lx) * base;
    }
    return {sum, dsum};
}

inline Complex hurwitz_zeta(Complex s, double a) { return hurwitz_zeta_with_ds(s, a).value; }

/// Closed form for the log-determinant of one progression branch,
/// -d/ds|_0 sum_{k>=1} ((2pi k - theta)/(4R))^{-2s}:
/// log(4R) at theta = 0, (1/2) log(2 - 2 cos theta) for 0 < theta <= pi
/// (the latter is the per-branch value once +/- phases are paired, which is
/// automatic for conjugation-closed spectra).
inline double progression_zeta_prime0(double theta, double r) {
    require(r > 0.0, "progression_zeta_prime0: R must be positive");
    require(theta >= -1e-15 && theta <= M_PI + 1e-12,
            "progression_zeta_prime0: theta out of [0, pi]");
    if (theta <= 0.0) return std::log(4.0 * r);
    return 0.5 * std::log(2.0 - 2.0 * std::cos(theta));
}

/// Same quantity through the Euler-Maclaurin continuation; the independent
/// oracle for progression_zeta_prime0. For 0 < theta < pi the +/- pair is
/// evaluated and halved.
inline double progression_zeta_prime0_em(double theta, double r) {
    require(r > 0.0, "progression_zeta_prime0_em: R must be positive");
    const double c = 2.0 * M_PI / (4.0 * r);
    const double lc = std::log(c);
    // zeta(s) = c^{-2s} zeta_H(2s, a); -zeta'(0) = 2 lc zeta_H(0,a) - 2 zeta_H'(0,a)
    auto minus_prime0 = [&](double a) {
        HurwitzValue h = hurwitz_zeta_with_ds(Complex(0.0, 0.0), a);
        return 2.0 * lc * h.value.real() - 2.0 * h.ds.real();
    };
    if (theta <= 0.0) return minus_prime0(1.0);
    const double b = theta / (2.0 * M_PI);
    if (std::abs(theta - M_PI) < 1e-14) return minus_prime0(0.5);
    return 0.5 * (minus_prime0(1.0 - b) + minus_prime0(b));
}

/// Eigenphases of a unitary matrix in (-pi, pi], ascending.
inline std::vector<double> unitary_eigenphases(const ComplexMatrix& c) {
    if (c.rows() == 0) return {};
    require(c.rows() == c.cols(), "unitary_eigenphases: square matrix required");
    double udef = (c.adjoint() * c - ComplexMatrix::Identity(c.rows(), c.cols()))
                      .cwiseAbs()
                      .maxCoeff();
    require(udef <= 1e-8, "matrix is not unitary, defect " + std::to_string(udef));
    Eigen::ComplexEigenSolver<ComplexMatrix> es(c);
    std::vector<double> phases(static_cast<size_t>(c.rows()));
    for (Index i = 0; i < c.rows(); ++i) {
        double th = std::arg(es.eigenvalues()(i));
        if (th <= -M_PI + 1e-300) th = M_PI;
        phases[static_cast<size_t>(i)] = th;
    }
    std::sort(phases.begin(), phases.end());
    return phases;
}

/// True iff the eigenphase multiset is closed under conjugation.
inline bool spectrum_conjugation_closed(const ComplexMatrix& c, double tol = 1e-8) {
    std::vector<double> ph = unitary_eigenphases(c);
    std::vector<double> neg(ph.rbegin(), ph.rend());
    for (double& t : neg) {
        t = -t;
        if (t <= -M_PI + tol) t = M_PI;  // -pi and pi identified
    }
    std::sort(neg.begin(), neg.end());
    for (size_t i = 0; i < ph.size(); ++i) {
        double d = std::abs(ph[i] - neg[i]);
        d = std::min(d, std::abs(d - 2.0 * M_PI));
        if (d > tol) return false;
    }
    return true;
}

/// zeta_{C,R}'(0) = r log(2R) + m log 2 + (1/2) log det*((2 - C - C^{-1})/4)
/// for unitary C with conjugation-closed spectrum, where r = dim ker(C - 1)
/// and m = dim. This is the log-determinant of the model operator whose
/// squared spectrum is {lambda^2 : det(e^{4 i lambda R} C - 1) = 0, lambda > 0}.
inline double model_zeta_prime0(const ComplexMatrix& c, double r) {
    require(r > 0.0, "model_zeta_prime0: R must be positive");
    if (c.rows() == 0) return 0.0;
    require(spectrum_conjugation_closed(c),
            "model_zeta_prime0: spectrum is not conjugation-closed");
    std::vector<double> ph = unitary_eigenphases(c);
    const Index m = c.rows();
    Index rk = 0;
    for (double t : ph)
        if (std::abs(t) <= 1e-8) ++rk;
    ComplexMatrix sym = (2.0 * ComplexMatrix::Identity(m, m) - c - c.adjoint()) / 4.0;
    double ds = det_star(0.5 * (sym + sym.adjoint()), HermitianSpace(m));
    return static_cast<double>(rk) * std::log(2.0 * r) + static_cast<double>(m) * std::log(2.0) +
           0.5 * std::log(std::abs(ds));
}

// ---------------------------------------------------------------------------
// Eigenvalue catalogs: degree-tagged unions of progressions.
// ---------------------------------------------------------------------------

/// One arithmetic-progression family {((2pi k - theta)/(4R))^2 : k >= 1}.
/// A theta = 0 spectrum with a k <= -1 mirror is stored as two entries.
struct Progression {
    double theta = 0.0;    // in [0, pi]
    double r = 1.0;        // progression scale, eigenvalues ((2pi k - theta)/(4R))^2
    int degree = 0;        // form degree p
    int multiplicity = 1;
};

struct ZetaResult {
    double zeta_prime_0 = 0.0;
    std::vector<std::pair<Progression, double>> decomposition;
};

class EigenvalueCatalog {
public:
    void add(Progression p) {
        require(p.theta >= 0.0 && p.theta <= M_PI + 1e-12, "progression theta out of [0, pi]");
        require(p.r > 0.0 && p.multiplicity >= 1, "invalid progression");
        entries_.push_back(p);
    }
    const std::vector<Progression>& entries() const { return entries_; }

    /// Weighted log-determinant sum_p (-1)^p p log det(D^{2,(p)}), evaluated
    /// from the per-progression closed forms in (degree, theta) order.
    ZetaResult weighted_zeta_prime0() const {
        std::vector<Progression> sorted = entries_;
        std::stable_sort(sorted.begin(), sorted.end(), [](const Progression& a, const Progression& b) {
            return std::tie(a.degree, a.theta, a.r) < std::tie(b.degree, b.theta, b.r);
        });
        ZetaResult res;
        for (const Progression& p : sorted) {
            double v = progression_zeta_prime0(p.theta, p.r) * p.multiplicity;
            double w = (p.degree % 2 == 0 ? 1.0 : -1.0) * p.degree;
            res.decomposition.emplace_back(p, v);
            res.zeta_prime_0 += w * v;
        }
        return res;
    }

    /// All eigenvalues of degree-p progressions not exceeding cutoff, ascending.
    std::vector<double> eigenvalues_below(int degree, double cutoff) const {
        std::vector<double> out;
        for (const Progression& p : entries_) {
            if (p.degree != degree) continue;
            for (int k = 1;; ++k) {
                double lam = (2.0 * M_PI * k - p.theta) / (4.0 * p.r);
                double ev = lam * lam;
                if (ev > cutoff) break;
                for (int m = 0; m < p.multiplicity; ++m) out.push_back(ev);
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    std::vector<Progression> entries_;
};

}  // namespace adtor
