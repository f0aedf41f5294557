#pragma once

// Finite-dimensional scattering algebra on H^*(Y, F[du]): the du-operators,
// scattering matrices C = 2P_L - 1 built from limiting subspaces, truncated
// polynomial families C(lambda), the glued matrix C12, the sign-twisted
// boundary variants C_{j,bd} and the chi-invariants.

#include "adtor/linalg.hpp"

#include <utility>
#include <vector>

namespace adtor {

/// Cohomological shape of the cross-section Y: top_degree n = dim Z and
/// h[p] = dim H^p(Y, F) for p = 0..n-1. The degree-p block of H^*(Y, F[du])
/// is H^p + H^{p-1} du, of dimension h[p] + h[p-1] (h[-1] = h[n] = 0).
struct YModel {
    Index top_degree = 1;
    std::vector<Index> h;

    YModel() = default;
    YModel(Index n, std::vector<Index> dims) : top_degree(n), h(std::move(dims)) {
        require(top_degree >= 1, "YModel: top degree must be >= 1");
        require(static_cast<Index>(h.size()) == top_degree, "YModel: need h_p for p = 0..n-1");
        for (Index hp : h) require(hp >= 0, "YModel: negative dimension");
    }

    Index h_at(Index p) const {
        return (p >= 0 && p < static_cast<Index>(h.size())) ? h[static_cast<size_t>(p)] : 0;
    }
    Index block_dim(Index p) const { return h_at(p) + h_at(p - 1); }
    Index total_dim() const {
        Index d = 0;
        for (Index p = 0; p <= top_degree; ++p) d += block_dim(p);
        return d;
    }
    Index block_offset(Index p) const {
        Index off = 0;
        for (Index q = 0; q < p; ++q) off += block_dim(q);
        return off;
    }
    bool operator==(const YModel& o) const { return top_degree == o.top_degree && h == o.h; }
};

/// du-wedge, interior product and the odd Clifford action c(du) = du^ - i_du
/// on the total graded space, ordered block 0, ..., block n with each block
/// laid out as (H^p coefficients, H^{p-1} du coefficients).
struct DuOperators {
    explicit DuOperators(const YModel& y) : ymodel(y) {
        const Index dim = y.total_dim();
        du_wedge = ComplexMatrix::Zero(dim, dim);
        i_du = ComplexMatrix::Zero(dim, dim);
        for (Index p = 0; p <= y.top_degree; ++p) {
            const Index hp = y.h_at(p);
            // du^ : H^p part of block p -> du part of block p+1 (identity coefficients)
            if (hp > 0 && p + 1 <= y.top_degree) {
                Index src = y.block_offset(p);
                Index dst = y.block_offset(p + 1) + y.h_at(p + 1);
                du_wedge.block(dst, src, hp, hp) = ComplexMatrix::Identity(hp, hp);
            }
            // i_du : du part of block p -> H^{p-1} part of block p-1
            const Index hq = y.h_at(p - 1);
            if (hq > 0) {
                Index src = y.block_offset(p) + hp;
                Index dst = y.block_offset(p - 1);
                i_du.block(dst, src, hq, hq) = ComplexMatrix::Identity(hq, hq);
            }
        }
        cdu = du_wedge - i_du;
    }

    YModel ymodel;
    ComplexMatrix du_wedge;
    ComplexMatrix i_du;
    ComplexMatrix cdu;
};

/// Limiting values L = ker(C - 1) of a cylindrical-end model, stored through
/// the absolute components: an orthonormal basis A^p of L_abs^p inside
/// C^{h_p} per degree. The relative component is forced by
/// L_abs^{p,perp} = i_du L_rel^{p+1}, so L_rel^{p+1} = du ^ (A^p)^perp.
class LimitingSubspace {
public:
    LimitingSubspace(YModel y, std::vector<ComplexMatrix> abs_bases)
        : y_(std::move(y)), abs_(std::move(abs_bases)) {
        require(static_cast<Index>(abs_.size()) == y_.top_degree,
                "limiting subspace: need one absolute basis per degree 0..n-1");
        for (Index p = 0; p < y_.top_degree; ++p) {
            const ComplexMatrix& a = abs_[static_cast<size_t>(p)];
            require(a.rows() == y_.h_at(p), "limiting subspace: basis rows mismatch at degree " +
                                                std::to_string(p));
            if (a.cols() == 0) continue;
            double defect = (a.adjoint() * a - ComplexMatrix::Identity(a.cols(), a.cols()))
                                .cwiseAbs()
                                .maxCoeff();
            if (!(defect <= 1e-10))
                fail("limiting-subspace abs basis not orthonormal at degree " + std::to_string(p) +
                     ", deviation " + std::to_string(defect));
        }
    }

    const YModel& ymodel() const { return y_; }

    /// Orthonormal basis of L_abs^p inside C^{h_p}.
    ComplexMatrix abs_basis(Index p) const {
        if (p < 0 || p >= y_.top_degree) return ComplexMatrix::Zero(y_.h_at(p), 0);
        return abs_[static_cast<size_t>(p)];
    }
    /// Orthonormal basis of the du-coefficients of L_rel^p inside C^{h_{p-1}}.
    ComplexMatrix rel_basis(Index p) const {
        Index hq = y_.h_at(p - 1);
        if (hq == 0) return ComplexMatrix::Zero(0, 0);
        return orth_complement(abs_basis(p - 1), hq);
    }
    /// Orthonormal basis of L^p = L_abs^p + L_rel^p in block-p coordinates.
    ComplexMatrix block_basis(Index p) const {
        ComplexMatrix a = abs_basis(p);
        ComplexMatrix r = rel_basis(p);
        ComplexMatrix b = ComplexMatrix::Zero(y_.block_dim(p), a.cols() + r.cols());
        if (a.size()) b.block(0, 0, a.rows(), a.cols()) = a;
        if (r.size()) b.block(y_.h_at(p), a.cols(), r.rows(), r.cols()) = r;
        return b;
    }
    Index abs_dim(Index p) const { return abs_basis(p).cols(); }
    Index rel_dim(Index p) const { return rel_basis(p).cols(); }
    Index block_dim(Index p) const { return abs_dim(p) + rel_dim(p); }

private:
    YModel y_;
    std::vector<ComplexMatrix> abs_;
};

/// Unitary endomorphism of H^*(Y, F[du]) preserving every H^p and H^p du.
/// Stored as the restrictions U_p = C|_{H^p} and V_p = C|_{H^p du}. A
/// single-manifold scattering matrix anti-commutes with c(du), i.e. V = -U;
/// the sign-twisted boundary variants commute instead (V = +U).
class ScatteringMatrix {
public:
    ScatteringMatrix(YModel y, std::vector<ComplexMatrix> u, std::vector<ComplexMatrix> v,
                     bool check_unitary = true)
        : y_(std::move(y)), u_(std::move(u)), v_(std::move(v)) {
        require(static_cast<Index>(u_.size()) == y_.top_degree &&
                    static_cast<Index>(v_.size()) == y_.top_degree,
                "scattering matrix: need one H and one H du block per degree");
        for (Index p = 0; p < y_.top_degree; ++p) {
            const Index hp = y_.h_at(p);
            require(u_[static_cast<size_t>(p)].rows() == hp && u_[static_cast<size_t>(p)].cols() == hp &&
                        v_[static_cast<size_t>(p)].rows() == hp && v_[static_cast<size_t>(p)].cols() == hp,
                    "scattering matrix: block shape mismatch at degree " + std::to_string(p));
            if (check_unitary && hp > 0) {
                for (const ComplexMatrix* m : {&u_[static_cast<size_t>(p)], &v_[static_cast<size_t>(p)]}) {
                    double defect = max_abs(m->adjoint() * (*m) - ComplexMatrix::Identity(hp, hp));
                    if (!(defect <= 1e-8))
                        fail("scattering block not unitary at degree " + std::to_string(p) +
                             ", defect " + std::to_string(defect));
                }
            }
        }
    }

    const YModel& ymodel() const { return y_; }
    const ComplexMatrix& u(Index p) const { return u_[static_cast<size_t>(p)]; }
    const ComplexMatrix& v(Index p) const { return v_[static_cast<size_t>(p)]; }

    /// Degree-p block on H^p + H^{p-1} du.
    ComplexMatrix block(Index p) const {
        ComplexMatrix uu = (p >= 0 && p < y_.top_degree) ? u_[static_cast<size_t>(p)]
                                                         : ComplexMatrix::Zero(0, 0);
        ComplexMatrix vv = (p - 1 >= 0 && p - 1 < y_.top_degree) ? v_[static_cast<size_t>(p - 1)]
                                                                 : ComplexMatrix::Zero(0, 0);
        return block_diag(uu, vv);
    }

    /// Full matrix on the total graded space (block-diagonal by degree).
    ComplexMatrix full() const {
        ComplexMatrix m = ComplexMatrix::Zero(y_.total_dim(), y_.total_dim());
        for (Index p = 0; p <= y_.top_degree; ++p) {
            Index off = y_.block_offset(p);
            Index d = y_.block_dim(p);
            if (d > 0) m.block(off, off, d, d) = block(p);
        }
        return m;
    }

    bool involutive(double tol = 1e-10) const {
        for (Index p = 0; p < y_.top_degree; ++p) {
            Index hp = y_.h_at(p);
            if (hp == 0) continue;
            ComplexMatrix i2 = u(p) * u(p) - ComplexMatrix::Identity(hp, hp);
            ComplexMatrix j2 = v(p) * v(p) - ComplexMatrix::Identity(hp, hp);
            if (max_abs(i2) > tol || max_abs(j2) > tol) return false;
        }
        return true;
    }

    bool anticommutes_with_cdu(double tol = 1e-10) const {
        for (Index p = 0; p < y_.top_degree; ++p)
            if (y_.h_at(p) > 0 && max_abs(u(p) + v(p)) > tol) return false;
        return true;
    }

    ScatteringMatrix inverse() const {
        std::vector<ComplexMatrix> ui, vi;
        for (Index p = 0; p < y_.top_degree; ++p) {
            ui.push_back(u(p).adjoint());
            vi.push_back(v(p).adjoint());
        }
        return ScatteringMatrix(y_, std::move(ui), std::move(vi));
    }

    friend ScatteringMatrix operator*(const ScatteringMatrix& a, const ScatteringMatrix& b) {
        require(a.y_ == b.y_, "scattering product: YModel mismatch");
        std::vector<ComplexMatrix> u, v;
        for (Index p = 0; p < a.y_.top_degree; ++p) {
            u.push_back(a.u(p) * b.u(p));
            v.push_back(a.v(p) * b.v(p));
        }
        return ScatteringMatrix(a.y_, std::move(u), std::move(v));
    }

private:
    YModel y_;
    std::vector<ComplexMatrix> u_, v_;
};

/// C = 2 P_L - 1. Unitary, involutive, anti-commutes with c(du), and
/// ker(C - 1) = L.
inline ScatteringMatrix scattering_from_subspace(const LimitingSubspace& l) {
    const YModel& y = l.ymodel();
    std::vector<ComplexMatrix> u, v;
    for (Index p = 0; p < y.top_degree; ++p) {
        const Index hp = y.h_at(p);
        ComplexMatrix a = l.abs_basis(p);
        ComplexMatrix up = 2.0 * (a * a.adjoint()) - ComplexMatrix::Identity(hp, hp);
        u.push_back(up);
        v.push_back(-up);
    }
    return ScatteringMatrix(y, std::move(u), std::move(v));
}

/// Inverse of scattering_from_subspace: L = ker(C - 1), degreewise.
inline LimitingSubspace limiting_from_scattering(const ScatteringMatrix& c) {
    require(c.involutive(), "limiting_from_scattering: matrix is not involutive");
    require(c.anticommutes_with_cdu(),
            "limiting_from_scattering: matrix does not anti-commute with c(du)");
    const YModel& y = c.ymodel();
    std::vector<ComplexMatrix> abs;
    for (Index p = 0; p < y.top_degree; ++p) {
        const Index hp = y.h_at(p);
        if (hp == 0) {
            abs.emplace_back(ComplexMatrix::Zero(0, 0));
            continue;
        }
        HermitianEig eig = hermitian_eig(c.u(p), HermitianSpace(hp));
        Index first = 0;
        while (first < hp && eig.eigenvalues(first) < 1.0 - kSubspaceTol) ++first;
        abs.push_back(orthonormal_span(eig.eigenvectors.rightCols(hp - first)));
    }
    return LimitingSubspace(y, std::move(abs));
}

/// Sign-twisted boundary matrix C_{j,bd} = (-1)^j (C|_H - C|_{H du}).
inline ScatteringMatrix c_bd(const ScatteringMatrix& c, int side) {
    require(side == 1 || side == 2, "c_bd: side must be 1 or 2");
    const double sgn = (side == 1) ? -1.0 : 1.0;
    std::vector<ComplexMatrix> u, v;
    for (Index p = 0; p < c.ymodel().top_degree; ++p) {
        u.push_back(sgn * c.u(p));
        v.push_back(-sgn * c.v(p));
    }
    return ScatteringMatrix(c.ymodel(), std::move(u), std::move(v));
}

/// dim ker(M - 1) of a unitary matrix, eigenvalues counted at +1 within the
/// subspace threshold.
inline Index unit_eigenvalue_count(const ComplexMatrix& m) {
    if (m.rows() == 0) return 0;
    Eigen::ComplexEigenSolver<ComplexMatrix> es(m);
    Index k = 0;
    for (Index i = 0; i < es.eigenvalues().size(); ++i)
        if (std::abs(es.eigenvalues()(i) - Complex(1.0, 0.0)) <= kSubspaceTol) ++k;
    return k;
}

/// chi'(C) = sum_p (-1)^p p dim ker(C^p - 1), kernel dimensions counted from
/// eigenvalues at +1. For involutive matrices (boundary variants) and for
/// products of two reflections (the glued matrix) the unit eigenvalues are
/// isolated, so the count is exact.
inline long chi_prime_of(const ScatteringMatrix& c) {
    const YModel& y = c.ymodel();
    long acc = 0;
    for (Index p = 0; p <= y.top_degree; ++p)
        acc += ((p % 2 == 0) ? 1L : -1L) * static_cast<long>(p) *
               static_cast<long>(unit_eigenvalue_count(c.block(p)));
    return acc;
}

/// chi(Y, F) = sum_p (-1)^p h_p.
inline long chi_euler(const YModel& y) {
    long acc = 0;
    for (Index p = 0; p < y.top_degree; ++p)
        acc += ((p % 2 == 0) ? 1L : -1L) * static_cast<long>(y.h_at(p));
    return acc;
}

struct ChiBreakdown {
    long chi_prime;      // chi' = (chi'(C12) - chi'(C1bd) - chi'(C2bd)) / 2
    long chi_prime_c12;
    long chi_prime_c1bd;
    long chi_prime_c2bd;
};

/// chi' from the three kernel-weighted counts; asserts the parity identity
/// chi'(C12) - chi'(C1bd) - chi'(C2bd) = 2 chi' of the gluing lemma.
inline ChiBreakdown chi_prime_top(const LimitingSubspace& l1, const LimitingSubspace& l2) {
    require(l1.ymodel() == l2.ymodel(), "chi_prime_top: YModel mismatch");
    ScatteringMatrix c1 = scattering_from_subspace(l1);
    ScatteringMatrix c2 = scattering_from_subspace(l2);
    ScatteringMatrix c12 = c2.inverse() * c1;
    long a = chi_prime_of(c12);
    long b1 = chi_prime_of(c_bd(c1, 1));
    long b2 = chi_prime_of(c_bd(c2, 2));
    long diff = a - b1 - b2;
    if (diff % 2 != 0)
        fail("chi_prime_top: parity violation, chi'(C12)-chi'(C1bd)-chi'(C2bd) = " +
             std::to_string(diff) + " is odd (invalid limiting-subspace data)");
    return {diff / 2, a, b1, b2};
}

// ---------------------------------------------------------------------------
// Truncated polynomial families C(lambda) = sum_k C_k lambda^k.
// ---------------------------------------------------------------------------

class ScatteringFamily {
public:
    ScatteringFamily(std::vector<ScatteringMatrix> coefficients, double validity_radius)
        : coeff_(std::move(coefficients)), radius_(validity_radius) {
        require(!coeff_.empty(), "scattering family: need at least the constant term");
        require(radius_ > 0.0, "scattering family: validity radius must be positive");
        for (const auto& c : coeff_)
            require(c.ymodel() == coeff_.front().ymodel(), "scattering family: YModel mismatch");
    }

    static ScatteringFamily constant(ScatteringMatrix c, double validity_radius = 1.0) {
        return ScatteringFamily({std::move(c)}, validity_radius);
    }

    const YModel& ymodel() const { return coeff_.front().ymodel(); }
    Index degree() const { return static_cast<Index>(coeff_.size()) - 1; }
    double validity_radius() const { return radius_; }
    const ScatteringMatrix& coefficient(Index k) const { return coeff_[static_cast<size_t>(k)]; }
    bool is_constant() const { return coeff_.size() == 1; }

    /// Evaluate the truncated series on the degree-p block.
    ComplexMatrix block_at(Index p, double lambda) const {
        ComplexMatrix acc = coeff_.front().block(p);
        double pw = 1.0;
        for (size_t k = 1; k < coeff_.size(); ++k) {
            pw *= lambda;
            acc += pw * coeff_[k].block(p);
        }
        return acc;
    }

    ComplexMatrix full_at(double lambda) const {
        ComplexMatrix acc = coeff_.front().full();
        double pw = 1.0;
        for (size_t k = 1; k < coeff_.size(); ++k) {
            pw *= lambda;
            acc += pw * coeff_[k].full();
        }
        return acc;
    }

    /// Max unitarity defect over a sampled grid in (-radius, radius).
    double unitarity_defect(Index samples = 17) const {
        double worst = 0.0;
        for (Index i = 0; i < samples; ++i) {
            double lam = -radius_ + 2.0 * radius_ * (static_cast<double>(i) + 0.5) /
                                         static_cast<double>(samples);
            ComplexMatrix m = full_at(lam);
            if (m.rows() == 0) continue;
            worst = std::max(worst, max_abs(m.adjoint() * m - ComplexMatrix::Identity(m.rows(), m.cols())));
        }
        return worst;
    }

    /// Max defect of C(lambda) C(-lambda) = Id over the sampled grid.
    double reflection_defect(Index samples = 17) const {
        double worst = 0.0;
        for (Index i = 0; i < samples; ++i) {
            double lam = -radius_ + 2.0 * radius_ * (static_cast<double>(i) + 0.5) /
                                         static_cast<double>(samples);
            ComplexMatrix m = full_at(lam) * full_at(-lam);
            if (m.rows() == 0) continue;
            worst = std::max(worst, max_abs(m - ComplexMatrix::Identity(m.rows(), m.cols())));
        }
        return worst;
    }

private:
    std::vector<ScatteringMatrix> coeff_;
    double radius_;
};

namespace detail {
/// Truncated product of coefficient sequences of per-degree blocks.
inline std::vector<ComplexMatrix> series_product(const std::vector<ComplexMatrix>& a,
                                                 const std::vector<ComplexMatrix>& b,
                                                 size_t out_len) {
    std::vector<ComplexMatrix> out(out_len);
    for (size_t k = 0; k < out_len; ++k) {
        ComplexMatrix acc = ComplexMatrix::Zero(a.front().rows(), b.front().cols());
        for (size_t i = 0; i <= k; ++i) {
            if (i >= a.size() || (k - i) >= b.size()) continue;
            acc += a[i] * b[k - i];
        }
        out[k] = acc;
    }
    return out;
}

/// Truncated inverse of a coefficient sequence with invertible constant term.
inline std::vector<ComplexMatrix> series_inverse(const std::vector<ComplexMatrix>& s, size_t out_len) {
    std::vector<ComplexMatrix> t(out_len);
    ComplexMatrix s0inv = s.front().inverse();
    t[0] = s0inv;
    for (size_t k = 1; k < out_len; ++k) {
        ComplexMatrix acc = ComplexMatrix::Zero(s0inv.rows(), s0inv.cols());
        for (size_t i = 1; i <= k; ++i) {
            if (i >= s.size()) break;
            acc += s[i] * t[k - i];
        }
        t[k] = -s0inv * acc;
    }
    return t;
}
}  // namespace detail

/// C12(lambda) = C2(lambda)^{-1} C1(lambda), truncated to the common degree.
inline ScatteringFamily c12(const ScatteringFamily& f1, const ScatteringFamily& f2) {
    require(f1.ymodel() == f2.ymodel(), "c12: YModel mismatch");
    const YModel& y = f1.ymodel();
    const size_t len = static_cast<size_t>(std::max(f1.degree(), f2.degree())) + 1;
    // Per fine block (H^p and H^p du separately), invert and multiply the series.
    std::vector<std::vector<ComplexMatrix>> u_out(len), v_out(len);
    for (Index p = 0; p < y.top_degree; ++p) {
        std::vector<ComplexMatrix> u1, u2, v1, v2;
        for (Index k = 0; k <= f1.degree(); ++k) {
            u1.push_back(f1.coefficient(k).u(p));
            v1.push_back(f1.coefficient(k).v(p));
        }
        for (Index k = 0; k <= f2.degree(); ++k) {
            u2.push_back(f2.coefficient(k).u(p));
            v2.push_back(f2.coefficient(k).v(p));
        }
        if (y.h_at(p) == 0) {
            for (size_t k = 0; k < len; ++k) {
                u_out[k].push_back(ComplexMatrix::Zero(0, 0));
                v_out[k].push_back(ComplexMatrix::Zero(0, 0));
            }
            continue;
        }
        auto uu = detail::series_product(detail::series_inverse(u2, len), u1, len);
        auto vv = detail::series_product(detail::series_inverse(v2, len), v1, len);
        for (size_t k = 0; k < len; ++k) {
            u_out[k].push_back(uu[k]);
            v_out[k].push_back(vv[k]);
        }
    }
    std::vector<ScatteringMatrix> coeffs;
    for (size_t k = 0; k < len; ++k)
        coeffs.emplace_back(y, std::move(u_out[k]), std::move(v_out[k]), /*check_unitary=*/false);
    return ScatteringFamily(std::move(coeffs),
                            std::min(f1.validity_radius(), f2.validity_radius()));
}

}  // namespace adtor
