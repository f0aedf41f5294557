#pragma once

// Dense complex linear algebra at small dimension: Hermitian eigendecomposition
// with respect to an arbitrary Gram metric, det* (product of nonzero
// eigenvalues), orthogonal projections and the projection-pair determinant.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace adtor {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Relative zero-eigenvalue threshold shared by det*, rank decisions and
/// kernel-dimension counts. Floor is absolute.
inline constexpr double kZeroTolRel = 1e-10;
inline constexpr double kZeroTolFloor = 1e-14;

/// Threshold separating "zero" from "nonzero" given a scale (spectral radius
/// or largest singular value).
inline double zero_threshold(double scale) {
    return std::max(kZeroTolFloor, kZeroTolRel * std::max(1.0, scale));
}

[[noreturn]] inline void fail(const std::string& what) {
    throw std::invalid_argument(what);
}

inline void require(bool cond, const std::string& what) {
    if (!cond) fail(what);
}

/// Largest entry magnitude; 0 for empty matrices.
inline double max_abs(const ComplexMatrix& m) {
    return m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
}

/// Max entrywise deviation of A from its conjugate transpose.
inline double hermitian_defect(const ComplexMatrix& a) {
    if (a.rows() != a.cols()) return std::numeric_limits<double>::infinity();
    return max_abs(a - a.adjoint());
}

/// Finite-dimensional complex inner-product space with explicit Gram matrix.
/// The Gram matrix is validated eagerly: Hermitian to 1e-12 entrywise and
/// positive definite. Adjoints of operators on the space are always taken
/// with respect to the Gram form, so non-orthonormal bases are first-class.
class HermitianSpace {
public:
    HermitianSpace() : dim_(0), gram_(ComplexMatrix::Zero(0, 0)), chol_(ComplexMatrix::Zero(0, 0)) {}

    explicit HermitianSpace(Index dim)
        : HermitianSpace(ComplexMatrix::Identity(dim, dim)) {}

    explicit HermitianSpace(ComplexMatrix gram) : dim_(gram.rows()), gram_(std::move(gram)) {
        require(gram_.rows() == gram_.cols(), "gram matrix must be square");
        if (dim_ == 0) {
            chol_ = ComplexMatrix::Zero(0, 0);
            return;
        }
        const double defect = hermitian_defect(gram_);
        if (!(defect <= 1e-12 * std::max(1.0, gram_.cwiseAbs().maxCoeff()))) {
            std::ostringstream os;
            os << "gram matrix is not Hermitian, max asymmetry " << defect;
            fail(os.str());
        }
        gram_ = 0.5 * (gram_ + gram_.adjoint().eval());
        Eigen::LLT<ComplexMatrix> llt(gram_);
        if (llt.info() != Eigen::Success) fail("gram matrix is not positive definite");
        chol_ = llt.matrixL();
    }

    Index dim() const { return dim_; }
    const ComplexMatrix& gram() const { return gram_; }

    /// Lower Cholesky factor L with gram = L L^H.
    const ComplexMatrix& chol() const { return chol_; }

    /// Coordinates of v in the orthonormal frame: w = L^H v.
    ComplexMatrix to_orthonormal(const ComplexMatrix& v) const { return chol_.adjoint() * v; }

    /// Inverse of to_orthonormal.
    ComplexMatrix from_orthonormal(const ComplexMatrix& w) const {
        return chol_.adjoint().template triangularView<Eigen::Upper>().solve(w);
    }

    /// Conjugate an operator into the orthonormal frame: L^H A L^{-H}.
    ComplexMatrix op_to_orthonormal(const ComplexMatrix& a) const {
        // A L^{-H} = (L^{-1} A^H)^H
        ComplexMatrix y = chol_.template triangularView<Eigen::Lower>().solve(a.adjoint());
        return to_orthonormal(y.adjoint());
    }

    Complex inner(const ComplexVector& v, const ComplexVector& w) const {
        return (v.adjoint() * gram_ * w)(0, 0);
    }
    double norm(const ComplexVector& v) const {
        return std::sqrt(std::max(0.0, inner(v, v).real()));
    }

    /// Gram adjoint of a map A : this -> target, i.e. the unique A* with
    /// <Av, w>_target = <v, A*w>_this.
    ComplexMatrix adjoint_of(const ComplexMatrix& a, const HermitianSpace& target) const {
        require(a.cols() == dim_ && a.rows() == target.dim(), "adjoint_of: shape mismatch");
        return gram_.ldlt().solve(a.adjoint() * target.gram());
    }

    /// Self-adjointness defect of A as an operator on this space (norm of
    /// gram*A - A^H*gram, relative scale).
    double self_adjoint_defect(const ComplexMatrix& a) const {
        if (dim_ == 0) return 0.0;
        ComplexMatrix g = gram_ * a;
        double scale = std::max(1.0, max_abs(g));
        return max_abs(g - g.adjoint()) / scale;
    }

private:
    Index dim_;
    ComplexMatrix gram_;
    ComplexMatrix chol_;
};

struct HermitianEig {
    RealVector eigenvalues;    // ascending
    ComplexMatrix eigenvectors; // columns, gram-orthonormal, A v = lambda v
};

/// Eigendecomposition of a gram-self-adjoint operator. Eigenvectors are
/// orthonormal with respect to the space's Gram form and are genuine
/// eigenvectors of A itself.
inline HermitianEig hermitian_eig(const ComplexMatrix& a, const HermitianSpace& space) {
    require(a.rows() == space.dim() && a.cols() == space.dim(), "hermitian_eig: shape mismatch");
    const double defect = space.self_adjoint_defect(a);
    if (!(defect <= 1e-9)) {
        std::ostringstream os;
        os << "operator is not self-adjoint w.r.t. gram, max asymmetry " << defect;
        fail(os.str());
    }
    if (space.dim() == 0) return {RealVector(0), ComplexMatrix(0, 0)};
    ComplexMatrix tilde = space.op_to_orthonormal(a);
    tilde = 0.5 * (tilde + tilde.adjoint().eval());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(tilde);
    if (es.info() != Eigen::Success) fail("hermitian eigensolver failed");
    return {es.eigenvalues(), space.from_orthonormal(es.eigenvectors())};
}

/// Product of the nonzero eigenvalues of a gram-self-adjoint operator.
/// Eigenvalues below zero_threshold(spectral radius) are dropped; the empty
/// product is 1.
inline double det_star(const ComplexMatrix& a, const HermitianSpace& space) {
    HermitianEig eig = hermitian_eig(a, space);
    double scale = eig.eigenvalues.size() ? eig.eigenvalues.cwiseAbs().maxCoeff() : 0.0;
    const double tol = zero_threshold(scale);
    double log_abs = 0.0;
    int sign = 1;
    for (Index i = 0; i < eig.eigenvalues.size(); ++i) {
        double ev = eig.eigenvalues(i);
        if (std::abs(ev) <= tol) continue;
        log_abs += std::log(std::abs(ev));
        if (ev < 0) sign = -sign;
    }
    return sign * std::exp(log_abs);
}

inline double det_star(const ComplexMatrix& a) { return det_star(a, HermitianSpace(a.rows())); }

/// Orthogonal projection on a HermitianSpace: P^2 = P and P gram-self-adjoint.
class OrthoProjection {
public:
    OrthoProjection(HermitianSpace ambient, ComplexMatrix matrix)
        : ambient_(std::move(ambient)), p_(std::move(matrix)) {
        require(p_.rows() == ambient_.dim() && p_.cols() == ambient_.dim(),
                "projection shape does not match ambient space");
        double idem = max_abs(p_ * p_ - p_);
        if (ambient_.dim() > 0 && !(idem <= 1e-10))
            fail("projection is not idempotent, max defect " + std::to_string(idem));
        double sa = ambient_.self_adjoint_defect(p_);
        if (ambient_.dim() > 0 && !(sa <= 1e-9))
            fail("projection is not gram-self-adjoint, max asymmetry " + std::to_string(sa));
    }

    /// Projection onto the column span of basis (columns need not be
    /// orthonormal, only independent).
    static OrthoProjection onto_span(const HermitianSpace& ambient, const ComplexMatrix& basis) {
        require(basis.rows() == ambient.dim(), "onto_span: basis rows mismatch");
        if (basis.cols() == 0)
            return OrthoProjection(ambient, ComplexMatrix::Zero(ambient.dim(), ambient.dim()));
        ComplexMatrix g = basis.adjoint() * ambient.gram() * basis;
        ComplexMatrix p = basis * g.ldlt().solve(basis.adjoint() * ambient.gram());
        return OrthoProjection(ambient, p);
    }

    const HermitianSpace& ambient() const { return ambient_; }
    const ComplexMatrix& matrix() const { return p_; }
    Index rank() const {
        double tr = p_.trace().real();
        return static_cast<Index>(std::llround(tr));
    }

private:
    HermitianSpace ambient_;
    ComplexMatrix p_;
};

/// det*(Id - P1 - P2 + P1 P2 + P2 P1)^{1/4}. Agrees with
/// |det(P1 restricted Im(P2 P1) -> Im(P1 P2))|; a pair of projections onto
/// the same line at angle theta yields cos(theta). Zero-dimensional
/// restriction gives 1.
inline double projection_pair_detstar(const OrthoProjection& p1, const OrthoProjection& p2) {
    require(p1.ambient().dim() == p2.ambient().dim(),
            "projection_pair_detstar: ambient dimensions differ");
    const ComplexMatrix& a = p1.matrix();
    const ComplexMatrix& b = p2.matrix();
    ComplexMatrix m = ComplexMatrix::Identity(a.rows(), a.cols()) - a - b + a * b + b * a;
    double d = det_star(m, p1.ambient());
    return std::pow(std::abs(d), 0.25);
}

// ---------------------------------------------------------------------------
// Subspace utilities (standard metric). Subspaces are matrices whose columns
// form an orthonormal basis; zero columns denote the zero subspace.
// ---------------------------------------------------------------------------

/// Orthonormal basis of the column space, rank decided at zero_threshold of
/// the largest singular value.
inline ComplexMatrix orthonormal_span(const ComplexMatrix& m) {
    if (m.cols() == 0 || m.rows() == 0) return ComplexMatrix::Zero(m.rows(), 0);
    Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeThinU);
    double tol = zero_threshold(svd.singularValues()(0));
    Index r = 0;
    while (r < svd.singularValues().size() && svd.singularValues()(r) > tol) ++r;
    return svd.matrixU().leftCols(r);
}

/// Orthonormal basis of the orthogonal complement of span(b) inside C^n.
inline ComplexMatrix orth_complement(const ComplexMatrix& b, Index n) {
    require(b.rows() == n || b.cols() == 0, "orth_complement: row count mismatch");
    if (b.cols() == 0) return ComplexMatrix::Identity(n, n);
    Eigen::JacobiSVD<ComplexMatrix> svd(ComplexMatrix(b), Eigen::ComputeFullU);
    return svd.matrixU().rightCols(n - b.cols());
}

/// Principal angles' cosines between two orthonormal-column subspaces,
/// descending in [0,1].
inline RealVector principal_cosines(const ComplexMatrix& b1, const ComplexMatrix& b2) {
    if (b1.cols() == 0 || b2.cols() == 0) return RealVector(0);
    Eigen::JacobiSVD<ComplexMatrix> svd(ComplexMatrix(b1.adjoint() * b2));
    return svd.singularValues();
}

/// Subspace equality is tested via principal angles at this threshold.
inline constexpr double kSubspaceTol = 1e-8;

/// Orthonormal basis of span(b1) intersect span(b2), directions where the
/// principal cosine exceeds 1 - kSubspaceTol.
inline ComplexMatrix intersect_subspaces(const ComplexMatrix& b1, const ComplexMatrix& b2) {
    if (b1.cols() == 0 || b2.cols() == 0) return ComplexMatrix::Zero(b1.rows(), 0);
    Eigen::JacobiSVD<ComplexMatrix> svd(ComplexMatrix(b1.adjoint() * b2), Eigen::ComputeFullU);
    Index r = 0;
    while (r < svd.singularValues().size() && svd.singularValues()(r) >= 1.0 - kSubspaceTol) ++r;
    ComplexMatrix raw = b1 * svd.matrixU().leftCols(r);
    return orthonormal_span(raw);
}

/// Largest principal-angle sine between two subspaces, computed as
/// ||(I - B2 B2^H) B1||_2 so values near zero stay fully resolved; 1 if the
/// dimensions differ.
inline double subspace_distance(const ComplexMatrix& b1, const ComplexMatrix& b2) {
    if (b1.cols() != b2.cols()) return 1.0;
    if (b1.cols() == 0) return 0.0;
    ComplexMatrix residue = b1 - b2 * (b2.adjoint() * b1);
    Eigen::JacobiSVD<ComplexMatrix> svd(residue);
    return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

/// Random-access block-diagonal assembly.
inline ComplexMatrix block_diag(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix m = ComplexMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
    m.topLeftCorner(a.rows(), a.cols()) = a;
    m.bottomRightCorner(b.rows(), b.cols()) = b;
    return m;
}

}  // namespace adtor
