#include "adtor/scattering.hpp"
#include "adtor/random_gen.hpp"

#include <catch2/catch.hpp>

using namespace adtor;

namespace {
const YModel kY21(2, {2, 1});
}

TEST_CASE("du operators satisfy the Clifford relations") {
    Rng rng(53);
    for (const YModel& y : {YModel(1, {1}), kY21, YModel(3, {3, 2, 3})}) {
        DuOperators ops(y);
        Index d = y.total_dim();
        CHECK(max_abs(ops.du_wedge * ops.du_wedge) == 0.0);
        CHECK(max_abs(ops.i_du * ops.i_du) == 0.0);
        CHECK(max_abs(ops.cdu * ops.cdu + ComplexMatrix::Identity(d, d)) < 1e-14);
        CHECK(max_abs(ops.cdu + ops.cdu.adjoint()) < 1e-14);
        // du-wedge and interior product are mutually adjoint
        CHECK(max_abs(ops.du_wedge.adjoint() - ops.i_du) < 1e-14);
    }
    (void)rng;
}

TEST_CASE("scattering matrix from a subspace: full, zero and random") {
    // L = whole space -> C acts as +1 on H^p and -1 on H^p du
    LimitingSubspace full(kY21, {ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(1, 1)});
    ScatteringMatrix cfull = scattering_from_subspace(full);
    CHECK(max_abs(cfull.u(0) - ComplexMatrix::Identity(2, 2)) < 1e-14);
    CHECK(max_abs(cfull.v(0) + ComplexMatrix::Identity(2, 2)) < 1e-14);

    LimitingSubspace zero(kY21, {ComplexMatrix::Zero(2, 0), ComplexMatrix::Zero(1, 0)});
    ScatteringMatrix czero = scattering_from_subspace(zero);
    CHECK(max_abs(czero.u(0) + ComplexMatrix::Identity(2, 2)) < 1e-14);

    Rng rng(59);
    for (int i = 0; i < 20; ++i) {
        LimitingSubspace l = random_limiting_subspace(rng, kY21);
        ScatteringMatrix c = scattering_from_subspace(l);
        CHECK(c.involutive());
        CHECK(c.anticommutes_with_cdu());
        DuOperators ops(kY21);
        ComplexMatrix cf = c.full();
        CHECK(max_abs(cf * ops.cdu + ops.cdu * cf) < 1e-12);
        CHECK(max_abs(cf.adjoint() * cf - ComplexMatrix::Identity(cf.rows(), cf.cols())) < 1e-12);
    }
}

TEST_CASE("limiting_from_scattering round-trips") {
    Rng rng(61);
    for (int i = 0; i < 20; ++i) {
        LimitingSubspace l = random_limiting_subspace(rng, kY21);
        LimitingSubspace back = limiting_from_scattering(scattering_from_subspace(l));
        for (Index p = 0; p < kY21.top_degree; ++p)
            CHECK(subspace_distance(l.abs_basis(p), back.abs_basis(p)) < 1e-10);
    }
    // identity -> full space, minus identity -> zero space
    ScatteringMatrix cid = scattering_from_subspace(
        LimitingSubspace(kY21, {ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(1, 1)}));
    LimitingSubspace lid = limiting_from_scattering(cid);
    CHECK(lid.abs_dim(0) == 2);
    CHECK(lid.abs_dim(1) == 1);
}

TEST_CASE("c_bd sign bookkeeping") {
    LimitingSubspace full(kY21, {ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(1, 1)});
    ScatteringMatrix c = scattering_from_subspace(full);
    ScatteringMatrix b2 = c_bd(c, 2);
    CHECK(max_abs(b2.u(0) - ComplexMatrix::Identity(2, 2)) < 1e-14);  // +1 on H^p
    CHECK(max_abs(b2.v(0) - ComplexMatrix::Identity(2, 2)) < 1e-14);  // -(-1) = +1 on H^p du
    ScatteringMatrix b1 = c_bd(c, 1);
    CHECK(max_abs(b1.u(0) + ComplexMatrix::Identity(2, 2)) < 1e-14);
    CHECK(max_abs(b1.v(0) + ComplexMatrix::Identity(2, 2)) < 1e-14);
}

TEST_CASE("boundary kernels match the subspace description") {
    Rng rng(67);
    for (int i = 0; i < 15; ++i) {
        auto [l1, l2] = random_limiting_pair(rng, kY21);
        ScatteringMatrix c1 = scattering_from_subspace(l1);
        ScatteringMatrix c2 = scattering_from_subspace(l2);
        ScatteringMatrix b1 = c_bd(c1, 1), b2 = c_bd(c2, 2);
        ScatteringMatrix c12m = c2.inverse() * c1;
        for (Index p = 0; p <= kY21.top_degree; ++p) {
            // expected kernels per degree block
            auto kernel_dim = [](const ScatteringMatrix& m, Index deg) {
                return unit_eigenvalue_count(m.block(deg));
            };
            Index h_p = kY21.h_at(p);
            // ker(C_{1,bd}^p - 1) = L_{1,rel}^p + i_du L_{1,rel}^{p+1}
            Index expect1 = l1.rel_dim(p) + (p + 1 <= kY21.top_degree ? l1.rel_dim(p + 1) : 0);
            CHECK(kernel_dim(b1, p) == expect1);
            // ker(C_{2,bd}^p - 1) = L_{2,abs}^p + du L_{2,abs}^{p-1}
            Index expect2 = l2.abs_dim(p) + (p >= 1 ? l2.abs_dim(p - 1) : 0);
            CHECK(kernel_dim(b2, p) == expect2);
            // ker(C12^p - 1) decomposition
            Index cap_abs = intersect_subspaces(l1.abs_basis(p), l2.abs_basis(p)).cols();
            Index cap_rel = intersect_subspaces(l1.rel_basis(p), l2.rel_basis(p)).cols();
            Index cap_rel_up = (p + 1 <= kY21.top_degree)
                                   ? intersect_subspaces(l1.rel_basis(p + 1), l2.rel_basis(p + 1)).cols()
                                   : 0;
            Index cap_abs_dn =
                (p >= 1) ? intersect_subspaces(l1.abs_basis(p - 1), l2.abs_basis(p - 1)).cols() : 0;
            CHECK(kernel_dim(c12m, p) == cap_abs + cap_rel + cap_rel_up + cap_abs_dn);
            (void)h_p;
        }
    }
}

TEST_CASE("chi invariants") {
    CHECK(chi_euler(YModel(1, {1})) == 1);
    CHECK(chi_euler(YModel(2, {1, 1})) == 0);
    CHECK(chi_euler(YModel(1, {2})) == 2);

    // identity on the whole graded space: chi' = -1 on h = [1]
    YModel y(1, {1});
    ScatteringMatrix id(y, {ComplexMatrix::Identity(1, 1)}, {ComplexMatrix::Identity(1, 1)});
    CHECK(chi_prime_of(id) == -1);
    ScatteringMatrix mid(y, {-ComplexMatrix::Identity(1, 1)}, {-ComplexMatrix::Identity(1, 1)});
    CHECK(chi_prime_of(mid) == 0);
}

TEST_CASE("chi_prime_of agrees with a brute-force eigenvector count") {
    Rng rng(71);
    for (int i = 0; i < 15; ++i) {
        LimitingSubspace l = random_limiting_subspace(rng, kY21);
        ScatteringMatrix c = scattering_from_subspace(l);
        long brute = 0;
        for (Index p = 0; p <= kY21.top_degree; ++p) {
            ComplexMatrix b = c.block(p);
            if (b.rows() == 0) continue;
            Eigen::ComplexEigenSolver<ComplexMatrix> es(b);
            long k = 0;
            for (Index j = 0; j < es.eigenvalues().size(); ++j)
                if (std::abs(es.eigenvalues()(j) - Complex(1.0, 0.0)) < 1e-8) ++k;
            brute += ((p % 2 == 0) ? 1L : -1L) * static_cast<long>(p) * k;
        }
        CHECK(chi_prime_of(c) == brute);
    }
}

TEST_CASE("chi_prime_top: gluing count identity and special cases") {
    // L1 = L2 = span of the H^0 vector on h = [1]: chi' = 0
    YModel y(1, {1});
    LimitingSubspace l(y, {ComplexMatrix::Identity(1, 1)});
    ChiBreakdown chi = chi_prime_top(l, l);
    CHECK(chi.chi_prime == 0);
    CHECK(chi.chi_prime_c12 == -1);

    // both absolute parts zero: the boundary kernels follow the rel/abs
    // pattern and the identity still closes
    LimitingSubspace lz(kY21, {ComplexMatrix::Zero(2, 0), ComplexMatrix::Zero(1, 0)});
    ChiBreakdown cz = chi_prime_top(lz, lz);
    CHECK(cz.chi_prime_c12 - cz.chi_prime_c1bd - cz.chi_prime_c2bd == 2 * cz.chi_prime);

    Rng rng(73);
    for (int i = 0; i < 25; ++i) {
        auto [l1, l2] = random_limiting_pair(rng, kY21);
        ChiBreakdown c = chi_prime_top(l1, l2);
        CHECK(c.chi_prime_c12 - c.chi_prime_c1bd - c.chi_prime_c2bd == 2 * c.chi_prime);
    }
}

TEST_CASE("scattering families: constant and c12") {
    Rng rng(79);
    auto [l1, l2] = random_limiting_pair(rng, kY21);
    ScatteringFamily f1 = ScatteringFamily::constant(scattering_from_subspace(l1));
    ScatteringFamily f2 = ScatteringFamily::constant(scattering_from_subspace(l2));
    CHECK(f1.unitarity_defect() < 1e-12);
    CHECK(f1.reflection_defect() < 1e-12);

    ScatteringFamily f12 = c12(f1, f2);
    CHECK(f12.unitarity_defect() < 1e-12);
    // C12 = C2 C1 for involutive constants
    ComplexMatrix expect = (scattering_from_subspace(l2) * scattering_from_subspace(l1)).full();
    CHECK(max_abs(f12.full_at(0.0) - expect) < 1e-12);

    // same family on both sides gives the identity at lambda = 0
    ScatteringFamily fid = c12(f1, f1);
    CHECK(max_abs(fid.full_at(0.0) -
                  ComplexMatrix::Identity(kY21.total_dim(), kY21.total_dim())) < 1e-12);

    // C1 = Id, C2 = -Id on the whole graded space: C12 = -Id
    auto scalar = [&](double s) {
        std::vector<ComplexMatrix> u, v;
        for (Index p = 0; p < kY21.top_degree; ++p) {
            u.push_back(s * ComplexMatrix::Identity(kY21.h_at(p), kY21.h_at(p)));
            v.push_back(s * ComplexMatrix::Identity(kY21.h_at(p), kY21.h_at(p)));
        }
        return ScatteringFamily::constant(ScatteringMatrix(kY21, u, v));
    };
    ScatteringFamily fneg = c12(scalar(1.0), scalar(-1.0));
    CHECK(max_abs(fneg.full_at(0.0) +
                  ComplexMatrix::Identity(kY21.total_dim(), kY21.total_dim())) < 1e-12);
}

TEST_CASE("truncated series inverse is correct through the common degree") {
    // degree-2 family with noncommuting coefficients: compare c12 against a
    // numerically inverted product on a lambda grid, up to truncation order
    Rng rng(83);
    YModel y(1, {2});
    auto mk = [&](double scale) {
        LimitingSubspace l = random_limiting_subspace(rng, y);
        ScatteringMatrix c0 = scattering_from_subspace(l);
        std::vector<ScatteringMatrix> coef{c0};
        for (int k = 1; k <= 2; ++k) {
            ComplexMatrix g = scale / std::tgamma(k + 1.0) * rng.gaussian_matrix(2, 2);
            coef.emplace_back(y, std::vector<ComplexMatrix>{g}, std::vector<ComplexMatrix>{-g},
                              false);
        }
        return ScatteringFamily(coef, 1.0);
    };
    ScatteringFamily f1 = mk(0.05), f2 = mk(0.05);
    ScatteringFamily f12 = c12(f1, f2);
    for (double lam : {-0.02, 0.01, 0.03}) {
        ComplexMatrix truth = f2.full_at(lam).inverse() * f1.full_at(lam);
        CHECK(max_abs(f12.full_at(lam) - truth) < 1e-5);  // truncation-order agreement
    }
}
