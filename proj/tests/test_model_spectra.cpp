#include "adtor/model_spectra.hpp"
#include "adtor/random_gen.hpp"
#include "adtor/verify_suite.hpp"

#include <catch2/catch.hpp>

using namespace adtor;

TEST_CASE("phase branches of constant matrices") {
    PhaseBranches pb = phase_branches(family_constant(ComplexMatrix::Identity(3, 3)), {-0.5, 0.5});
    REQUIRE(pb.count() == 3);
    for (Index j = 0; j < 3; ++j)
        for (double v : pb.values[static_cast<size_t>(j)]) CHECK(v == Approx(0.0).margin(1e-12));

    ComplexMatrix c = ComplexMatrix::Zero(2, 2);
    c(0, 0) = std::exp(Complex(0.0, M_PI / 3.0));
    c(1, 1) = std::exp(Complex(0.0, -M_PI / 3.0));
    pb = phase_branches(family_constant(c), {-0.5, 0.5});
    std::vector<double> endpoints{pb.values[0].front(), pb.values[1].front()};
    std::sort(endpoints.begin(), endpoints.end());
    CHECK(endpoints[0] == Approx(-M_PI / 3.0).margin(1e-12));
    CHECK(endpoints[1] == Approx(M_PI / 3.0).margin(1e-12));
}

TEST_CASE("phase branch of a truncated exponential tracks lambda") {
    const double a = 1.0;
    UnitaryFamily fam{1, 3, 1.0, [a](double lam) {
                          Complex f = 0.0, term = 1.0;
                          for (int k = 0; k <= 3; ++k) {
                              f += term;
                              term *= Complex(0.0, a * lam) / static_cast<double>(k + 1);
                          }
                          return ComplexMatrix(f * ComplexMatrix::Identity(1, 1));
                      }};
    PhaseBranches pb = phase_branches(fam, {-0.05, 0.05});
    for (size_t i = 0; i < pb.grid.size(); ++i)
        CHECK(pb.values[0][i] == Approx(pb.grid[i]).margin(1e-6));
}

TEST_CASE("a too-coarse grid is rejected with a finer-grid hint") {
    UnitaryFamily fam{1, 1, 2.0, [](double lam) {
                          return ComplexMatrix(std::exp(Complex(0.0, std::atan(10.0 * lam))) *
                                               ComplexMatrix::Identity(1, 1));
                      }};
    try {
        phase_branches(fam, {-1.0, 1.0}, 0.5);
        FAIL("expected branch-jump failure");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("finer grid") != std::string::npos);
    }
}

TEST_CASE("lambda roots of the identity family") {
    LambdaSet roots = lambda_roots(family_constant(ComplexMatrix::Identity(2, 2)), 1.0,
                                   {0.0, 2.0 * M_PI - 1e-9});
    REQUIRE(roots.roots.size() == 3);
    CHECK(roots.roots[0].lambda == Approx(M_PI / 2.0));
    CHECK(roots.roots[1].lambda == Approx(M_PI));
    CHECK(roots.roots[2].lambda == Approx(3.0 * M_PI / 2.0));
    for (const auto& rt : roots.roots) {
        CHECK(rt.multiplicity == 2);
        CHECK(rt.residual < 1e-9);
    }
}

TEST_CASE("lambda roots of minus identity") {
    LambdaSet roots = lambda_roots(family_constant(-ComplexMatrix::Identity(1, 1)), 1.0, {0.0, M_PI});
    REQUIRE(roots.roots.size() == 2);
    CHECK(roots.roots[0].lambda == Approx(M_PI / 4.0));
    CHECK(roots.roots[1].lambda == Approx(3.0 * M_PI / 4.0));
}

TEST_CASE("boundary mode uses the half phase factor") {
    LambdaSet roots = lambda_roots(family_constant(ComplexMatrix::Identity(1, 1)), 1.0,
                                   {0.0, 2.0 * M_PI - 1e-9}, SpectrumMode::Boundary);
    REQUIRE(roots.roots.size() == 1);  // 2R lambda = 2 pi k -> lambda = pi k
    CHECK(roots.roots[0].lambda == Approx(M_PI));
}

TEST_CASE("root count stays within the density bound") {
    Rng rng(89);
    for (int i = 0; i < 10; ++i) {
        Index m = rng.uniform_index(1, 4);
        ComplexMatrix c = verify::detail::random_conjugation_closed_unitary(rng, m);
        double r = 1.0 + 30.0 * rng.uniform();
        double w = 2.0;
        LambdaSet roots = lambda_roots(family_constant(c), r, {0.0, w});
        long count = 0;
        for (const auto& rt : roots.roots) count += rt.multiplicity;
        CHECK(count <= m * (static_cast<long>(std::ceil(2.0 * r * w / M_PI)) + 1));
    }
}

TEST_CASE("Lambda_R is symmetric under lambda -> -lambda with theta -> -theta") {
    Rng rng(97);
    ComplexMatrix c = verify::detail::random_conjugation_closed_unitary(rng, 4);
    double r = 3.0;
    LambdaSet pos = lambda_roots(family_constant(c), r, {0.0, 2.0});
    LambdaSet neg = lambda_roots(family_constant(c), r, {-2.0, 0.0});
    std::vector<double> a = pos.lambdas(), b = neg.lambdas();
    REQUIRE(a.size() == b.size());
    std::reverse(b.begin(), b.end());
    for (size_t i = 0; i < a.size(); ++i) CHECK(a[i] == Approx(-b[i]).margin(1e-10));
}

TEST_CASE("degree-1 family roots match the linearized closed form") {
    const double a = 0.01, r = 10.0;
    UnitaryFamily fam{1, 1, 1.0, [a](double lam) {
                          return ComplexMatrix((1.0 + Complex(0.0, a * lam)) *
                                               ComplexMatrix::Identity(1, 1));
                      }};
    LambdaSet roots = lambda_roots(fam, r, {0.0, 0.45});
    std::vector<double> expect;
    for (long k = 1; k <= 2; ++k) expect.push_back(2.0 * M_PI * k / (4.0 * r + a));
    REQUIRE(roots.roots.size() == expect.size());
    for (size_t i = 0; i < expect.size(); ++i)
        CHECK(roots.roots[i].lambda == Approx(expect[i]).margin(1e-10));

    // stronger drift a = 0.1: the first root still matches (4R + a) to 1e-10
    const double a2 = 0.1;
    UnitaryFamily fam2{1, 1, 1.0, [a2](double lam) {
                           return ComplexMatrix((1.0 + Complex(0.0, a2 * lam)) *
                                                ComplexMatrix::Identity(1, 1));
                       }};
    LambdaSet first = lambda_roots(fam2, r, {0.0, 0.2});
    REQUIRE(first.roots.size() == 1);
    CHECK(first.roots[0].lambda == Approx(2.0 * M_PI / (4.0 * r + a2)).margin(1e-10));
}

TEST_CASE("iterative solver agrees with the closed-form path on constant input") {
    Rng rng(211);
    for (int trial = 0; trial < 8; ++trial) {
        Index m = rng.uniform_index(1, 4);
        ComplexMatrix c = verify::detail::random_conjugation_closed_unitary(rng, m);
        double r = 2.0 + 10.0 * rng.uniform();
        // same matrix, once as a constant family (closed form), once dressed
        // as a degree-1 family with vanishing drift (bracketing + Newton)
        LambdaSet closed = lambda_roots(family_constant(c), r, {0.0, 1.5});
        UnitaryFamily dressed{m, 1, 2.0, [c](double) { return c; }};
        LambdaSet iterated = lambda_roots(dressed, r, {0.0, 1.5});
        std::vector<double> a = closed.lambdas(), b = iterated.lambdas();
        REQUIRE(a.size() == b.size());
        for (size_t i = 0; i < a.size(); ++i) CHECK(a[i] == Approx(b[i]).margin(1e-12));
    }
}

TEST_CASE("near-root refinement: exact input is a fixed point") {
    Rng rng(101);
    ComplexMatrix basis = rng.subspace(3, 2);
    ComplexMatrix c = 2.0 * (basis * basis.adjoint()) - ComplexMatrix::Identity(3, 3);
    const double r = 50.0;
    double z0 = 2.0 * M_PI * 5.0 / (4.0 * r);  // exact root of the theta = 0 branch
    ComplexVector v = basis.col(0);
    auto refined = near_root_refine(family_constant(c), r, z0, v);
    bool found = false;
    for (const auto& rr : refined) {
        if (rr.w.norm() > 0.5) {
            found = true;
            CHECK(rr.z == Approx(z0).margin(1e-12));
            CHECK((rr.w - v).norm() < 1e-10);
        }
    }
    CHECK(found);
}

TEST_CASE("near-root refinement rejects vectors violating the hypothesis") {
    ComplexMatrix c = -ComplexMatrix::Identity(2, 2);
    ComplexVector v(2);
    v << 1.0, 0.0;
    // at a root of the theta = 0 family this v sits entirely on the pi branch
    CHECK_THROWS_AS(near_root_refine(family_constant(c), 10.0, 0.0, v), std::invalid_argument);
}

TEST_CASE("lambda_compare vanishes for constant families") {
    Rng rng(103);
    ComplexMatrix c = verify::detail::random_conjugation_closed_unitary(rng, 3);
    double diff = lambda_compare(family_constant(c), 25.0, 0.9, [](double x) { return 1.0 + x; });
    CHECK(diff == Approx(0.0).margin(1e-14));
}

TEST_CASE("lambda_compare counts the root discrepancy of a drifting family") {
    const double a = 0.2, r = 10.0, gamma = 1.0;
    UnitaryFamily fam{1, 1, 2.0, [a](double lam) {
                          return ComplexMatrix((1.0 + Complex(0.0, a * lam)) *
                                               ComplexMatrix::Identity(1, 1));
                      }};
    // counts: floor(gamma (4R + atan-slope a) / 2pi) vs floor(gamma 4R / 2pi)
    double diff = lambda_compare(fam, r, gamma, [](double) { return 1.0; });
    double n_moving = 0.0, n_frozen = std::floor(gamma * 4.0 * r / (2.0 * M_PI));
    for (long k = 1;; ++k) {
        // root of 4R z + atan(a z) = 2 pi k below gamma
        double z = 2.0 * M_PI * k / (4.0 * r + a);
        for (int it = 0; it < 50; ++it)
            z = (2.0 * M_PI * k - std::atan(a * z)) / (4.0 * r);
        if (z >= gamma) break;
        n_moving += 1.0;
    }
    CHECK(diff == Approx(std::abs(n_moving - n_frozen)).margin(1e-12));
}
