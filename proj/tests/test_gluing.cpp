#include "adtor/gluing.hpp"
#include "adtor/random_gen.hpp"
#include "adtor/verify_suite.hpp"

#include <catch2/catch.hpp>

using namespace adtor;

TEST_CASE("model zeta gluing is exact for the full-space pair") {
    YModel y(1, {1});
    LimitingSubspace l(y, {ComplexMatrix::Identity(1, 1)});
    for (double r : {1.0, 10.0, 100.0}) {
        GluingTerms t = zeta_gluing_terms(l, l, r);
        CHECK(std::abs(t.lhs - t.rhs) < 1e-12);
        CHECK(t.chi_euler_y == 1);
        CHECK(t.chi_prime_c12 == -1);
    }
}

TEST_CASE("model zeta gluing for random pairs") {
    Rng rng(157);
    for (const YModel& y : {YModel(1, {2}), YModel(2, {2, 1}), YModel(3, {3, 2, 3})}) {
        for (int i = 0; i < 10; ++i) {
            auto [l1, l2] = random_limiting_pair(rng, y);
            GluingScenario s(l1, l2, {1.0, 10.0, 100.0});
            for (const CheckResult& c : zeta_gluing_model_check(s)) {
                INFO(c.name << " " << c.detail);
                CHECK(c.pass);
                CHECK(c.residual <= 1e-10);
            }
        }
    }
}

TEST_CASE("side determinants carry no det* term") {
    // spectra of the boundary matrices lie in {-1, +1}; the formula is pure
    // chi'(C_bd) log R - chi log 2, so doubling R shifts by chi' log 2 only
    Rng rng(163);
    auto [l1, l2] = random_limiting_pair(rng, YModel(2, {2, 2}));
    ScatteringMatrix c1 = scattering_from_subspace(l1);
    long chi1 = chi_prime_of(c_bd(c1, 1));
    double z1 = model_weighted_zeta_prime0(ModelSide::Side1, l1, l2, 5.0);
    double z2 = model_weighted_zeta_prime0(ModelSide::Side1, l1, l2, 10.0);
    CHECK(z2 - z1 == Approx(chi1 * std::log(2.0)).margin(1e-12));
}

TEST_CASE("circle gluing equals log 2 for the acceptance geometries") {
    for (auto [a, b, r] : {std::tuple{1.0, 1.0, 0.5}, {1.0, 2.0, 1.0}, {0.5, 3.0, 2.0}}) {
        CircleReport rep = circle_gluing_check(CircleGeometry(a, b), r);
        INFO(rep.combination.detail);
        CHECK(rep.combination.pass);
        CHECK(rep.combination.residual < 1e-10);
    }
}

TEST_CASE("circle combination is independent of the stretch") {
    CircleGeometry g(1.3, 0.4);
    double first = 0.0;
    bool have = false;
    for (double r : {0.5, 1.0, 2.0}) {
        CircleReport rep = circle_gluing_check(g, r);
        double combo =
            0.5 * (rep.zeta_glued - rep.zeta_side1 - rep.zeta_side2) - std::log(rep.torsion_mv);
        if (!have) {
            first = combo;
            have = true;
        }
        CHECK(combo == Approx(first).margin(1e-12));
    }
}

TEST_CASE("circle torsion matches the explicit harmonic-representative value") {
    CircleGeometry g(1.0, 2.0);
    const double r = 1.0;
    double l1 = g.a + 2.0 * r, l2 = g.b + 2.0 * r, l = l1 + l2;
    CHECK(circle_mv_torsion(g, r) == Approx(std::sqrt(l1 * l2) / l).epsilon(1e-12));
}

TEST_CASE("circle spectra match the finite-difference oracle") {
    for (const CheckResult& c : circle_fd_crosscheck(CircleGeometry(1.0, 2.0), 1.0)) {
        INFO(c.name << " residual " << c.residual);
        CHECK(c.pass);
    }
}

TEST_CASE("full report aggregates scenarios and flags corrupted data by name") {
    Rng rng(167);
    auto [l1, l2] = random_limiting_pair(rng, YModel(1, {2}));
    Report rep = verify::full_report({GluingScenario(l1, l2, {1.0, 10.0})},
                                     {{CircleGeometry(1.0, 1.0), 1.0}});
    CHECK(rep.all_pass());
    CHECK(rep.checks.size() >= 3);

    // empty scenario list: empty report, success
    Report empty = verify::full_report({}, {});
    CHECK(empty.checks.empty());
    CHECK(empty.all_pass());

    // deliberately corrupted splitting data: the invariant is named
    ComplexMatrix bad(2, 1);
    bad << 2.0, 0.0;  // not orthonormal
    try {
        LimitingSubspace broken(YModel(1, {2}), {bad});
        FAIL("expected validation failure");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("orthonormal") != std::string::npos);
    }
}

TEST_CASE("finite-difference oracle accuracy on a known spectrum") {
    std::vector<double> eigs = fd_eigenvalues(Laplace1D::Dirichlet, 2.0, 20);
    REQUIRE(eigs.size() == 20);
    for (size_t k = 1; k <= eigs.size(); ++k) {
        double exact = std::pow(M_PI * static_cast<double>(k) / 2.0, 2.0);
        CHECK(std::abs(eigs[k - 1] - exact) / exact < 2e-4);
    }
}
