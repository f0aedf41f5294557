#include "adtor/mayer_vietoris.hpp"
#include "adtor/random_gen.hpp"

#include <catch2/catch.hpp>

using namespace adtor;

namespace {
/// Two lines at angle theta inside a 2-dimensional H^0 block.
std::pair<LimitingSubspace, LimitingSubspace> angle_pair(double theta) {
    YModel y(1, {2});
    ComplexMatrix e1(2, 1), f(2, 1);
    e1 << 1.0, 0.0;
    f << std::cos(theta), std::sin(theta);
    return {LimitingSubspace(y, {e1}), LimitingSubspace(y, {f})};
}
}  // namespace

TEST_CASE("L-sequence of a coincident pair is exact with vanishing delta") {
    Rng rng(107);
    LimitingSubspace l = random_limiting_subspace(rng, YModel(2, {2, 1}));
    LSequence seq = build_l_sequence(l, l);
    CHECK(is_exact(seq.complex));
    for (Index d : seq.d) CHECK(d == 0);
    CHECK(torsion_l(seq) == Approx(1.0).margin(1e-10));
}

TEST_CASE("L-sequence exactness for random pairs") {
    Rng rng(109);
    // includes a cross-section with a vanishing middle cohomology
    for (const YModel& y :
         {YModel(1, {2}), YModel(2, {2, 1}), YModel(3, {3, 2, 3}), YModel(3, {1, 0, 1})}) {
        for (int i = 0; i < 10; ++i) {
            auto [l1, l2] = random_limiting_pair(rng, y);
            LSequence seq = build_l_sequence(l1, l2);
            CHECK(is_exact(seq.complex));
        }
    }
}

TEST_CASE("angle configuration: torsion is a power of the angle sine") {
    const double theta = 0.7;
    auto [l1, l2] = angle_pair(theta);
    LSequence seq = build_l_sequence(l1, l2);
    // the only map is delta at degrees (2,3) with |det| = sin(theta), so the
    // bare torsion is sin(theta)^{-1}
    CHECK(torsion_l(seq) == Approx(1.0 / std::sin(theta)).epsilon(1e-10));
    TorsionLClosedForm cf = torsion_l_closed_form(l1, l2);
    CHECK(cf.value == Approx(1.0 / std::sin(theta)).epsilon(1e-10));
}

TEST_CASE("orthogonal lines: beta vanishes on the intersection degrees") {
    auto [l1, l2] = angle_pair(M_PI / 2.0);
    LSequence seq = build_l_sequence(l1, l2);
    for (Index p = 0; p <= 1; ++p) CHECK(seq.b[static_cast<size_t>(p)] == 0);
    CHECK(is_exact(seq.complex));
}

TEST_CASE("closed form matches brute force on random pairs") {
    Rng rng(113);
    for (const YModel& y : {YModel(1, {3}), YModel(2, {2, 2}), YModel(3, {3, 2, 3})}) {
        for (int i = 0; i < 12; ++i) {
            auto [l1, l2] = random_limiting_pair(rng, y);
            double brute = torsion_l(build_l_sequence(l1, l2));
            TorsionLClosedForm cf = torsion_l_closed_form(l1, l2);
            CHECK(brute == Approx(cf.value).epsilon(1e-9));
            CHECK(cf.abs_form == Approx(cf.value).epsilon(1e-9));
        }
    }
}

TEST_CASE("coincident pair closed form is 1") {
    Rng rng(127);
    LimitingSubspace l = random_limiting_subspace(rng, YModel(2, {3, 2}));
    TorsionLClosedForm cf = torsion_l_closed_form(l, l);
    CHECK(cf.value == Approx(1.0).margin(1e-10));
}

TEST_CASE("asymptotic RHS for the full pair on h = [1] is 2^{-1/2}") {
    YModel y(1, {1});
    LimitingSubspace l(y, {ComplexMatrix::Identity(1, 1)});
    // chi'(C12) = -1, chi' = 0, det* factors trivial
    for (double r : {1.0, 100.0})
        CHECK(mv_asymptotic_rhs(l, l, r) == Approx(std::pow(2.0, -0.5)).epsilon(1e-12));
}

TEST_CASE("asymptotic RHS scales as R^{chi'}") {
    Rng rng(131);
    auto [l1, l2] = random_limiting_pair(rng, YModel(2, {3, 2}));
    ChiBreakdown chi = chi_prime_top(l1, l2);
    double v1 = mv_asymptotic_rhs(l1, l2, 100.0);
    double v2 = mv_asymptotic_rhs(l1, l2, 1000.0);
    CHECK(v2 / v1 == Approx(std::pow(10.0, chi.chi_prime)).epsilon(1e-10));
}

TEST_CASE("scaled diagram reproduces the asymptotic RHS exactly at leading order") {
    Rng rng(137);
    for (const YModel& y : {YModel(1, {2}), YModel(2, {2, 1}), YModel(3, {3, 2, 3})}) {
        for (int i = 0; i < 6; ++i) {
            auto [l1, l2] = random_limiting_pair(rng, y);
            for (double r : {10.0, 1000.0}) {
                ScaledDiagram dgm(l1, l2, r);
                CHECK(mv_torsion_scaled(dgm) ==
                      Approx(mv_asymptotic_rhs(l1, l2, r)).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("adding L^2 blocks leaves the ratio unchanged") {
    Rng rng(139);
    auto [l1, l2] = random_limiting_pair(rng, YModel(2, {2, 2}));
    ScaledDiagram plain(l1, l2, 50.0);
    ScaledDiagram padded(l1, l2, 50.0, {2, 1, 0}, {1, 2, 1});
    double rhs = mv_asymptotic_rhs(l1, l2, 50.0);
    CHECK(mv_torsion_scaled(plain) / rhs == Approx(1.0).margin(1e-10));
    CHECK(mv_torsion_scaled(padded) / rhs == Approx(1.0).margin(1e-10));
}

TEST_CASE("perturbed diagrams converge with O(1/R) error") {
    Rng rng(149);
    auto [l1, l2] = random_limiting_pair(rng, YModel(2, {3, 2}));
    PerturbationHook hook{0.1, 0.1, 0.2, 1234};
    double prev = std::numeric_limits<double>::infinity();
    for (double r : {1e2, 1e3, 1e4}) {
        ScaledDiagram dgm(l1, l2, r, {1, 1, 1}, {1, 1, 1}, hook);
        double err = std::abs(mv_torsion_scaled(dgm) / mv_asymptotic_rhs(l1, l2, r) - 1.0);
        CHECK(err <= prev + 1e-12);
        prev = err;
    }
    CHECK(prev <= 1e-2);
}

TEST_CASE("dimension bookkeeping of the L-sequence") {
    Rng rng(151);
    for (int i = 0; i < 20; ++i) {
        auto [l1, l2] = random_limiting_pair(rng, YModel(2, {3, 2}));
        LSequence seq = build_l_sequence(l1, l2);
        ChiBreakdown chi = chi_prime_top(l1, l2);
        long euler = 0, chi_d = 0, chi_ab = 0;
        for (Index p = 0; p <= 2; ++p) {
            long sgn = (p % 2 == 0) ? 1 : -1;
            euler += sgn * (seq.dim_1bd[static_cast<size_t>(p)] - seq.dim_cap[static_cast<size_t>(p)] +
                            seq.dim_2bd[static_cast<size_t>(p)]);
            chi_d += sgn * seq.d[static_cast<size_t>(p)];
            chi_ab += sgn * (seq.a[static_cast<size_t>(p)] - seq.b[static_cast<size_t>(p)]);
            CHECK(seq.dim_cap[static_cast<size_t>(p)] ==
                  seq.a[static_cast<size_t>(p)] + seq.b[static_cast<size_t>(p)]);
        }
        CHECK(euler == 0);
        CHECK(chi_d == chi.chi_prime);
        CHECK(chi_ab == chi.chi_prime_c12);
    }
}
