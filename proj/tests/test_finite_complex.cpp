#include "adtor/finite_complex.hpp"
#include "adtor/random_gen.hpp"

#include <catch2/catch.hpp>

using namespace adtor;

namespace {
FiniteComplex short_complex(const ComplexMatrix& a) {
    return FiniteComplex({HermitianSpace(a.cols()), HermitianSpace(a.rows())}, {a});
}
}  // namespace

TEST_CASE("exactness detection") {
    CHECK(is_exact(short_complex(ComplexMatrix::Identity(1, 1))));
    CHECK_FALSE(is_exact(short_complex(ComplexMatrix::Zero(1, 1))));

    Rng rng(5);
    for (int i = 0; i < 10; ++i) CHECK(is_exact(random_exact_complex(rng, 4)));
}

TEST_CASE("short sequence torsion values") {
    ComplexMatrix a = ComplexMatrix::Zero(2, 2);
    a(0, 0) = 2.0;
    a(1, 1) = 3.0;
    // at degrees (0,1) the weighted-determinant formula gives |det A|^{-1};
    // the right-shifted copy at degrees (1,2) carries |det A| itself
    CHECK(torsion(short_complex(a)) == Approx(1.0 / 6.0));
    CHECK(torsion(shift(short_complex(a), 1)) == Approx(6.0));

    CHECK(torsion(short_complex(ComplexMatrix::Identity(3, 3))) == Approx(1.0));
    CHECK(canonical_section_norm(short_complex(ComplexMatrix::Identity(3, 3))) == Approx(1.0));

    ComplexMatrix five = 5.0 * ComplexMatrix::Identity(1, 1);
    CHECK(canonical_section_norm(shift(short_complex(five), 1)) == Approx(5.0));
    CHECK(canonical_section_norm(short_complex(five)) == Approx(0.2));
}

TEST_CASE("torsion equals the canonical section norm") {
    Rng rng(17);
    for (int i = 0; i < 40; ++i) {
        FiniteComplex c = random_exact_complex(rng, rng.uniform_index(1, 5));
        double t = torsion(c);
        CHECK(canonical_section_norm(c) == Approx(t).epsilon(1e-9));
    }
}

TEST_CASE("non-exact complexes are rejected by torsion, naming the degree") {
    std::vector<HermitianSpace> spaces{HermitianSpace(1), HermitianSpace(1)};
    std::vector<ComplexMatrix> diffs{ComplexMatrix::Zero(1, 1)};
    FiniteComplex c(std::move(spaces), std::move(diffs));
    try {
        torsion(c);
        FAIL("expected failure");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("degree") != std::string::npos);
    }
}

TEST_CASE("shift calculus") {
    Rng rng(29);
    FiniteComplex c = random_exact_complex(rng, 3);
    double t = torsion(c);
    CHECK(torsion(shift(c, 0)) == Approx(t));
    CHECK(torsion(shift(c, 1)) * t == Approx(1.0).epsilon(1e-9));
    CHECK(torsion(shift(c, 2)) == Approx(t).epsilon(1e-10));
}

TEST_CASE("direct sum calculus") {
    Rng rng(31);
    FiniteComplex c1 = random_exact_complex(rng, 4);
    FiniteComplex c2 = random_exact_complex(rng, 2);
    CHECK(torsion(direct_sum(c1, c2)) == Approx(torsion(c1) * torsion(c2)).epsilon(1e-10));

    // summing with a trivial complex changes nothing
    FiniteComplex trivial({HermitianSpace(0), HermitianSpace(0)}, {ComplexMatrix::Zero(0, 0)});
    CHECK(torsion(direct_sum(c1, trivial)) == Approx(torsion(c1)));
}

TEST_CASE("torsion is invariant under gram-aware unitary change of basis") {
    Rng rng(37);
    FiniteComplex c = random_exact_complex(rng, 3);
    // change each basis by a unitary of the standard frame; transform the
    // grams and differentials accordingly
    std::vector<ComplexMatrix> q;
    std::vector<HermitianSpace> spaces;
    for (Index j = 0; j <= c.length(); ++j) {
        q.push_back(rng.unitary(c.space(j).dim()));
        spaces.emplace_back(q.back().adjoint() * c.space(j).gram() * q.back());
    }
    std::vector<ComplexMatrix> diffs;
    for (Index j = 0; j < c.length(); ++j)
        diffs.push_back(q[static_cast<size_t>(j) + 1].adjoint() * c.differential(j) *
                        q[static_cast<size_t>(j)]);
    FiniteComplex moved(std::move(spaces), std::move(diffs));
    CHECK(torsion(moved) == Approx(torsion(c)).epsilon(1e-9));
}
