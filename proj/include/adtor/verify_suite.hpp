#pragma once

// The full verification suite: one entry per acceptance criterion, shared by
// the acceptance test binary and the `adtor verify` subcommand. Each
// criterion returns CheckResults with the worst residual observed; the
// aggregate report is machine-readable (see report.hpp).

#include "adtor/gluing.hpp"
#include "adtor/model_spectra.hpp"
#include "adtor/random_gen.hpp"
#include "adtor/report.hpp"

namespace adtor::verify {

namespace detail {
inline CheckResult summary(const std::string& name, double worst, double tol, long cases,
                           const std::string& provenance, std::string extra = {}) {
    CheckResult c;
    c.name = name;
    c.residual = worst;
    c.pass = worst <= tol;
    c.provenance = provenance;
    std::ostringstream os;
    os << cases << " cases, tol " << tol;
    if (!extra.empty()) os << "; " << extra;
    c.detail = os.str();
    return c;
}

inline std::vector<YModel> ymodel_pool() {
    return {
        YModel(1, {1}), YModel(1, {2}), YModel(1, {3}),
        YModel(2, {1, 1}), YModel(2, {2, 1}), YModel(2, {3, 2}),
        YModel(3, {1, 1, 1}), YModel(3, {2, 1, 2}), YModel(3, {3, 2, 3}),
    };
}

/// |det(P1 : Im(P2 P1) -> Im(P1 P2))| by explicit rank-revealing basis
/// construction; the independent route for the projection-pair lemma.
inline double projection_restriction_det(const ComplexMatrix& p1, const ComplexMatrix& p2) {
    ComplexMatrix b21 = orthonormal_span(p2 * p1);  // Im(P2 P1)
    ComplexMatrix b12 = orthonormal_span(p1 * p2);  // Im(P1 P2)
    require(b21.cols() == b12.cols(), "projection oracle: rank mismatch");
    if (b21.cols() == 0) return 1.0;
    ComplexMatrix m = b12.adjoint() * (p1 * b21);
    return std::abs(m.determinant());
}

/// Unitary with prescribed conjugation-closed eigenphases in a random frame.
inline ComplexMatrix random_conjugation_closed_unitary(Rng& rng, Index dim,
                                                       std::vector<double>* phases_out = nullptr) {
    std::vector<double> phases;
    Index left = dim;
    while (left > 0) {
        double pick = rng.uniform();
        if (left >= 2 && pick < 0.5) {
            double a = rng.uniform() * (M_PI - 0.2) + 0.1;
            phases.push_back(a);
            phases.push_back(-a);
            left -= 2;
        } else if (pick < 0.75) {
            phases.push_back(0.0);
            --left;
        } else {
            phases.push_back(M_PI);
            --left;
        }
    }
    ComplexMatrix q = rng.unitary(dim);
    ComplexVector d(dim);
    for (Index i = 0; i < dim; ++i) d(i) = std::exp(Complex(0.0, phases[static_cast<size_t>(i)]));
    if (phases_out) *phases_out = phases;
    return q * d.asDiagonal() * q.adjoint();
}
}  // namespace detail

/// Criterion 1: the three closed-form cases of the single-matrix model
/// determinant, and agreement with the Euler-Maclaurin continuation over the
/// (theta, R) grid.
inline std::vector<CheckResult> criterion_determinant_closed_forms() {
    std::vector<CheckResult> out;
    double worst_cases = 0.0;
    for (double r : {0.5, 1.0, 10.0, 100.0}) {
        ComplexMatrix one = ComplexMatrix::Identity(1, 1);
        worst_cases = std::max(worst_cases,
                               std::abs(model_zeta_prime0(one, r) - std::log(4.0 * r)));
        worst_cases = std::max(worst_cases,
                               std::abs(model_zeta_prime0(-one, r) - std::log(2.0)));
        for (double alpha : {M_PI / 3.0, 0.4, 2.5}) {
            ComplexMatrix c = ComplexMatrix::Zero(2, 2);
            c(0, 0) = std::exp(Complex(0.0, alpha));
            c(1, 1) = std::exp(Complex(0.0, -alpha));
            double expect = std::log(2.0 * r) * 0.0 + 2.0 * std::log(2.0) +
                            0.5 * std::log(std::pow((2.0 - 2.0 * std::cos(alpha)) / 4.0, 2.0));
            worst_cases = std::max(worst_cases, std::abs(model_zeta_prime0(c, r) - expect));
            // the same value through two progression branches
            double via_prog = 2.0 * progression_zeta_prime0(alpha, r);
            worst_cases = std::max(worst_cases, std::abs(model_zeta_prime0(c, r) - via_prog));
        }
    }
    out.push_back(detail::summary("single-matrix determinant closed forms (C=1, C=-1, phases +-alpha)",
                                  worst_cases, 1e-10, 4 * 5, "model_zeta_prime0"));

    double worst_em = 0.0;
    long n = 0;
    for (int k = 0; k <= 6; ++k) {
        double theta = M_PI * static_cast<double>(k) / 6.0;
        for (double r : {0.5, 1.0, 10.0, 100.0}) {
            worst_em = std::max(worst_em, std::abs(progression_zeta_prime0(theta, r) -
                                                   progression_zeta_prime0_em(theta, r)));
            ++n;
        }
    }
    out.push_back(detail::summary("progression closed form vs Euler-Maclaurin continuation",
                                  worst_em, 1e-9, n, "progression_zeta_prime0_em"));
    return out;
}

/// Criterion 2: the model-setting zeta gluing identity, exact per (L1,L2,R).
inline std::vector<CheckResult> criterion_model_gluing(std::uint64_t seed, int pairs = 200) {
    Rng rng(seed);
    auto pool = detail::ymodel_pool();
    double worst = 0.0;
    for (int i = 0; i < pairs; ++i) {
        const YModel& y = pool[static_cast<size_t>(rng.uniform_index(0, static_cast<Index>(pool.size()) - 1))];
        auto [l1, l2] = random_limiting_pair(rng, y);
        for (double r : {1.0, 10.0, 100.0}) {
            GluingTerms t = zeta_gluing_terms(l1, l2, r);
            worst = std::max(worst, std::abs(t.lhs - t.rhs));
        }
    }
    return {detail::summary("model zeta gluing |LHS - RHS|", worst, 1e-10, pairs * 3,
                            "zeta_gluing_terms")};
}

/// Criterion 3: brute-force L-sequence torsion vs closed form, and agreement
/// of the two product forms.
inline std::vector<CheckResult> criterion_mv_closed_form(std::uint64_t seed, int pairs = 200) {
    Rng rng(seed);
    auto pool = detail::ymodel_pool();
    double worst_bf = 0.0, worst_forms = 0.0;
    for (int i = 0; i < pairs; ++i) {
        const YModel& y = pool[static_cast<size_t>(rng.uniform_index(0, static_cast<Index>(pool.size()) - 1))];
        auto [l1, l2] = random_limiting_pair(rng, y);
        LSequence seq = build_l_sequence(l1, l2);
        double brute = torsion_l(seq);
        TorsionLClosedForm cf = torsion_l_closed_form(l1, l2);
        worst_bf = std::max(worst_bf, std::abs(brute - cf.value) / std::max(1.0, std::abs(cf.value)));
        worst_forms = std::max(worst_forms,
                               std::abs(cf.value - cf.abs_form) / std::max(1.0, std::abs(cf.value)));
    }
    return {
        detail::summary("torsion_l brute force vs closed form (relative)", worst_bf, 1e-9, pairs,
                        "torsion_l / torsion_l_closed_form"),
        detail::summary("closed-form product forms agree (relative)", worst_forms, 1e-10, pairs,
                        "torsion_l_closed_form"),
    };
}

/// Criterion 4: scaled-diagram torsion converges to the asymptotic
/// right-hand side; monotone error decay under the perturbation hook and an
/// unchanged limit.
inline std::vector<CheckResult> criterion_torsion_asymptotics(std::uint64_t seed, int scenarios = 20,
                                                    std::map<std::string, double>* fitted = nullptr) {
    Rng rng(seed);
    auto pool = detail::ymodel_pool();
    const double rgrid[3] = {1e2, 1e3, 1e4};
    double worst_final = 0.0, worst_mono = 0.0, worst_limit_shift = 0.0;
    double cfit = 0.0;
    for (int i = 0; i < scenarios; ++i) {
        const YModel& y = pool[static_cast<size_t>(rng.uniform_index(0, static_cast<Index>(pool.size()) - 1))];
        auto [l1, l2] = random_limiting_pair(rng, y);
        std::vector<Index> k1, k2;
        for (Index p = 0; p <= y.top_degree; ++p) {
            k1.push_back(rng.uniform_index(0, 2));
            k2.push_back(rng.uniform_index(0, 2));
        }
        PerturbationHook hook{0.1, 0.1, 0.2, seed + static_cast<std::uint64_t>(i)};
        double err[3];
        for (int j = 0; j < 3; ++j) {
            ScaledDiagram dgm(l1, l2, rgrid[j], k1, k2, hook);
            err[j] = std::abs(mv_torsion_scaled(dgm) / mv_asymptotic_rhs(l1, l2, rgrid[j]) - 1.0);
        }
        worst_mono = std::max({worst_mono, err[1] - err[0], err[2] - err[1]});
        worst_final = std::max(worst_final, err[2]);
        cfit = std::max(cfit, err[2] * rgrid[2]);
        ScaledDiagram clean(l1, l2, rgrid[2], k1, k2, PerturbationHook{});
        double clean_ratio = mv_torsion_scaled(clean) / mv_asymptotic_rhs(l1, l2, rgrid[2]);
        worst_limit_shift = std::max(worst_limit_shift, std::abs(clean_ratio - 1.0) + err[2]);
    }
    if (fitted) (*fitted)["torsion_asymptotics_error_constant"] = cfit;
    return {
        detail::summary("torsion asymptotics: monotone error decay over R = 1e2,1e3,1e4 (max increase)",
                        worst_mono, 1e-12, scenarios, "mv_torsion_scaled"),
        detail::summary("torsion asymptotics: err(1e4) with perturbation hook 0.1", worst_final, 1e-2,
                        scenarios, "mv_torsion_scaled"),
        detail::summary("torsion asymptotics: perturbed limit equals unperturbed limit", worst_limit_shift,
                        1e-2, scenarios, "mv_torsion_scaled"),
    };
}

/// Criterion 5: projection-pair determinant lemma, closed form vs explicit
/// restriction determinant.
inline std::vector<CheckResult> criterion_projection_lemma(std::uint64_t seed, int pairs = 500) {
    Rng rng(seed);
    double worst = 0.0;
    for (int i = 0; i < pairs; ++i) {
        Index n = rng.uniform_index(2, 8);
        HermitianSpace space(n);
        ComplexMatrix b1 = rng.subspace(n, rng.uniform_index(0, n));
        ComplexMatrix b2 = rng.subspace(n, rng.uniform_index(0, n));
        OrthoProjection p1 = OrthoProjection::onto_span(space, b1);
        OrthoProjection p2 = OrthoProjection::onto_span(space, b2);
        double closed = projection_pair_detstar(p1, p2);
        double oracle = detail::projection_restriction_det(p1.matrix(), p2.matrix());
        worst = std::max(worst, std::abs(closed - oracle));
    }
    return {detail::summary("projection lemma closed form vs |det(P1|Im(P2P1))|", worst, 1e-9,
                            pairs, "projection_pair_detstar")};
}

/// Criterion 6: the integer identities of the chi-invariants and the
/// L-sequence dimension bookkeeping, exact on every seeded configuration.
inline std::vector<CheckResult> criterion_integer_identities(std::uint64_t seed, int configs = 1000) {
    Rng rng(seed);
    auto pool = detail::ymodel_pool();
    long failures = 0;
    std::string first_failure;
    for (int i = 0; i < configs; ++i) {
        const YModel& y = pool[static_cast<size_t>(rng.uniform_index(0, static_cast<Index>(pool.size()) - 1))];
        auto [l1, l2] = random_limiting_pair(rng, y);
        ChiBreakdown chi = chi_prime_top(l1, l2);  // asserts the parity identity
        LSequence seq = build_l_sequence(l1, l2);
        long chi_via_d = 0, chi12_via_ab = 0, euler = 0;
        for (Index p = 0; p <= y.top_degree; ++p) {
            long sgn = (p % 2 == 0) ? 1 : -1;
            chi_via_d += sgn * seq.d[static_cast<size_t>(p)];
            chi12_via_ab += sgn * (seq.a[static_cast<size_t>(p)] - seq.b[static_cast<size_t>(p)]);
            euler += sgn * (seq.dim_1bd[static_cast<size_t>(p)] - seq.dim_cap[static_cast<size_t>(p)] +
                            seq.dim_2bd[static_cast<size_t>(p)]);
        }
        bool ok = chi_via_d == chi.chi_prime && chi12_via_ab == chi.chi_prime_c12 && euler == 0;
        for (Index p = 0; ok && p <= y.top_degree; ++p)
            ok = seq.dim_cap[static_cast<size_t>(p)] ==
                 seq.a[static_cast<size_t>(p)] + seq.b[static_cast<size_t>(p)];
        for (Index p = 0; ok && p < y.top_degree; ++p) {
            Index x = l1.abs_dim(p), yv = l2.abs_dim(p);
            Index u = intersect_subspaces(l1.abs_basis(p), l2.abs_basis(p)).cols();
            Index v = intersect_subspaces(orth_complement(l1.abs_basis(p), y.h_at(p)),
                                          orth_complement(l2.abs_basis(p), y.h_at(p)))
                          .cols();
            ok = (y.h_at(p) == x + yv - u + v);
        }
        if (!ok) {
            ++failures;
            if (first_failure.empty()) first_failure = "config " + std::to_string(i);
        }
    }
    return {detail::summary("integer identities (chi' lemmas, Euler and dimension bookkeeping)",
                            static_cast<double>(failures), 0.0, configs,
                            "chi_prime_top / build_l_sequence", first_failure)};
}

/// Criterion 7: the root solver against closed forms, the near-root bounds
/// and the frozen-vs-true comparison with a fitted constant.
inline std::vector<CheckResult> criterion_root_solver(std::uint64_t seed,
                                                      std::map<std::string, double>* fitted = nullptr) {
    Rng rng(seed);
    std::vector<CheckResult> out;

    // (a) constant families: exact progression roots
    double worst_const = 0.0;
    long nconst = 0;
    for (int trial = 0; trial < 40; ++trial) {
        Index m = rng.uniform_index(1, 4);
        std::vector<double> phases;
        ComplexMatrix c = detail::random_conjugation_closed_unitary(rng, m, &phases);
        double r = (trial % 3 == 0) ? 1.0 : (trial % 3 == 1 ? 7.0 : 50.0);
        std::pair<double, double> window{0.0, 3.0};
        LambdaSet roots = lambda_roots(family_constant(c), r, window);
        std::vector<double> expect;
        for (double th : phases) {
            for (long k = -10; k < static_cast<long>(4.0 * r * window.second / (2.0 * M_PI)) + 2; ++k) {
                double lam = (2.0 * M_PI * static_cast<double>(k) - th) / (4.0 * r);
                if (lam > 1e-12 && lam >= window.first && lam <= window.second) expect.push_back(lam);
            }
        }
        std::sort(expect.begin(), expect.end());
        std::vector<double> got = roots.lambdas();
        if (got.size() != expect.size()) {
            worst_const = std::max(worst_const, 1.0);
        } else {
            for (size_t i = 0; i < got.size(); ++i)
                worst_const = std::max(worst_const, std::abs(got[i] - expect[i]));
        }
        nconst += static_cast<long>(expect.size());
    }
    out.push_back(detail::summary("constant-family roots vs (2 pi k - theta)/(4R)", worst_const,
                                  1e-12, nconst, "lambda_roots"));

    // (b) degree-1 families vs the linearized closed form
    const double drift = 0.01;
    double worst_lin = 0.0;
    long nlin = 0;
    for (double r : {10.0, 30.0, 100.0}) {
        for (int trial = 0; trial < 5; ++trial) {
            Index m = rng.uniform_index(1, 3);
            std::vector<double> phases;
            ComplexMatrix c0 = detail::random_conjugation_closed_unitary(rng, m, &phases);
            UnitaryFamily fam{m, 1, 1.0,
                              [c0, drift](double lam) {
                                  return ComplexMatrix((1.0 + Complex(0.0, drift * lam)) * c0);
                              }};
            std::pair<double, double> window{0.0, 0.45};
            LambdaSet roots = lambda_roots(fam, r, window);
            std::vector<double> expect;
            for (double th : phases)
                for (long k = -2; k < 60; ++k) {
                    double lam = (2.0 * M_PI * static_cast<double>(k) - th) / (4.0 * r + drift);
                    if (lam > 1e-12 && lam <= window.second) expect.push_back(lam);
                }
            std::sort(expect.begin(), expect.end());
            std::vector<double> got = roots.lambdas();
            if (got.size() != expect.size())
                worst_lin = std::max(worst_lin, 1.0);
            else
                for (size_t i = 0; i < got.size(); ++i)
                    worst_lin = std::max(worst_lin, std::abs(got[i] - expect[i]));
            nlin += static_cast<long>(expect.size());
        }
    }
    out.push_back(detail::summary("degree-1 family roots vs (2 pi k - theta)/(4R + a)", worst_lin,
                                  1e-9, nlin, "lambda_roots"));

    // (c) near-root refinement bounds: perturbed-root instances plus raw
    // random (z0, v) draws accepted under the hypothesis ||E|| < ||v||
    double worst_b1 = 0.0, worst_b2 = 0.0, worst_fix = 0.0;
    const double r50 = 50.0;
    long accepted = 0;
    for (int trial = 0; trial < 200; ++trial) {
        ComplexMatrix basis = rng.subspace(3, rng.uniform_index(1, 2));
        ComplexMatrix c = 2.0 * (basis * basis.adjoint()) - ComplexMatrix::Identity(3, 3);
        double z0;
        ComplexVector v;
        if (trial < 100) {
            // exact root of the theta = 0 branch near 0.3, nudged
            long k = static_cast<long>(std::round(0.3 * 4.0 * r50 / (2.0 * M_PI)));
            double delta = (rng.uniform() * 2.0 - 1.0) * 1e-3;
            if (std::abs(delta) < 1e-5) delta = (delta < 0.0 ? -1e-5 : 1e-5);
            z0 = 2.0 * M_PI * static_cast<double>(k) / (4.0 * r50) + delta;
            v = basis.col(0) + 0.01 * rng.gaussian_matrix(3, 1);
        } else {
            z0 = 0.2 + 0.2 * rng.uniform();
            v = rng.gaussian_matrix(3, 1);
        }
        ComplexVector err = std::exp(Complex(0.0, 4.0 * r50 * z0)) * (c * v) - v;
        if (!(err.norm() < v.norm())) continue;
        ++accepted;
        auto refined = near_root_refine(family_constant(c), r50, z0, v);
        double en = err.norm(), vn = v.norm();
        for (const auto& rr : refined) {
            if (rr.w.norm() == 0.0) {
                worst_b2 = std::max(worst_b2, rr.projected_v.squaredNorm() - vn * en);
                continue;
            }
            worst_b1 = std::max(worst_b1, (rr.z - z0) * (rr.z - z0) - en / vn);
            worst_b2 = std::max(worst_b2, (rr.projected_v - rr.w).squaredNorm() - vn * en);
            ComplexVector fix =
                std::exp(Complex(0.0, 4.0 * r50 * rr.z)) * (c * rr.w) - rr.w;
            worst_fix = std::max(worst_fix, fix.norm());
        }
    }
    out.push_back(detail::summary("near-root bound |z_j - z_0|^2 < ||v||^{-1}||E||  (max excess)",
                                  worst_b1, 0.0, accepted, "near_root_refine"));
    out.push_back(detail::summary("near-root bound ||P_j v - w_j||^2 < ||v|| ||E||  (max excess)",
                                  worst_b2, 0.0, accepted, "near_root_refine"));
    out.push_back(detail::summary("near-root exact fixed-point residual", worst_fix, 1e-10,
                                  accepted, "near_root_refine"));

    // (d) frozen-vs-true sums: zero for constant families, fitted bound for
    // degree-1 families
    double worst_zero = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        Index m = rng.uniform_index(1, 4);
        ComplexMatrix c = detail::random_conjugation_closed_unitary(rng, m);
        worst_zero = std::max(worst_zero,
                              lambda_compare(family_constant(c), 20.0, 0.8,
                                             [](double x) { return 1.0 + x; }));
    }
    out.push_back(detail::summary("Lambda vs Lambda* difference, constant families", worst_zero,
                                  1e-12, 10, "lambda_compare"));

    struct Sample {
        double diff, denom;
    };
    std::vector<Sample> samples;
    for (double r : {10.0, 30.0, 100.0}) {
        for (int trial = 0; trial < 3; ++trial) {
            Index m = rng.uniform_index(1, 3);
            ComplexMatrix c0 = detail::random_conjugation_closed_unitary(rng, m);
            UnitaryFamily fam{m, 1, 1.0,
                              [c0, drift](double lam) {
                                  return ComplexMatrix((1.0 + Complex(0.0, drift * lam)) * c0);
                              }};
            for (double gamma : {0.2, 0.45}) {
                double d1 = lambda_compare(fam, r, gamma, [](double) { return 1.0; });
                samples.push_back({d1, gamma});  // f = 1: sup|f'| = 0, sup|f| = 1
                double d2 = lambda_compare(fam, r, gamma, [](double x) { return x; });
                samples.push_back({d2, 2.0 * gamma * gamma});  // f = x
            }
        }
    }
    double afit = 0.0;
    for (const auto& s : samples) afit = std::max(afit, s.diff / s.denom);
    double worst_bound = 0.0;
    for (const auto& s : samples) worst_bound = std::max(worst_bound, s.diff - afit * s.denom);
    if (fitted) (*fitted)["lambda_compare_constant_a"] = afit;
    out.push_back(detail::summary(
        "Lambda vs Lambda* bounded by a (gamma^2 sup|f'| + gamma sup|f|), fitted a", worst_bound,
        1e-12, static_cast<long>(samples.size()), "lambda_compare",
        "fitted a = " + format_double17(afit)));
    return out;
}

/// Criterion 8: the exactly solvable circle gluing, with determinant fixtures
/// pre-derived through the Euler-Maclaurin oracle and a finite-difference
/// eigenvalue cross-check.
inline std::vector<CheckResult> criterion_circle() {
    std::vector<CheckResult> out;
    struct Fixture {
        double a, b, r;
        double log_l, log_2l1, log_2l2;  // from progression_zeta_prime0_em
    };
    // Frozen from the Euler-Maclaurin Hurwitz-zeta oracle (see
    // progression_zeta_prime0_em); values are -zeta'(0) of the theta = 0
    // progressions at scales l/4, l1/2, l2/2.
    const Fixture fixtures[] = {
        {1.0, 1.0, 0.5, 1.386294361119887, 1.386294361119887, 1.386294361119887},
        {1.0, 2.0, 1.0, 1.945910149055310, 1.791759469228052, 2.079441541679833},
        {0.5, 3.0, 2.0, 2.442347035369201, 2.197224577336216, 2.639057329615255},
    };
    double worst_combo = 0.0, worst_fixture = 0.0, worst_fd = 0.0;
    for (const Fixture& f : fixtures) {
        CircleGeometry g(f.a, f.b);
        CircleReport rep = circle_gluing_check(g, f.r);
        worst_combo = std::max(worst_combo, rep.combination.residual);
        CircleCatalogs cat = circle_catalogs(g, f.r);
        worst_fixture = std::max({worst_fixture,
                                  std::abs(progression_zeta_prime0(0.0, cat.len / 4.0) - f.log_l),
                                  std::abs(progression_zeta_prime0(0.0, cat.len1 / 2.0) - f.log_2l1),
                                  std::abs(progression_zeta_prime0(0.0, cat.len2 / 2.0) - f.log_2l2),
                                  std::abs(progression_zeta_prime0_em(0.0, cat.len / 4.0) - f.log_l)});
        for (const CheckResult& c : circle_fd_crosscheck(g, f.r))
            worst_fd = std::max(worst_fd, c.pass ? c.residual : 1.0);
    }
    out.push_back(detail::summary("circle gluing combination equals log 2", worst_combo, 1e-6, 3,
                                  "circle_gluing_check"));
    out.push_back(detail::summary("circle determinant fixtures (Hurwitz-zeta oracle)",
                                  worst_fixture, 1e-9, 3 * 4, "progression_zeta_prime0_em"));
    out.push_back(detail::summary("circle spectra vs finite-difference oracle (rel, 20 modes)",
                                  worst_fd, 1e-3, 3 * 5, "circle_fd_crosscheck"));
    return out;
}

/// Criterion 9: the torsion calculus on random exact complexes.
inline std::vector<CheckResult> criterion_torsion_calculus(std::uint64_t seed, int complexes = 500) {
    Rng rng(seed);
    double worst_rho = 0.0, worst_shift = 0.0, worst_sum = 0.0, worst_short = 0.0;
    for (int i = 0; i < complexes; ++i) {
        FiniteComplex c = random_exact_complex(rng, rng.uniform_index(1, 5));
        double t = torsion(c);
        worst_rho = std::max(worst_rho, std::abs(t - canonical_section_norm(c)) / t);
        if (i % 5 == 0)
            worst_shift = std::max(worst_shift, std::abs(torsion(shift(c, 1)) * t - 1.0));
        if (i % 10 == 0) {
            FiniteComplex c2 = random_exact_complex(rng, rng.uniform_index(1, 4));
            worst_sum = std::max(worst_sum,
                                 std::abs(torsion(direct_sum(c, c2)) - t * torsion(c2)) /
                                     std::max(1.0, t * torsion(c2)));
        }
    }
    // short acyclic complexes: |det A| at degrees (1,2), reciprocal at (0,1)
    for (int i = 0; i < 25; ++i) {
        Index n = rng.uniform_index(1, 3);
        ComplexMatrix a = rng.gaussian_matrix(n, n) + 2.0 * ComplexMatrix::Identity(n, n);
        FiniteComplex base({HermitianSpace(n), HermitianSpace(n)}, {a});
        double da = std::abs(a.determinant());
        worst_short = std::max(worst_short, std::abs(torsion(shift(base, 1)) - da) / da);
        worst_short = std::max(worst_short, std::abs(torsion(base) - 1.0 / da) * da);
    }
    return {
        detail::summary("torsion equals canonical section norm (relative)", worst_rho, 1e-9,
                        complexes, "torsion / canonical_section_norm"),
        detail::summary("shift inverts torsion", worst_shift, 1e-9, complexes / 5, "shift"),
        detail::summary("direct sum multiplies torsion (relative)", worst_sum, 1e-9,
                        complexes / 10, "direct_sum"),
        detail::summary("short acyclic complex torsion |det A|", worst_short, 1e-9, 50,
                        "torsion"),
    };
}

/// The whole acceptance suite as one report.
inline Report full_report(std::uint64_t seed) {
    Report rep;
    rep.seed = seed;
    auto add = [&rep](std::vector<CheckResult> cs) {
        for (auto& c : cs) rep.checks.push_back(std::move(c));
    };
    add(criterion_determinant_closed_forms());
    add(criterion_model_gluing(seed));
    add(criterion_mv_closed_form(seed + 1));
    add(criterion_torsion_asymptotics(seed + 2, 20, &rep.fitted));
    add(criterion_projection_lemma(seed + 3));
    add(criterion_integer_identities(seed + 4));
    add(criterion_root_solver(seed + 5, &rep.fitted));
    add(criterion_circle());
    add(criterion_torsion_calculus(seed + 6));
    return rep;
}

/// Scenario-driven aggregation: the full machine-readable report for a list
/// of gluing scenarios plus a circle geometry sweep. Failures are data, not
/// exceptions.
inline Report full_report(const std::vector<GluingScenario>& scenarios,
                          const std::vector<std::pair<CircleGeometry, double>>& circles,
                          std::uint64_t seed = 0) {
    Report rep;
    rep.seed = seed;
    for (const auto& s : scenarios)
        for (auto& c : zeta_gluing_model_check(s)) rep.checks.push_back(std::move(c));
    for (const auto& [geo, r] : circles) {
        CircleReport cr = circle_gluing_check(geo, r);
        rep.checks.push_back(cr.combination);
        for (auto& c : circle_fd_crosscheck(geo, r)) rep.checks.push_back(std::move(c));
    }
    return rep;
}

}  // namespace adtor::verify
