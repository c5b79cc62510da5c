#include <catch2/catch.hpp>

#include "phe/forms.hpp"
#include "phe/poincare.hpp"
#include "phe/qforms.hpp"

using namespace phe;

namespace {
const GroupElement S{0, -1, 1, 0};
const GroupElement T{1, 1, 0, 1};
}

TEST_CASE("parabolic series is proportional to Delta") {
    Fuchsian G = Fuchsian::sl2z();
    ParabolicDatum datum = make_parabolic_datum(G, Cusp::infinity());
    SeedFunction seed = parabolic_seed(12, 1, datum);
    CosetList cosets = cosets_parabolic(G, datum, 14);
    QExpansion delta = delta_qexp(128);

    cplx z1(0, 1), z2(0.3, 1.4);
    cplx r1 = relative_poincare(seed, cosets, z1).value / delta.eval(z1);
    cplx r2 = relative_poincare(seed, cosets, z2).value / delta.eval(z2);
    CHECK(std::abs(r1 - r2) <= 1e-5 * std::abs(r1));

    // the diagnostic shrinks with the bound
    auto v10 = relative_poincare(seed, cosets_parabolic(G, datum, 10), z1);
    auto v20 = relative_poincare(seed, cosets_parabolic(G, datum, 20), z1);
    CHECK(v20.last_shell_mass < v10.last_shell_mass);
    CHECK(std::abs(v20.value - v10.value) <= 2.0 * v10.last_shell_mass);
}

TEST_CASE("series engine rejects mismatched kinds and bad weights") {
    Fuchsian G = Fuchsian::sl2z();
    ParabolicDatum dpar = make_parabolic_datum(G, Cusp::infinity());
    EllipticDatum dell = make_elliptic_datum(PointH(cplx(0, 1)), G);
    CHECK_THROWS_AS(parabolic_seed(10, 0, dpar), std::invalid_argument);  // m < 1
    CHECK_THROWS_AS(parabolic_seed(3, 1, dpar), std::invalid_argument);
    CHECK_THROWS_AS(parabolic_seed(13, 1, dpar), std::invalid_argument);
    CHECK_THROWS_AS(elliptic_seed(12, 2, dell), std::invalid_argument);  // Nm - k/2 < 0
    SeedFunction seed = parabolic_seed(12, 1, dpar);
    CosetList wrong = cosets_elliptic(G, dell, 2);
    CHECK_THROWS_AS(relative_poincare(seed, wrong, cplx(0, 1)), std::invalid_argument);
}

TEST_CASE("zero seed sums to zero and the sum is linear in the seed") {
    Fuchsian G = Fuchsian::sl2z();
    ParabolicDatum datum = make_parabolic_datum(G, Cusp::infinity());
    CosetList cosets = cosets_parabolic(G, datum, 8);
    cplx z(0.21, 0.9);

    auto zero_term = [](const GroupElement&, cplx) { return cplx(0, 0); };
    CHECK(std::abs(relative_poincare(zero_term, cosets, z).value) == 0.0);

    SeedFunction s1 = parabolic_seed(12, 1, datum), s2 = parabolic_seed(12, 2, datum);
    cplx alpha(0.7, -1.3);
    auto combo = [&](const GroupElement& g, cplx w) {
        return alpha * s1.term(g, w) + s2.term(g, w);
    };
    cplx lhs = relative_poincare(combo, cosets, z).value;
    cplx rhs = alpha * relative_poincare(s1, cosets, z).value +
               relative_poincare(s2, cosets, z).value;
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(rhs));
}

TEST_CASE("untwisted series are modular at truncation level") {
    Fuchsian G = Fuchsian::sl2z();
    ParabolicDatum datum = make_parabolic_datum(G, Cusp::infinity());
    SeedFunction seed = parabolic_seed(12, 1, datum);
    CosetList cosets = cosets_parabolic(G, datum, 24);
    std::vector<GroupElement> gs{S, T, GroupElement{1, 0, 1, 1}};
    std::vector<cplx> pts{{0.13, 1.0}, {-0.4, 1.37}, {0.52, 0.81}};
    for (const auto& g : gs)
        for (cplx z : pts) {
            auto [w, j] = g.apply(z);
            cplx lhs = relative_poincare(seed, cosets, w).value / ipow(j, 12);
            cplx rhs = relative_poincare(seed, cosets, z).value;
            INFO(g.str() << " at " << z.real() << "+" << z.imag() << "i");
            CHECK(std::abs(lhs - rhs) <= 1e-5 * std::abs(rhs));
        }
}

TEST_CASE("bound doubling tightens the parabolic series") {
    Fuchsian G = Fuchsian::sl2z();
    ParabolicDatum datum = make_parabolic_datum(G, Cusp::infinity());
    SeedFunction seed = parabolic_seed(12, 1, datum);
    cplx z(0.37, 0.9);
    cplx v8 = relative_poincare(seed, cosets_parabolic(G, datum, 8), z).value;
    cplx v16 = relative_poincare(seed, cosets_parabolic(G, datum, 16), z).value;
    cplx v32 = relative_poincare(seed, cosets_parabolic(G, datum, 32), z).value;
    CHECK(std::abs(v32 - v16) * 2.0 <= std::abs(v16 - v8));
}

TEST_CASE("hyperbolic series matches the quadratic-form series") {
    Fuchsian G = Fuchsian::sl2z();
    GroupElement gamma = automorph(QuadForm{1, 1, -1});
    HyperbolicDatum datum = make_hyperbolic_datum(gamma);
    SeedFunction seed = hyperbolic_seed(12, 0, datum);
    CosetList cosets = cosets_hyperbolic(G, datum, 20);
    double factor = std::pow(datum.xi - 1.0 / datum.xi, -6.0);
    for (cplx z : {cplx(0, 1), cplx(0.3, 1.2), cplx(-0.45, 0.8)}) {
        cplx phi = relative_poincare(seed, cosets, z).value;
        cplx th = theta_katok(z, 12, gamma, G, 20);
        CHECK(std::abs(factor * phi - th) <= 1e-6 * std::abs(th));
    }
}

TEST_CASE("elliptic star series") {
    Fuchsian G = Fuchsian::sl2z();
    EllipticDatum datum = make_elliptic_datum(PointH(cplx(0, 1)), G);
    cplx z(0, 1);

    // l = 2 = -k/2 (mod N): full-group sum is N times the coset sum at m = (l+k/2)/N
    cplx star = phi_elliptic_star(z, 12, 2, datum, G, 9);
    SeedFunction seed = elliptic_seed(12, 4, datum);
    cplx coset_sum = relative_poincare(seed, cosets_elliptic(G, datum, 9), z).value;
    CHECK(std::abs(star - 2.0 * coset_sum) <= 1e-6 * std::abs(star));

    // odd l: vanishes
    cplx star_odd = phi_elliptic_star(z, 12, 3, datum, G, 9);
    CHECK(std::abs(star_odd) <= 1e-6 * std::abs(star));

    // a single-coset list returns the bare seed term
    CosetList only_id{StabilizerKind::Elliptic, G, 0, {GroupElement::identity()}, {1}};
    cplx bare = relative_poincare(seed, only_id, z).value;
    CHECK(std::abs(bare - seed(z)) == 0.0);
}

TEST_CASE("twisted series with the zero homomorphism vanishes") {
    Fuchsian G = Fuchsian::gamma0(11);
    ParabolicDatum datum = make_parabolic_datum(G, Cusp::infinity());
    SeedFunction seed = parabolic_seed(4, 1, datum);
    CosetList cosets = cosets_parabolic(G, datum, 22);
    HomFn zero = [](const GroupElement&) { return cplx(0, 0); };
    CHECK(std::abs(relative_poincare_twisted(seed, zero, cosets, cplx(0.2, 1.5)).value) == 0.0);

    // a hom that fails to vanish on the stabilizer is rejected
    HomFn bad = [](const GroupElement& g) { return cplx(double(g.b), 0); };
    CHECK_THROWS_AS(relative_poincare_twisted(seed, bad, cosets, cplx(0.2, 1.5)),
                    std::invalid_argument);
}

TEST_CASE("parabolic series at the cusp 0 of Gamma0(11)") {
    Fuchsian G = Fuchsian::gamma0(11);
    ParabolicDatum datum = make_parabolic_datum(G, Cusp::rational(0, 1));
    SeedFunction seed = parabolic_seed(4, 1, datum);
    CosetList cosets = cosets_parabolic(G, datum, 30);
    cplx z(0.21, 1.3);
    cplx v = relative_poincare(seed, cosets, z).value;
    CHECK(std::isfinite(v.real()));
    CHECK(std::abs(v) > 0.0);

    // modular under a group element, at truncation accuracy
    GroupElement g{1, 0, 11, 1};
    auto [w, j] = g.apply(z);
    cplx lhs = relative_poincare(seed, cosets, w).value / ipow(j, 4);
    CHECK(std::abs(lhs - v) <= 2e-3 * std::abs(v));

    // seed is invariant under the stabilizer generator of the cusp
    cplx sv = seed(z);
    cplx si = seed.term(datum.gamma, z);
    CHECK(std::abs(sv - si) <= 1e-10 * std::abs(sv));
}

TEST_CASE("one-call wrappers agree with the assembled pipeline") {
    Fuchsian G = Fuchsian::sl2z();
    cplx z(0.17, 1.05);

    ParabolicDatum dp = make_parabolic_datum(G, Cusp::infinity());
    cplx a = phi_parabolic(z, 12, 1, dp, G, 10).value;
    cplx b = relative_poincare(parabolic_seed(12, 1, dp), cosets_parabolic(G, dp, 10), z).value;
    CHECK(std::abs(a - b) == 0.0);

    HyperbolicDatum dh = make_hyperbolic_datum(automorph(QuadForm{1, 1, -1}));
    CHECK(std::abs(phi_hyperbolic(z, 12, 0, dh, G, 8).value -
                   relative_poincare(hyperbolic_seed(12, 0, dh), cosets_hyperbolic(G, dh, 8), z)
                       .value) == 0.0);

    EllipticDatum de = make_elliptic_datum(PointH(cplx(0, 1)), G);
    CHECK(std::abs(phi_elliptic(z, 12, 4, de, G, 6).value -
                   relative_poincare(elliptic_seed(12, 4, de), cosets_elliptic(G, de, 6), z)
                       .value) == 0.0);
}

TEST_CASE("elliptic series at the order-3 point") {
    Fuchsian G = Fuchsian::sl2z();
    EllipticDatum datum = make_elliptic_datum(PointH(std::exp(cplx(0, pi / 3))), G);
    REQUIRE(datum.order == 3);
    SeedFunction seed = elliptic_seed(12, 3, datum);  // exponent Nm - k/2 = 3
    CosetList cosets = cosets_elliptic(G, datum, 8);
    cplx z(0.12, 1.2);
    cplx v = relative_poincare(seed, cosets, z).value;
    CHECK(std::isfinite(v.real()));
    // invariance under the stabilizer generator, truncation limited
    cplx moved = slash_eval([&](cplx w) { return relative_poincare(seed, cosets, w).value; }, 12,
                            datum.eps, z);
    CHECK(std::abs(moved - v) <= 1e-6 * std::abs(v));
}
