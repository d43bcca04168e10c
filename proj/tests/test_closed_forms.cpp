#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fegamma/closed_forms.hpp"

using namespace fegamma;

namespace {

// Independent oracle-of-the-oracle: Euler's integral by trapezoid quadrature
// after t = e^u, which decays double-exponentially on the right and like
// e^{Re(s) u} on the left. Spectral accuracy for Re s > 0.
cplx gamma_by_quadrature(cplx s) {
    const double h = 0.01;
    cplx sum = 0;
    for (double u = -60.0; u <= 12.0; u += h) {
        double t = std::exp(u);
        sum += std::exp(s * u - t);  // t^s e^{-t} dt/t * t = e^{s u - e^u} du
    }
    return sum * h;
}

}  // namespace

TEST_CASE("euler oracle vs quadrature") {
    for (cplx s : {cplx(0.5), cplx(1.0), cplx(2.5), cplx(5.0), cplx(1.5, 1.0), cplx(3.0, -2.0)}) {
        cplx q = gamma_by_quadrature(s);
        cplx g = euler_gamma_oracle(s);
        CHECK(std::abs(g - q) <= 1e-10 * std::abs(q));
    }
}

TEST_CASE("euler oracle special values") {
    CHECK(std::abs(euler_gamma_oracle(1.0) - cplx(1.0)) < 1e-14);
    CHECK(std::abs(euler_gamma_oracle(5.0) - cplx(24.0)) < 1e-12);
    CHECK(std::abs(euler_gamma_oracle(0.5) - cplx(std::sqrt(std::numbers::pi))) < 1e-12);
    // reflection through the recursion: Gamma(-2.5)
    double expect = std::sqrt(std::numbers::pi) / ((-2.5) * (-1.5) * (-0.5));
    CHECK(euler_gamma_oracle(-2.5).real() == doctest::Approx(expect).epsilon(1e-11));
    CHECK_THROWS_AS(euler_gamma_oracle(0.0), divisor_signal);
    CHECK_THROWS_AS(euler_gamma_oracle(-3.0), divisor_signal);
    // functional equation at scattered complex points
    for (cplx s : {cplx(0.3, 4.0), cplx(-7.3, 2.2), cplx(12.0, -9.0)}) {
        cplx lhs = euler_gamma_oracle(s + cplx(1.0));
        cplx rhs = s * euler_gamma_oracle(s);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(lhs));
    }
}

TEST_CASE("q-pochhammer") {
    CHECK(q_pochhammer_inf(0.0, 0.5) == cplx(1.0));
    CHECK(std::abs(q_pochhammer_inf(1.0, 0.5)) == 0.0);
    // (1/2; 1/2)_inf, frozen from the direct product
    CHECK(q_pochhammer_inf(0.5, 0.5).real() == doctest::Approx(0.2887880950866024).epsilon(1e-12));
    CHECK_THROWS_AS(q_pochhammer_inf(0.5, 1.5), std::invalid_argument);
}

TEST_CASE("q-gamma values and functional equation") {
    for (double q : {0.3, 0.5, 0.9}) {
        CHECK(std::abs(q_gamma(q, 1.0) - cplx(1.0)) < 1e-13);
        CHECK(std::abs(q_gamma(q, 2.0) - cplx(1.0)) < 1e-13);
    }
    CHECK(q_gamma(0.5, 3.0).real() == doctest::Approx(1.5).epsilon(1e-13));

    for (double q : {0.3, 0.5, 0.9}) {
        double lq = std::log(q);
        for (double re = 0.3; re <= 6.0; re += 0.9) {
            for (double im = -3.0; im <= 3.0; im += 1.5) {
                cplx s(re, im);
                cplx f = (cplx(1.0) - std::exp(s * lq)) / (1.0 - q);
                cplx resid = q_gamma(q, s + cplx(1.0)) - f * q_gamma(q, s);
                CHECK(std::abs(resid) <= 1e-10 * std::abs(q_gamma(q, s + cplx(1.0))));
            }
        }
    }
    // pole detection on the shifted lattice
    CHECK_THROWS_AS(q_gamma(0.5, cplx(0.0)), divisor_signal);
    CHECK_THROWS_AS(q_gamma(0.5, cplx(-2.0)), divisor_signal);
}

TEST_CASE("q to 1 limit approaches Euler Gamma") {
    cplx target = euler_gamma_oracle(2.5);
    double prev = 1e300;
    for (double q : {0.9, 0.99, 0.999}) {
        double d = std::abs(q_gamma(q, 2.5) - target);
        CHECK(d < prev);
        prev = d;
    }
}

TEST_CASE("mellin telescoping and functional equation") {
    MellinSolution F = mellin_solve(parse("(s-0)/(s+1)"), 0);
    for (double s : {0.7, 1.9, 4.4}) {
        CHECK(std::abs(F.eval(s) - 1.0 / cplx(s)) <= 1e-13 / s);
        cplx r = cplx(s) / (cplx(s) + 1.0);
        CHECK(std::abs(F.eval(s + 1.0) - r * F.eval(s)) <= 1e-12 * std::abs(F.eval(s + 1.0)));
    }

    // R(s) = s - alpha -> F = Gamma(s - alpha) e^{2 pi i k s}
    MellinSolution Fa = mellin_solve(parse("(s+1.5)"), 2);
    for (cplx s : {cplx(1.3), cplx(2.6, 0.7)}) {
        cplx expect = euler_gamma_oracle(s + cplx(1.5)) * std::exp(cplx(0, kTwoPi) * 2.0 * s);
        CHECK(std::abs(Fa.eval(s) - expect) <= 1e-11 * std::abs(expect));
    }

    CHECK_THROWS_AS(mellin_solve(parse("qfac(0.5)"), 0), error);
    CHECK_THROWS_AS(mellin_solve(parse("exp(1*s)"), 0), error);
}

TEST_CASE("mellin printer format") {
    MellinSolution F = mellin_solve(parse("const(2)*(s-0)/(s+1)"), 0);
    CHECK(F.print() == "2^s * Gamma(s-0)/(Gamma(s-(-1))) * exp(2πi·0·s)");
    MellinSolution G = mellin_solve(parse("(s-0.5)"), -1);
    CHECK(G.print() == "1^s * Gamma(s-0.5) * exp(2πi·-1·s)");
}

TEST_CASE("gamma_omega relations") {
    for (double w : {0.5, 1.0, std::numbers::pi}) {
        // Gamma_B(w|w) = 1
        CHECK(std::abs(gamma_omega(w, w, OmegaGammaFlavor::barnes) - cplx(1.0)) < 1e-12);
        // Gamma(w|w) = sqrt(w / 2 pi)
        CHECK(std::abs(gamma_omega(w, w, OmegaGammaFlavor::shintani) -
                       cplx(std::sqrt(w / kTwoPi))) < 1e-12);
        // barnes = sqrt(2 pi / w) * shintani, pointwise
        for (cplx s : {cplx(0.7), cplx(2.1, 0.4)}) {
            cplx lhs = gamma_omega(s, w, OmegaGammaFlavor::barnes);
            cplx rhs = std::sqrt(kTwoPi / w) * gamma_omega(s, w, OmegaGammaFlavor::shintani);
            CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(lhs));
        }
        // residue at 0 is 1 for the Barnes flavor
        cplx s0(1e-10, 0.0);
        CHECK(std::abs(s0 * gamma_omega(s0, w, OmegaGammaFlavor::barnes) - cplx(1.0)) < 1e-8);
    }
    // Gamma(s|1) = Gamma(s)/sqrt(2 pi)
    for (double s : {0.4, 1.9, 3.6}) {
        cplx lhs = gamma_omega(s, 1.0, OmegaGammaFlavor::shintani);
        cplx rhs = euler_gamma_oracle(s) / std::sqrt(kTwoPi);
        CHECK(std::abs(lhs - rhs) <= 1e-13 * std::abs(rhs));
    }
    CHECK_THROWS_AS(gamma_omega(1.0, cplx(-1.0, 0.0), OmegaGammaFlavor::barnes),
                    std::invalid_argument);
}
