#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fegamma/funcspec.hpp"

using namespace fegamma;

namespace {

std::mt19937 rng(777);

FunctionSpec random_spec() {
    std::uniform_int_distribution<int> natoms(1, 4);
    std::uniform_int_distribution<int> kind(0, 3);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    std::uniform_int_distribution<int> mdist(-3, 3);
    std::vector<Atom> atoms;
    int n = natoms(rng);
    for (int i = 0; i < n; ++i) {
        switch (kind(rng)) {
            case 0: {
                int m = mdist(rng);
                if (m == 0) m = 1;
                atoms.push_back(LinearAtom{{-std::abs(u(rng)), u(rng)}, m});
                break;
            }
            case 1: {
                cplx a{u(rng), u(rng)};
                if (std::abs(a) < 0.1) a += 1.0;
                atoms.push_back(ConstAtom{a});
                break;
            }
            case 2: {
                std::vector<cplx> c = {cplx(u(rng), 0), cplx(u(rng), 0)};
                atoms.push_back(ExpPolyAtom{Poly(std::move(c))});
                break;
            }
            default:
                atoms.push_back(QFactorAtom{0.1 + 0.08 * std::abs(u(rng)), mdist(rng) >= 0 ? 1 : -1});
        }
    }
    return FunctionSpec(std::move(atoms));
}

bool specs_equal(const FunctionSpec& a, const FunctionSpec& b) {
    if (a.atoms().size() != b.atoms().size()) return false;
    for (std::size_t i = 0; i < a.atoms().size(); ++i) {
        const Atom &x = a.atoms()[i], &y = b.atoms()[i];
        if (x.index() != y.index()) return false;
        if (const auto* lx = std::get_if<LinearAtom>(&x)) {
            const auto& ly = std::get<LinearAtom>(y);
            if (std::abs(lx->alpha - ly.alpha) > 1e-12 || lx->m != ly.m) return false;
        } else if (const auto* cx = std::get_if<ConstAtom>(&x)) {
            if (std::abs(cx->a - std::get<ConstAtom>(y).a) > 1e-12) return false;
        } else if (const auto* ex = std::get_if<ExpPolyAtom>(&x)) {
            if (!ex->p.almost_equal(std::get<ExpPolyAtom>(y).p, 1e-12)) return false;
        } else {
            const auto& qx = std::get<QFactorAtom>(x);
            const auto& qy = std::get<QFactorAtom>(y);
            if (std::abs(qx.q - qy.q) > 1e-12 || qx.m != qy.m) return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("parse basics") {
    FunctionSpec one = parse("(s-0)");
    REQUIRE(one.atoms().size() == 1);
    const auto& lin = std::get<LinearAtom>(one.atoms()[0]);
    CHECK(lin.alpha == cplx(0));
    CHECK(lin.m == 1);
    CHECK(eval_f(one, 2.0) == cplx(2.0));

    FunctionSpec qf = parse("qfac(0.5)");
    CHECK(std::abs(eval_f(qf, 1.0) - cplx(1.0)) < 1e-14);

    FunctionSpec prod = parse("const(2)*(s-1)");
    CHECK(eval_f(prod, 3.0).real() == doctest::Approx(4.0));

    FunctionSpec ratio = parse("(s+1)/(s+2)");
    REQUIRE(ratio.atoms().size() == 2);
    CHECK(std::get<LinearAtom>(ratio.atoms()[0]).alpha == cplx(-1.0));
    CHECK(std::get<LinearAtom>(ratio.atoms()[1]).m == -1);

    FunctionSpec powed = parse("(s-1+2i)^-3");
    CHECK(std::get<LinearAtom>(powed.atoms()[0]).alpha == cplx(1.0, 2.0));
    CHECK(std::get<LinearAtom>(powed.atoms()[0]).m == -3);

    FunctionSpec ep = parse("exp(0.5 - 2*s + s^2)");
    const auto& p = std::get<ExpPolyAtom>(ep.atoms()[0]).p;
    CHECK(p.coeff(0) == cplx(0.5));
    CHECK(p.coeff(1) == cplx(-2.0));
    CHECK(p.coeff(2) == cplx(1.0));
}

TEST_CASE("parse errors carry positions") {
    CHECK_THROWS_AS(parse(""), parse_error);
    CHECK_THROWS_AS(parse("(s-0"), parse_error);
    CHECK_THROWS_AS(parse("qfac(1.5)"), parse_error);
    CHECK_THROWS_AS(parse("qfac(0)"), parse_error);
    CHECK_THROWS_AS(parse("const(0)"), parse_error);
    CHECK_THROWS_AS(parse("(s-0)^0"), parse_error);
    CHECK_THROWS_AS(parse("(s-0)*"), parse_error);
    CHECK_THROWS_AS(parse("banana"), parse_error);
    try {
        parse("(s-0)*qfac(7)");
    } catch (const parse_error& e) {
        CHECK(e.position > 5);
    }
}

TEST_CASE("eval examples") {
    CHECK(eval_f(parse("(s-0)"), 1.0) == cplx(1.0));
    CHECK(eval_f(parse("qfac(0.5)"), 2.0).real() == doctest::Approx(1.5));
    CHECK(eval_f(parse("exp(0 + 1*s)"), 0.0) == cplx(1.0));
    // pole signal
    CHECK_THROWS_AS(eval_f(parse("(s+2)^-1"), cplx(-2.0)), divisor_signal);
    // overflow signal
    CHECK_THROWS_AS(eval_f(parse("exp(1000*s)"), cplx(800.0)), overflow_signal);
}

TEST_CASE("divisor examples") {
    auto d1 = divisor_of(parse("(s-0)^1")).enumerate(1.0);
    REQUIRE(d1.size() == 1);
    CHECK(d1[0].position == cplx(0));
    CHECK(d1[0].multiplicity == 1);

    auto d2 = divisor_of(parse("(s+1)/(s+2)")).enumerate(3.0);
    REQUIRE(d2.size() == 2);
    CHECK(d2[0].position == cplx(-2.0));
    CHECK(d2[0].multiplicity == -1);
    CHECK(d2[1].position == cplx(-1.0));
    CHECK(d2[1].multiplicity == 1);

    auto d3 = divisor_of(parse("qfac(0.5)")).enumerate(10.0);
    double spacing = kTwoPi / std::log(2.0);
    REQUIRE(d3.size() == 3);  // k = -1, 0, 1 within radius 10
    CHECK(std::abs(d3[1].position) < 1e-12);
    CHECK(std::abs(std::abs(d3[0].position.imag()) - spacing) < 1e-9);
}

TEST_CASE("printer/parser fixpoint on random specs") {
    for (int i = 0; i < 100; ++i) {
        FunctionSpec spec = random_spec();
        FunctionSpec once = parse(print(spec));
        FunctionSpec twice = parse(print(once));
        CHECK(specs_equal(once, twice));
    }
}

TEST_CASE("real-analytic flag and conjugation symmetry") {
    CHECK(real_analytic(parse("(s-0)*(s+2)^3")));
    CHECK(real_analytic(parse("qfac(0.3)*const(-2)")));
    CHECK(real_analytic(parse("(s-1i)*(s+0+1i)")));  // conjugate pair, equal mult
    CHECK_FALSE(real_analytic(parse("(s-1i)")));
    CHECK_FALSE(real_analytic(parse("const(2+1i)")));
    CHECK_FALSE(real_analytic(parse("exp(1i*s)")));
    CHECK_FALSE(real_analytic(parse("(s-1i)^2*(s+0+1i)")));  // multiplicity mismatch

    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int i = 0; i < 50; ++i) {
        FunctionSpec spec = random_spec();
        if (!real_analytic(spec)) continue;
        cplx s{u(rng), u(rng)};
        try {
            cplx a = eval_f(spec, std::conj(s));
            cplx b = std::conj(eval_f(spec, s));
            CHECK(std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(b)));
        } catch (const error&) {
            // pole/overflow: skip the sample
        }
    }
}

TEST_CASE("divisor additivity under products") {
    for (int i = 0; i < 30; ++i) {
        FunctionSpec a = random_spec();
        FunctionSpec b = random_spec();
        auto lhs = divisor_of(a * b).enumerate(15.0);
        DivisorSpec manual;
        for (const auto& e : divisor_of(a).enumerate(15.0)) manual.add_point(e.position, e.multiplicity);
        for (const auto& e : divisor_of(b).enumerate(15.0)) manual.add_point(e.position, e.multiplicity);
        auto rhs = manual.enumerate(15.0);
        REQUIRE(lhs.size() == rhs.size());
        for (std::size_t j = 0; j < lhs.size(); ++j) {
            CHECK(std::abs(lhs[j].position - rhs[j].position) < 1e-9);
            CHECK(lhs[j].multiplicity == rhs[j].multiplicity);
        }
    }
}

TEST_CASE("lld classification matches a right-half-plane scan") {
    // Every parsable spec is LLD by construction of the atom set; a brute
    // scan of eval_f over Re s > 0 must find no zeros or blowups off the
    // divisor.
    for (const char* text : {"(s-0)*(s+1)", "qfac(0.5)", "(s-0)/(s+3)^2", "exp(2*s)*const(3)"}) {
        FunctionSpec spec = parse(text);
        CHECK(classify(divisor_of(spec)).lld);
        for (double re = 0.25; re <= 4.0; re += 0.25) {
            for (double im = -3.0; im <= 3.0; im += 0.5) {
                cplx v = eval_f(spec, {re, im});
                CHECK(std::abs(v) > 1e-8);
                CHECK(std::abs(v) < 1e12);
            }
        }
    }
}

TEST_CASE("json round trip") {
    for (int i = 0; i < 20; ++i) {
        FunctionSpec spec = random_spec();
        FunctionSpec back = FunctionSpec::from_json(spec.to_json());
        CHECK(specs_equal(spec, back));
    }
    // schema spot check
    FunctionSpec lin = parse("(s-1+2i)^3*qfac(0.25)");
    std::string j = lin.to_json();
    CHECK(j.find("\"kind\":\"linear\"") != std::string::npos);
    CHECK(j.find("\"kind\":\"qfac\"") != std::string::npos);
    CHECK(j.find("\"alpha\"") != std::string::npos);

    CHECK_THROWS_AS(FunctionSpec::from_json(R"({"atoms":[{"kind":"banana"}]})"), error);
    CHECK_THROWS_AS(FunctionSpec::from_json(R"({"atoms":[{"kind":"qfac","q":1.5}]})"), error);
    CHECK_THROWS_AS(
        FunctionSpec::from_json(R"({"atoms":[{"kind":"const","a":{"re":0.0,"im":0.0}}]})"),
        error);
}
