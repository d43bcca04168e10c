#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fegamma/divisor.hpp"
#include "fegamma/funcspec.hpp"

using namespace fegamma;

namespace {

DivisorSpec euler_gamma_divisor() {
    // Divisor of Euler Gamma: simple poles at the non-positive integers.
    DivisorSpec d;
    Generator g;
    g.base = 0;
    g.steps = {{cplx(-1.0, 0.0), 1}};
    g.multiplicity = -1;
    d.add_generator(std::move(g));
    return d;
}

}  // namespace

TEST_CASE("enumerate: euler divisor within 3.5") {
    auto e = euler_gamma_divisor().enumerate(3.5);
    REQUIRE(e.size() == 4);
    for (int k = 0; k < 4; ++k) {
        CHECK(e[k].position == cplx(-3.0 + k, 0.0));
        CHECK(e[k].multiplicity == -1);
    }
}

TEST_CASE("enumerate: empty divisor") {
    CHECK(DivisorSpec().enumerate(100.0).empty());
}

TEST_CASE("enumerate: q-factor lattice") {
    auto div = divisor_of(parse("qfac(0.5)"));
    auto e = div.enumerate(20.0);
    double spacing = kTwoPi / std::log(2.0);  // = 2 pi / |log 0.5| ~ 9.0647
    CHECK(spacing == doctest::Approx(9.064720283654388).epsilon(1e-12));
    REQUIRE(e.size() == 5);
    for (const auto& el : e) {
        CHECK(el.multiplicity == 1);
        CHECK(std::abs(el.position.real()) < 1e-12);
        double ratio = el.position.imag() / spacing;
        CHECK(std::abs(ratio - std::round(ratio)) < 1e-9);
    }
}

TEST_CASE("enumerate is deterministic") {
    auto div = propagate(divisor_of(parse("qfac(0.5)")));
    auto a = div.enumerate(40.0);
    auto b = div.enumerate(40.0);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].position == b[i].position);
        CHECK(a[i].multiplicity == b[i].multiplicity);
    }
}

TEST_CASE("merge sums multiplicities and drops zeros") {
    DivisorSpec d;
    d.add_point({-1.0, 0.0}, 2);
    d.add_point({-1.0 + 1e-10, 0.0}, 3);  // merged at construction
    CHECK(d.points().size() == 1);
    CHECK(d.points()[0].multiplicity == 5);
    d.add_point({-1.0, 0.0}, -5);
    CHECK(d.points().empty());

    // overlap between a point and a generator merges during enumeration
    DivisorSpec d2;
    d2.add_point({-2.0, 0.0}, 4);
    Generator g;
    g.base = 0;
    g.steps = {{cplx(-1.0, 0.0), 1}};
    g.multiplicity = -1;
    d2.add_generator(std::move(g));
    auto e = d2.enumerate(2.5);
    REQUIRE(e.size() == 3);
    CHECK(e[0].position == cplx(-2.0, 0.0));
    CHECK(e[0].multiplicity == 3);  // 4 - 1
}

TEST_CASE("classify") {
    DivisorSpec origin;
    origin.add_point(0.0, 1);
    auto c0 = classify(origin);
    CHECK(c0.lld);
    CHECK(c0.cld);

    auto cq = classify(divisor_of(parse("qfac(0.5)")));
    CHECK(cq.lld);
    CHECK_FALSE(cq.cld);

    DivisorSpec right;
    right.add_point({1.0, 0.0}, 1);
    CHECK_FALSE(classify(right).lld);

    DivisorSpec boundary;
    boundary.add_point({0.0, 2.0}, 1);  // nonzero point on the imaginary axis
    auto cb = classify(boundary);
    CHECK(cb.lld);
    CHECK_FALSE(cb.cld);
}

TEST_CASE("norm") {
    // Euler divisor, alpha = 2, radius 3.5: 1 + 1/4 + 1/9
    double expect = 1.0 + 1.0 / 4.0 + 1.0 / 9.0;
    CHECK(divisor_norm(euler_gamma_divisor(), 2.0, 3.5) == doctest::Approx(expect).epsilon(1e-12));

    CHECK(divisor_norm(DivisorSpec(), 1.0, 10.0) == 0.0);

    DivisorSpec d;
    d.add_point({-1.0, 0.0}, 3);
    CHECK(divisor_norm(d, 1.0, 2.0) == doctest::Approx(3.0));
}

TEST_CASE("propagate: point becomes a ray") {
    DivisorSpec seed;
    seed.add_point(0.0, 1);
    auto prop = propagate(seed);
    auto e = prop.enumerate(5.5);
    REQUIRE(e.size() == 6);
    for (const auto& el : e) CHECK(el.multiplicity == -1);
    CHECK(e.front().position == cplx(-5.0, 0.0));
    CHECK(e.back().position == cplx(0.0, 0.0));
}

TEST_CASE("propagate twice: Barnes N=2 multiplicities") {
    DivisorSpec seed;
    seed.add_point(0.0, 1);
    auto g2 = propagate(propagate(seed).negated());
    auto e = g2.enumerate(50.5);
    for (const auto& el : e) {
        long long n = std::llround(-el.position.real());
        CHECK(el.multiplicity == -(n + 1));
    }
}

TEST_CASE("propagate: shifted complex point") {
    DivisorSpec seed;
    seed.add_point({-1.0, 1.0}, 2);
    auto prop = propagate(seed);
    auto e = prop.enumerate(10.0);
    for (const auto& el : e) {
        CHECK(el.multiplicity == -2);
        CHECK(el.position.imag() == doctest::Approx(1.0));
    }
    CHECK(multiplicity_at(e, {-1.0, 1.0}) == -2);
    CHECK(multiplicity_at(e, {-3.0, 1.0}) == -2);
}

TEST_CASE("propagate rejects non-LLD input") {
    DivisorSpec bad;
    bad.add_point({0.5, 0.0}, 1);
    CHECK_THROWS_AS(propagate(bad), error);
}

TEST_CASE("propagate preserves LLD and CLD") {
    DivisorSpec cld_seed;
    cld_seed.add_point({-2.0, 0.5}, 1);
    cld_seed.add_point({-2.0, -0.5}, 1);
    auto prop = propagate(cld_seed);
    auto cls = classify(prop);
    CHECK(cls.lld);
    CHECK(cls.cld);

    auto qprop = propagate(divisor_of(parse("qfac(0.5)")));
    auto qcls = classify(qprop);
    CHECK(qcls.lld);
    CHECK_FALSE(qcls.cld);  // vertical lattice stays outside every cone
}

TEST_CASE("multiplicity law: n(prop) = -sum of seed multiplicities to the right") {
    FunctionSpec spec = parse("(s+1)^2/(s+2)*(s+0.5)");
    DivisorSpec seed = divisor_of(spec);
    auto prop = propagate(seed);
    double R = 30.0;
    auto seed_el = seed.enumerate(R);
    auto prop_el = prop.enumerate(R);
    for (const auto& el : prop_el) {
        if (std::abs(el.position) > R - 1.0) continue;
        long long expect = 0;
        for (int k = 0; k <= static_cast<int>(std::abs(el.position)) + 2; ++k)
            expect -= multiplicity_at(seed_el, el.position + cplx(k));
        CHECK(el.multiplicity == expect);
    }
    // positions not on the propagated divisor have zero summed multiplicity
    CHECK(multiplicity_at(prop_el, {-0.75, 0.0}) == 0);
}

TEST_CASE("norm growth inequality for CLD corpus") {
    // |Div(Gamma^f)|_{a+1} <= C |Div f|_{a+1} + (C/a) |Div f|_a with one fixed
    // constant across the corpus (seeds kept off the non-positive integers).
    const double C = 4.0;
    std::vector<DivisorSpec> corpus;
    {
        DivisorSpec d;
        d.add_point({-1.5, 0.0}, 2);
        corpus.push_back(d);
    }
    {
        DivisorSpec d;
        d.add_point({-2.5, 1.0}, 1);
        d.add_point({-2.5, -1.0}, 1);
        corpus.push_back(d);
    }
    {
        DivisorSpec d;
        Generator g;
        g.base = {-1.5, 0.0};
        g.steps = {{cplx(-2.0, 0.0), 1}};
        g.multiplicity = 1;
        d.add_generator(std::move(g));
        corpus.push_back(d);
    }
    for (const auto& d : corpus) {
        REQUIRE(classify(d).cld);
        auto prop = propagate(d);
        for (double alpha : {1.0, 2.0}) {
            double R = 200.0;
            double lhs = divisor_norm(prop, alpha + 1.0, R);
            double rhs = C * divisor_norm(d, alpha + 1.0, R) + C / alpha * divisor_norm(d, alpha, R);
            CHECK(lhs <= rhs);
        }
    }
}

TEST_CASE("exponent estimate") {
    CHECK(exponent_estimate(DivisorSpec()) == 0.5);
    double e1 = exponent_estimate(propagate(euler_gamma_divisor().negated()));
    CHECK(e1 >= 1.0);
    CHECK(e1 <= 3.0);
}

TEST_CASE("argument validation") {
    CHECK_THROWS_AS(DivisorSpec().enumerate(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(divisor_norm(DivisorSpec(), -2.0, 5.0), std::invalid_argument);
    CHECK_THROWS_AS(DivisorSpec().scaled_arg(0.0), std::invalid_argument);
    CHECK_THROWS_AS(DivisorSpec::from_json("{\"points\":[]}"), std::exception);
}

TEST_CASE("generator validation") {
    Generator bad;
    bad.base = 0;
    bad.steps = {{cplx(0.5, 0.0), 1}};  // rightward step
    bad.multiplicity = 1;
    DivisorSpec d;
    CHECK_THROWS_AS(d.add_generator(bad), std::invalid_argument);

    Generator opposed;
    opposed.base = 0;
    opposed.steps = {{cplx(0.0, 1.0), 1}, {cplx(0.0, -1.0), 1}};
    opposed.multiplicity = 1;
    CHECK_THROWS_AS(d.add_generator(opposed), std::invalid_argument);
}

TEST_CASE("scaled_arg and json round trip") {
    auto div = propagate(divisor_of(parse("qfac(0.5)")));
    auto scaled = div.scaled_arg(2.0);
    auto e = div.enumerate(10.0);
    auto es = scaled.enumerate(5.0);
    REQUIRE(!e.empty());
    REQUIRE(e.size() == es.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
        CHECK(std::abs(es[i].position - e[i].position / 2.0) < 1e-12);
        CHECK(es[i].multiplicity == e[i].multiplicity);
    }

    DivisorSpec back = DivisorSpec::from_json(div.to_json());
    auto eb = back.enumerate(10.0);
    REQUIRE(eb.size() == e.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
        CHECK(eb[i].position == e[i].position);
        CHECK(eb[i].multiplicity == e[i].multiplicity);
    }
}

TEST_CASE("tail bound dominates the true tail") {
    auto div = propagate(euler_gamma_divisor().negated());
    for (double R : {64.0, 256.0}) {
        double bound = divisor_tail_bound(div, R, 5.0);
        // true tail of sum n^-5 beyond R is ~ R^-4/4
        double truth = std::pow(R, -4.0) / 4.0;
        CHECK(bound >= truth);
        CHECK(bound < 1.0);
    }
    CHECK(divisor_tail_bound(div, 64.0, 0.5) == std::numeric_limits<double>::infinity());
}
