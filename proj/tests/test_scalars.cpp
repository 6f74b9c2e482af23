#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qrea/scalars.hpp"

using qrea::ExactQ;
using qrea::Gaussian;

namespace {

ExactQ random_exactq(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> nterms(0, 4), expo(-6, 6), num(-9, 9), den(1, 7), coin(0, 2);
    ExactQ r;
    int n = nterms(rng);
    for (int t = 0; t < n; ++t) {
        mpq_class re(num(rng), den(rng));
        mpq_class im = coin(rng) == 0 ? mpq_class(num(rng), den(rng)) : mpq_class(0);
        r += ExactQ::monomial(Gaussian(re, im), expo(rng));
    }
    return r;
}

double magnitude(const ExactQ& a, double q0) {
    double s = 0;
    for (const auto& [e, c] : a.terms()) s += std::abs(c.to_complex()) * std::pow(q0, static_cast<double>(e));
    return s;
}

}  // namespace

TEST_CASE("arithmetic examples") {
    ExactQ q = ExactQ::qpow(1), qi = ExactQ::qpow(-1);
    CHECK(q * qi == ExactQ(1));
    CHECK(ExactQ::hecke_gap() * q == ExactQ(1) - ExactQ::qpow(2));
    std::mt19937_64 rng(7);
    for (int i = 0; i < 50; ++i) {
        ExactQ x = random_exactq(rng);
        CHECK(x + ExactQ() == x);
        CHECK(x - x == ExactQ());
    }
}

TEST_CASE("ring axioms on random samples") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        ExactQ a = random_exactq(rng), b = random_exactq(rng), c = random_exactq(rng);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        for (const auto& t : (a * b).terms()) CHECK_FALSE(t.second.is_zero());
    }
}

TEST_CASE("star") {
    ExactQ iq = ExactQ::monomial(Gaussian(0, 1), 1);
    CHECK(iq.star() == -iq);
    CHECK(ExactQ::hecke_gap().star() == ExactQ::hecke_gap());
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
        ExactQ x = random_exactq(rng);
        CHECK(x.star().star() == x);
    }
}

TEST_CASE("eval is a homomorphism") {
    CHECK(ExactQ::qpow(2).eval(0.5).real() == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(ExactQ::hecke_gap().eval(0.5).real() == doctest::Approx(1.5).epsilon(1e-15));
    CHECK_THROWS_AS(ExactQ(1).eval(1.0), std::domain_error);
    CHECK_THROWS_AS(ExactQ(1).eval(0.0), std::domain_error);
    std::mt19937_64 rng(13);
    double worst = 0;
    for (double q0 : {0.3, 0.5, 0.9}) {
        for (int i = 0; i < 1000; ++i) {
            ExactQ a = random_exactq(rng), b = random_exactq(rng);
            auto lhs = (a * b).eval(q0);
            auto rhs = a.eval(q0) * b.eval(q0);
            double scale = magnitude(a, q0) * magnitude(b, q0);
            if (scale > 0) worst = std::max(worst, std::abs(lhs - rhs) / scale);
            auto s1 = (a + b).eval(q0), s2 = a.eval(q0) + b.eval(q0);
            CHECK(std::abs(s1 - s2) <= 1e-14 * std::max(1.0, magnitude(a, q0) + magnitude(b, q0)));
        }
    }
    CHECK(worst <= 1e-14);
}

TEST_CASE("text round trip") {
    CHECK(ExactQ::hecke_gap().str() == "1/1*q^-1 + -1/1*q^1");
    CHECK(ExactQ::monomial(Gaussian(mpq_class(1, 2), mpq_class(-3, 4)), 2).str() == "1/2-3/4*i*q^2");
    CHECK(ExactQ().str() == "0");
    std::mt19937_64 rng(17);
    for (int i = 0; i < 500; ++i) {
        ExactQ x = random_exactq(rng);
        CHECK(ExactQ::parse(x.str()) == x);
        CHECK(ExactQ::parse(x.str()).str() == x.str());
    }
    CHECK(ExactQ::parse("0/1+5/1*i*q^3") == ExactQ::monomial(Gaussian(0, 5), 3));
    CHECK_THROWS(ExactQ::parse("garbage"));
}

TEST_CASE("exponent overflow is detected") {
    ExactQ big = ExactQ::qpow(INT64_MAX - 1);
    CHECK_THROWS_AS(big * ExactQ::qpow(5), std::overflow_error);
}
