#include "catch_amalgamated.hpp"

#include "hopfcalc/scalars.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

using hopfcalc::Cyc;
using hopfcalc::root_of_unity;

namespace {

// Numerical image of an element under ζ_M ↦ exp(2πi/M); used only as an oracle.
std::complex<double> embed(const Cyc& x) {
    std::complex<double> s = 0;
    const double t = 2 * std::numbers::pi / x.order();
    for (std::size_t k = 0; k < x.coeffs().size(); ++k)
        s += x.coeffs()[k].get_d() * std::polar(1.0, t * static_cast<double>(k));
    return s;
}

bool near(std::complex<double> a, std::complex<double> b) { return std::abs(a - b) < 1e-9 * (1 + std::abs(b)); }

Cyc random_cyc(std::mt19937& rng) {
    static const int orders[] = {1, 2, 3, 4, 5, 6, 8, 12};
    const int M = orders[rng() % 8];
    Cyc x(0);
    for (int k = 0; k < 3; ++k) {
        const long num = static_cast<long>(rng() % 11) - 5;
        const long den = static_cast<long>(rng() % 4) + 1;
        x += Cyc(num, den) * root_of_unity(M, static_cast<long>(rng() % M));
    }
    return x;
}

} // namespace

TEST_CASE("roots of unity reduce to their cyclotomic relations", "[scalars]") {
    const Cyc z4 = root_of_unity(4, 1), z3 = root_of_unity(3, 1), z8 = root_of_unity(8, 1);
    CHECK(z4 * z4 == Cyc(-1));
    CHECK((Cyc(1) + z3 + z3 * z3).is_zero());
    CHECK(z8 * z8.pow(7) == Cyc(1));
    CHECK(root_of_unity(1, 0) == Cyc(1));
    CHECK(root_of_unity(4, 2) == Cyc(-1));
    CHECK(root_of_unity(2, 1) == Cyc(-1));
    CHECK(root_of_unity(6, -1) == root_of_unity(6, 5));
}

TEST_CASE("explicit cyclotomic polynomials vanish at the generator", "[scalars]") {
    const Cyc z4 = root_of_unity(4, 1), z6 = root_of_unity(6, 1), z8 = root_of_unity(8, 1), z12 = root_of_unity(12, 1);
    CHECK((z4.pow(2) + Cyc(1)).is_zero());
    CHECK((z6.pow(2) - z6 + Cyc(1)).is_zero());
    CHECK((z8.pow(4) + Cyc(1)).is_zero());
    CHECK((z12.pow(4) - z12.pow(2) + Cyc(1)).is_zero());
    CHECK(z4.degree() == 2);
    CHECK(z12.degree() == 4);
    CHECK(root_of_unity(7, 1).degree() == 6);
}

TEST_CASE("power sums of a primitive root vanish and its order is exact", "[scalars]") {
    for (int M = 2; M <= 16; ++M) {
        const Cyc z = root_of_unity(M, 1);
        Cyc s(0);
        for (int k = 0; k < M; ++k) s += z.pow(k);
        CHECK(s.is_zero());
        CHECK(z.pow(M) == Cyc(1));
        CHECK(hopfcalc::multiplicative_order(z, 100) == M);
    }
    CHECK(hopfcalc::multiplicative_order(Cyc(2), 100) == 0);
}

TEST_CASE("elements of different fields compare and combine through the common field", "[scalars]") {
    const Cyc a = root_of_unity(4, 1) + root_of_unity(6, 1);
    CHECK(a.order() % 12 == 0);
    CHECK(near(embed(a), embed(root_of_unity(4, 1)) + embed(root_of_unity(6, 1))));
    CHECK(root_of_unity(12, 3) == root_of_unity(4, 1));
    CHECK(root_of_unity(8, 2) == root_of_unity(4, 1));
}

TEST_CASE("field axioms hold on random triples", "[scalars][property]") {
    std::mt19937 rng(20240611);
    for (int trial = 0; trial < 200; ++trial) {
        const Cyc a = random_cyc(rng), b = random_cyc(rng), c = random_cyc(rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a - a).is_zero());
        CHECK(a * Cyc(1) == a);
        if (!a.is_zero()) {
            CHECK(a * a.inverse() == Cyc(1));
            CHECK((b / a) * a == b);
        }
    }
}

TEST_CASE("arithmetic agrees with the complex embedding oracle", "[scalars][property]") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const Cyc a = random_cyc(rng), b = random_cyc(rng);
        CHECK(near(embed(a + b), embed(a) + embed(b)));
        CHECK(near(embed(a * b), embed(a) * embed(b)));
        if (!b.is_zero()) CHECK(near(embed(a / b), embed(a) / embed(b)));
        if (!a.is_zero()) {
            const int e = trial % 7 - 3;
            CHECK(near(embed(a.pow(e)), std::pow(embed(a), e)));
        }
    }
}

TEST_CASE("representations are canonical", "[scalars][property]") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        const Cyc a = random_cyc(rng), b = random_cyc(rng);
        const Cyc x = a * b;
        CHECK(static_cast<int>(x.coeffs().size()) == x.degree());
        for (const auto& q : x.coeffs()) CHECK(q.get_den() > 0);
        if (!b.is_zero()) {
            const Cyc back = x / b;
            CHECK(back == a);
            if (back.order() == a.order()) CHECK(back.coeffs() == a.coeffs());
        }
    }
}

TEST_CASE("printing and parsing round-trip", "[scalars][property]") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const Cyc a = random_cyc(rng);
        CHECK(Cyc::parse(a.str()) == a);
    }
    CHECK(Cyc::parse("1/2 + 3*z4^1") == Cyc(1, 2) + Cyc(3) * root_of_unity(4, 1));
    CHECK(Cyc::parse("-z3^2") == -root_of_unity(3, 2));
    CHECK(Cyc(3, 6).str() == "1/2");
    CHECK(Cyc(0).str() == "0");
}

TEST_CASE("invalid operations are rejected", "[scalars]") {
    CHECK_THROWS_AS(Cyc(0).inverse(), hopfcalc::ScalarError);
    CHECK_THROWS_AS(Cyc(1) / Cyc(0), hopfcalc::ScalarError);
    CHECK_THROWS_AS(root_of_unity(0, 1), hopfcalc::ScalarError);
    CHECK_THROWS_AS(Cyc::parse("1 +"), hopfcalc::ScalarError);
    CHECK_THROWS_AS(Cyc::parse("2*q"), hopfcalc::ScalarError);
}
