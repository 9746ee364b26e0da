#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "susyline/operators.hpp"

using namespace susyline;

namespace {

const double pi = std::numbers::pi;

TrigPoly mono(long num, long den, int a2, int b2) {
    return TrigPoly::monomial(Rational(num, den), HalfInt::from_twice(a2),
                              HalfInt::from_twice(b2));
}

HalfInt half(int p) { return HalfInt::halves(p); }

TrigPoly random_poly(std::mt19937& rng) {
    std::uniform_int_distribution<int> nterms(1, 3), expo(-2, 5), num(-4, 4), den(1, 4);
    std::vector<TrigMonomial> terms;
    for (int i = 0, k = nterms(rng); i < k; ++i) {
        int n = num(rng);
        if (n == 0) n = 1;
        terms.push_back({Rational(n, den(rng)), HalfInt::from_twice(expo(rng)),
                         HalfInt::from_twice(expo(rng))});
    }
    return TrigPoly::from_terms(std::move(terms));
}

// normalizable, vanishing at both endpoints (exponents >= 1/2)
TrigPoly random_interior_poly(std::mt19937& rng) {
    std::uniform_int_distribution<int> nterms(1, 3), expo(1, 5), num(-4, 4), den(1, 4);
    std::vector<TrigMonomial> terms;
    for (int i = 0, k = nterms(rng); i < k; ++i) {
        int n = num(rng);
        if (n == 0) n = 1;
        terms.push_back({Rational(n, den(rng)), HalfInt::from_twice(expo(rng)),
                         HalfInt::from_twice(expo(rng))});
    }
    return TrigPoly::from_terms(std::move(terms));
}

const SpinorState kTopHalf{half(1), mono(1, 1, 1, 3), mono(1, 1, 3, 1)};

} // namespace

TEST_CASE("superpotential multiplier") {
    TrigPoly w1 = superpotential_w(half(1)).apply(TrigPoly::one());
    CHECK(w1 == mono(1, 4, 2, -2) + mono(1, 4, -2, 2));
    CHECK(w1.eval_at(pi / 2) == doctest::Approx(0.5).epsilon(1e-14));
    TrigPoly w3 = superpotential_w(half(-3)).apply(TrigPoly::one());
    CHECK(w3.eval_at(pi / 2) == doctest::Approx(-1.5).epsilon(1e-14));
}

TEST_CASE("A and A-dagger on closed forms") {
    CHECK(susy_a_dagger(half(1), mono(1, 1, 1, 3)) == mono(1, 1, 3, 1));
    CHECK(susy_a(half(1), mono(1, 1, 3, 1)) == mono(1, 1, 1, 3));
    CHECK(susy_a(half(5), TrigPoly::zero()).is_zero());
}

TEST_CASE("Hamiltonian eigenrelations and route agreement") {
    TrigPoly up = mono(1, 1, 1, 3);
    CHECK(hamiltonian_apply({half(1), Sector::plus}, up) == up);
    TrigPoly lo = mono(1, 1, 3, 1);
    CHECK(hamiltonian_apply({half(1), Sector::minus}, lo) == lo);
    // dual route asserts internally; a plain call on a generic element suffices
    CHECK_NOTHROW(hamiltonian_apply({half(3), Sector::plus}, mono(1, 1, 3, 5)));
}

TEST_CASE("ladder coefficient functions") {
    TrigPoly cot = mono(1, 1, -2, 2), tan = mono(1, 1, 2, -2);
    TrigPoly ku = ladder_k(Family::upper, half(3)).apply(TrigPoly::one());
    CHECK(ku == cot.scaled(Rational(1, 4)) - tan.scaled(Rational(3, 4)));
    TrigPoly kl = ladder_k(Family::lower, half(3)).apply(TrigPoly::one());
    CHECK(kl == cot.scaled(Rational(3, 4)) - tan.scaled(Rational(1, 4)));
}

TEST_CASE("factorization identities on random ring elements") {
    std::mt19937 rng(101);
    for (int t : {-5, -3, -1, 1, 3, 5}) {
        HalfInt jz = half(t);
        for (int rep = 0; rep < 10; ++rep) {
            TrigPoly p = random_poly(rng);
            for (Family fam : {Family::upper, Family::lower}) {
                Sector sec = fam == Family::upper ? Sector::plus : Sector::minus;
                TrigPoly hp = hamiltonian_apply({jz, sec}, p);
                Rational sm = (Rational::of(jz) - Rational(1, 2)) * (Rational::of(jz) - Rational(1, 2));
                Rational sp = (Rational::of(jz) + Rational(1, 2)) * (Rational::of(jz) + Rational(1, 2));

                TrigMultiplier k1 = ladder_k(fam, jz);
                TrigPoly inner = k1.apply(p) + p.differentiate();
                CHECK((k1.apply(inner) - inner.differentiate()) == (hp - p.scaled(sm)));

                TrigMultiplier k2 = ladder_k(fam, jz + 1);
                TrigPoly inner2 = k2.apply(p) - p.differentiate();
                CHECK((k2.apply(inner2) + inner2.differentiate()) == (hp - p.scaled(sp)));
            }
        }
    }
}

TEST_CASE("highest-weight annihilation and lowering at j = 1/2") {
    CHECK(jplus_apply(kTopHalf).is_zero());

    SpinorState down = jminus_apply(kTopHalf);
    CHECK(down.jz == half(-1));
    CHECK(down.upper == mono(-1, 1, 3, 1));
    CHECK(down.lower == mono(1, 1, 1, 3));
    CHECK(down.norm() / kTopHalf.norm() == doctest::Approx(1.0).epsilon(1e-12));

    CHECK(jplus_apply(SpinorState{half(1), {}, {}}).is_zero());
    CHECK(jminus_apply(down).is_zero()); // bottom of the j=1/2 multiplet
}

TEST_CASE("jz bookkeeping") {
    auto [label, same] = jz_apply(kTopHalf);
    CHECK(label == half(1));
    CHECK(jminus_apply(kTopHalf).jz == half(-1));
    CHECK(jplus_apply(jminus_apply(kTopHalf)).jz == half(1));
}

TEST_CASE("Casimir") {
    SpinorState z = kTopHalf;
    CHECK(casimir_apply(z) == z.scaled(Rational(3, 4)));
    SpinorState dn = jminus_apply(z);
    CHECK(casimir_apply(dn) == dn.scaled(Rational(3, 4)));
    // H = J^2 + 1/4 on the multiplet states
    CHECK(hamiltonian_apply(z) == (casimir_apply(z) + z.scaled(Rational(1, 4))));
}

TEST_CASE("intertwining preserves the exact SUSY pairing down the chain") {
    // A^+ upper = (j + 1/2) lower for every descended state
    SpinorState top{half(3), mono(1, 1, 3, 5), mono(1, 1, 5, 3)};
    SpinorState z = top;
    for (int step = 0; step < 3; ++step) {
        CHECK(susy_a_dagger(z.jz, z.upper) == z.lower.scaled(Rational(2)));
        CHECK(susy_a(z.jz, z.lower) == z.upper.scaled(Rational(2)));
        z = jminus_apply(z);
    }
}

TEST_CASE("formal adjointness of A and A-dagger") {
    std::mt19937 rng(103);
    for (int t : {-3, -1, 1, 3}) {
        HalfInt jz = half(t);
        for (int rep = 0; rep < 8; ++rep) {
            TrigPoly p = random_interior_poly(rng), q = random_interior_poly(rng);
            double lhs = susy_a(jz, p).inner_product(q);
            double rhs = p.inner_product(susy_a_dagger(jz, q));
            double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
            CHECK(std::abs(lhs - rhs) / scale < 1e-10);
        }
    }
}
