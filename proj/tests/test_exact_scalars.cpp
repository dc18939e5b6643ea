#include <doctest.h>

#include <cmath>
#include <random>

#include "jumploci/exact_scalars.hpp"

using namespace jumploci;

namespace {

Cyclotomic random_element(std::mt19937_64& rng, unsigned long n) {
    std::uniform_int_distribution<long> coef(-5, 5);
    std::vector<std::pair<long, Rational>> terms;
    for (unsigned long k = 0; k < n; ++k) terms.emplace_back(k, Rational(coef(rng), 1 + rng() % 3));
    return Cyclotomic::from_terms(n, terms);
}

}  // namespace

TEST_CASE("cyclotomic polynomials") {
    CHECK(cyclotomic_polynomial(1) == std::vector<long>{-1, 1});
    CHECK(cyclotomic_polynomial(4) == std::vector<long>{1, 0, 1});
    CHECK(cyclotomic_polynomial(6) == std::vector<long>{1, -1, 1});
    CHECK(cyclotomic_polynomial(12) == std::vector<long>{1, 0, -1, 0, 1});
    CHECK(euler_phi(24) == 8);
}

TEST_CASE("zeta identities") {
    for (unsigned long n : {1ul, 2ul, 3ul, 5ul, 6ul, 8ul, 12ul, 15ul}) {
        Cyclotomic z = Cyclotomic::zeta(n);
        CHECK(z.pow(static_cast<long>(n)).is_one());
        Cyclotomic sum;
        for (unsigned long k = 0; k < n; ++k) sum += Cyclotomic::zeta(n, static_cast<long>(k));
        CHECK(sum == Cyclotomic(n == 1 ? 1 : 0));
    }
    CHECK(Cyclotomic::zeta(2) == Cyclotomic(-1));
    CHECK(Cyclotomic::zeta(6) == -Cyclotomic::zeta(3, 2));
    CHECK(Cyclotomic::root_of_unity(Rational(1, 4)) == Cyclotomic::zeta(4));
    CHECK(Cyclotomic::zeta(12, 3) == Cyclotomic::zeta(4));
    CHECK(Cyclotomic::zeta(12, 3).canonical().conductor() == 4);
}

TEST_CASE("field axioms on random triples") {
    std::mt19937_64 rng(7);
    for (unsigned long n : {1ul, 2ul, 3ul, 4ul, 5ul, 8ul, 12ul}) {
        for (int trial = 0; trial < 10; ++trial) {
            Cyclotomic a = random_element(rng, n), b = random_element(rng, n), c = random_element(rng, n);
            CHECK((a + b) + c == a + (b + c));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * b == b * a);
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a - a == Cyclotomic(0));
            if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
        }
    }
}

TEST_CASE("mixed conductors lift to the lcm") {
    Cyclotomic x = Cyclotomic::zeta(3) * Cyclotomic::zeta(4);
    CHECK(x.conductor() == 12);
    CHECK(x == Cyclotomic::zeta(12, 7));
}

TEST_CASE("complex embeddings agree with arithmetic") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        Cyclotomic a = random_element(rng, 5), b = random_element(rng, 8);
        std::complex<double> lhs = (a * b).embed(), rhs = a.embed() * b.embed();
        CHECK(std::abs(lhs - rhs) < 1e-9 * (1 + std::abs(rhs)));
    }
}

TEST_CASE("is_root_of_unity") {
    auto t = is_root_of_unity(Cyclotomic::zeta(5));
    CHECK(t.is_root);
    CHECK(*t.order == 5);
    t = is_root_of_unity(-Cyclotomic::zeta(5, 2));
    CHECK(t.is_root);
    CHECK(*t.order == 10);
    Cyclotomic golden = Cyclotomic(1) + Cyclotomic::zeta(5) + Cyclotomic::zeta(5, 4);
    t = is_root_of_unity(golden);
    CHECK_FALSE(t.is_root);
    CHECK_FALSE(t.order.has_value());
    CHECK_THROWS(is_root_of_unity(Cyclotomic(0)));
    CHECK(*is_root_of_unity(Cyclotomic(1)).order == 1);
    CHECK(*is_root_of_unity(Cyclotomic(-1)).order == 2);
}

TEST_CASE("is_root_of_unity matches unit-modulus at every embedding") {
    std::mt19937_64 rng(3);
    int checked = 0;
    for (unsigned long n : {5ul, 7ul, 8ul, 12ul}) {
        for (int trial = 0; trial < 25; ++trial, ++checked) {
            // products of roots of unity and cyclotomic units 1 + zeta^k
            Cyclotomic x = Cyclotomic::zeta(n, static_cast<long>(rng() % n));
            const long k = 1 + static_cast<long>(rng() % (n - 1));
            if (rng() % 2 && 2 * k != static_cast<long>(n))
                x *= (Cyclotomic(1) + Cyclotomic::zeta(n, k)).pow(static_cast<long>(rng() % 3) - 1);
            bool unit_modulus = true;
            for (long j = 1; j < static_cast<long>(n); ++j)
                if (std::gcd(j, static_cast<long>(n)) == 1)
                    unit_modulus = unit_modulus && std::abs(std::abs(x.embed(j)) - 1.0) < 1e-12;
            CHECK(is_root_of_unity(x).is_root == unit_modulus);
        }
    }
    CHECK(checked == 100);
}

TEST_CASE("rank_exact examples") {
    Cyclotomic z4 = Cyclotomic::zeta(4), z3 = Cyclotomic::zeta(3);
    CHECK(rank_exact(Matrix<Cyclotomic>{{Cyclotomic(1) - z4, 0}, {0, 0}}) == 1);
    CHECK(rank_exact(Matrix<Cyclotomic>{{1, z3}, {z3 * z3, 1}}) == 1);
    CHECK(rank_exact(Matrix<Cyclotomic>(3, 3)) == 0);
    CHECK(rank_exact(Matrix<Cyclotomic>{{1, 2}, {3, 4}}) == 2);
    CHECK(determinant(Matrix<Cyclotomic>{{1, 2}, {3, 4}}) == Cyclotomic(-2));
}

TEST_CASE("rank is invariant under permutation and lifting") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        Matrix<Cyclotomic> m(3, 4);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 4; ++j) m(i, j) = random_element(rng, 3);
        for (std::size_t j = 0; j < 4; ++j) m(2, j) = m(0, j) * Cyclotomic::zeta(3) - m(1, j);
        const std::size_t r = rank_exact(m);
        CHECK(r <= 2);
        Matrix<Cyclotomic> p = m;
        p.swap_rows(0, 2);
        p.swap_cols(1, 3);
        CHECK(rank_exact(p) == r);
        CHECK(rank_exact(m.map([](const Cyclotomic& x) { return x.lifted(12); })) == r);
    }
}

TEST_CASE("laurent polynomial ring") {
    LaurentPoly a = LaurentPoly::variable(2, 0), b = LaurentPoly::variable(2, 1);
    LaurentPoly one(2, Cyclotomic(1));
    LaurentPoly p = (a - one) * (b - one);
    CHECK(p.size() == 4);
    auto q = p.divide_exact(b - one);
    REQUIRE(q.has_value());
    CHECK(*q == a - one);
    CHECK_FALSE((a + one).divide_exact(b - one).has_value());
    LaurentPoly inv_a = LaurentPoly::monomial(2, {-1, 0});
    CHECK(a * inv_a == one);
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 10; ++trial) {
        LaurentPoly x(2), y(2), z(2);
        for (int k = 0; k < 3; ++k) {
            x.add_term({static_cast<long>(rng() % 5) - 2, static_cast<long>(rng() % 5) - 2}, Cyclotomic(1 + static_cast<long>(rng() % 3)));
            y.add_term({static_cast<long>(rng() % 5) - 2, static_cast<long>(rng() % 5) - 2}, Cyclotomic::zeta(3));
            z.add_term({static_cast<long>(rng() % 5) - 2, 0}, Cyclotomic(-1));
        }
        CHECK(x * y == y * x);
        CHECK((x * y) * z == x * (y * z));
        if (!y.is_zero()) {
            auto d = (x * y).divide_exact(y);
            REQUIRE(d.has_value());
            CHECK(*d == x);
        }
    }
}

TEST_CASE("rank_generic examples") {
    LaurentPoly a = LaurentPoly::variable(2, 0), b = LaurentPoly::variable(2, 1);
    LaurentPoly one(2, Cyclotomic(1));
    CHECK(rank_generic(Matrix<LaurentPoly>{{one - b, a - one}}) == 1);
    CHECK(rank_generic(Matrix<LaurentPoly>(0, 3)) == 0);
    Matrix<LaurentPoly> m{{one - b, a - one}, {(one - b) * a, (a - one) * a}};
    CHECK(rank_generic(m) == 1);
    CHECK(determinant(m).is_zero());
    Matrix<LaurentPoly> n{{a, b}, {one, one}};
    CHECK(rank_generic(n) == 2);
    CHECK(determinant(n) == a - b);
}

TEST_CASE("generic rank dominates specialisations") {
    LaurentPoly a = LaurentPoly::variable(1, 0);
    LaurentPoly one(1, Cyclotomic(1));
    Matrix<LaurentPoly> m{{a - one, a * a - one}, {one, a + one}};
    // second column = (a + 1) * first; generic rank 1
    CHECK(rank_generic(m) == 1);
    for (long k = 0; k < 6; ++k) {
        std::vector<Cyclotomic> pt{Cyclotomic::zeta(6, k)};
        CHECK(rank_exact(m.map([&](const LaurentPoly& p) { return p.evaluate(pt); })) <= 1);
    }
}

TEST_CASE("univariate gcd") {
    UniPoly p = UniPoly::x_minus(Cyclotomic(1)) * UniPoly::x_minus(Cyclotomic::zeta(3));
    UniPoly q = UniPoly::x_minus(Cyclotomic::zeta(3)) * UniPoly::x_minus(Cyclotomic(2));
    CHECK(UniPoly::gcd(p, q) == UniPoly::x_minus(Cyclotomic::zeta(3)));
    auto [quo, rem] = p.divmod(UniPoly::x_minus(Cyclotomic(1)));
    CHECK(rem.is_zero());
    CHECK(quo == UniPoly::x_minus(Cyclotomic::zeta(3)));
}

TEST_CASE("rational solve") {
    auto x = solve_rational(Matrix<Rational>{{1, 2}, {3, 4}}, {Rational(5), Rational(6)});
    CHECK(x[0] == Rational(-4));
    CHECK(x[1] == Rational(9, 2));
}
