#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "jumploci/alexander_covers.hpp"
#include "jumploci/error.hpp"

using namespace jumploci;
using fixtures::q;

namespace {

Matrix<Cyclotomic> diag(std::vector<Cyclotomic> d) {
    Matrix<Cyclotomic> m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

Matrix<Cyclotomic> one_by_one(long v) { return diag({Cyclotomic(v)}); }

bool same_up_to_unit(const LaurentPoly& a, const LaurentPoly& b) {
    const auto q = a.divide_exact(b);
    return q && q->is_unit();
}

}  // namespace

TEST_CASE("Fitting generators") {
    auto z2 = fixtures::group("z2");
    auto F = alexander_matrix(z2, {});
    CHECK(fitting_generators(F, 0).empty());
    auto e1 = fitting_generators(F, 1);
    REQUIRE(e1.size() == 2);
    const auto A = LaurentPoly::variable(2, 0), B = LaurentPoly::variable(2, 1), one = LaurentPoly(2, Cyclotomic(1));
    CHECK(((same_up_to_unit(e1[0], one - A) && same_up_to_unit(e1[1], one - B)) ||
           (same_up_to_unit(e1[0], one - B) && same_up_to_unit(e1[1], one - A))));
    CHECK(fitting_generators(F, 2) == std::vector<LaurentPoly>{one});

    auto trefoil = fixtures::group("trefoil");
    auto T = alexander_matrix(trefoil, {});
    auto e = fitting_generators(T, 1);
    REQUIRE(e.size() == 1);
    const auto t = LaurentPoly::variable(1, 0), u = LaurentPoly(1, Cyclotomic(1));
    CHECK(same_up_to_unit(e[0], t * t - t + u));
}

TEST_CASE("Fitting ideals are nested by Laplace expansion") {
    // each s-minor is a combination of (s-1)-minors along its first row
    auto g = fixtures::group("z3");
    auto F = alexander_matrix(g, {});
    CHECK(fitting_generators(F, 0).size() <= fitting_generators(F, 1).size() + 1);
    Matrix<LaurentPoly> sub(2, 2, LaurentPoly(3));
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) sub(i, j) = F(i, j);
    CHECK(determinant(sub) == sub(0, 0) * sub(1, 1) - sub(0, 1) * sub(1, 0));
}

TEST_CASE("weights") {
    auto v = ModuleAction::make({one_by_one(2)});
    CHECK(is_weight({Cyclotomic(2)}, v));
    CHECK_FALSE(is_weight({Cyclotomic(1)}, v));
    auto w = ModuleAction::make({diag({1, -1}), diag({-1, -1})});
    CHECK(is_weight({Cyclotomic(1), Cyclotomic(-1)}, w));
    CHECK_FALSE(is_weight({Cyclotomic(1), Cyclotomic(1)}, w));
    CHECK_THROWS_AS(ModuleAction::make({diag({0})}), DomainError);
    Matrix<Cyclotomic> jordan{{Cyclotomic(1), Cyclotomic(1)}, {Cyclotomic(0), Cyclotomic(1)}};
    CHECK_THROWS_AS(ModuleAction::make({jordan, diag({1, 2})}), DomainError);
}

TEST_CASE("Koszul cohomology examples") {
    CHECK(koszul_cohomology(ModuleAction::trivial(2), {Cyclotomic(1), Cyclotomic(1)}) == std::vector<long>{1, 2, 1});
    auto v = ModuleAction::make({one_by_one(2)});
    CHECK(koszul_cohomology(v, {Cyclotomic(1)}) == std::vector<long>{0, 0});
    CHECK(koszul_cohomology(v, {Cyclotomic(q(1, 2))}) == std::vector<long>{1, 1});
    for (std::size_t b = 0; b <= 4; ++b) {
        auto dims = koszul_cohomology(ModuleAction::trivial(b), std::vector<Cyclotomic>(b, Cyclotomic(1)));
        for (std::size_t p = 0; p <= b; ++p) CHECK(Integer(dims[p]) == Integer(static_cast<long>(std::tgamma(b + 1) / std::tgamma(p + 1) / std::tgamma(b - p + 1) + 0.5)));
    }
}

TEST_CASE("vanishing statement") {
    auto v = ModuleAction::make({one_by_one(2)});
    auto a = vanishing_check(v, {Cyclotomic(q(1, 2))});
    CHECK(a.inverse_is_weight);
    CHECK(a.h0_nonzero);
    CHECK(a.consistent);
    auto b = vanishing_check(v, {Cyclotomic(3)});
    CHECK_FALSE(b.inverse_is_weight);
    CHECK(b.all_vanish);
    CHECK(b.consistent);
    auto c = vanishing_check(ModuleAction::trivial(1), {Cyclotomic(1)});
    CHECK(c.h0_nonzero);
    CHECK(c.consistent);
}

TEST_CASE("Koszul duality and Euler characteristic on random actions") {
    std::mt19937_64 rng(21);
    const std::vector<Cyclotomic> values{Cyclotomic(1), Cyclotomic(-1), Cyclotomic(2), Cyclotomic(q(1, 3)),
                                         Cyclotomic::zeta(3), Cyclotomic::zeta(4)};
    for (int t = 0; t < 30; ++t) {
        const std::size_t b = 1 + rng() % 2;
        std::vector<Matrix<Cyclotomic>> ops;
        // upper triangular commuting pair: a I + c E12
        for (std::size_t j = 0; j < b; ++j) {
            Matrix<Cyclotomic> m(2, 2);
            m(0, 0) = m(1, 1) = values[rng() % values.size()];
            m(0, 1) = Cyclotomic(static_cast<long>(rng() % 3));
            ops.push_back(m);
        }
        auto v = ModuleAction::make(ops);
        std::vector<Cyclotomic> chi, inv;
        for (std::size_t j = 0; j < b; ++j) {
            chi.push_back(values[rng() % values.size()]);
            inv.push_back(chi.back().inverse());
        }
        auto h = koszul_cohomology(v, chi);
        auto hd = koszul_cohomology(v.dual(), inv);
        long euler = 0;
        for (std::size_t p = 0; p <= b; ++p) {
            CHECK(h[p] == hd[b - p]);
            euler += (p % 2 ? -1 : 1) * h[p];
        }
        CHECK(euler == 0);
        CHECK(vanishing_check(v, chi).consistent);
    }
}

TEST_CASE("weights of finite Alexander modules") {
    for (const char* name : {"z1", "z2", "z3_plus_z"}) {
        auto g = fixtures::group(name);
        auto r = weights_and_W(g, 2, 6);
        CHECK(r.finiteness == Finiteness::finite);
        CHECK(r.weights.size() == 1);
        CHECK(r.identity_holds);
    }
    auto trefoil = fixtures::group("trefoil");
    auto r = weights_and_W(trefoil, 2, 6);
    CHECK(r.finiteness == Finiteness::finite);
    REQUIRE(r.weights.size() == 3);
    for (const auto& w : r.weights) {
        CHECK(w.exact);
        CHECK(is_root_of_unity(Cyclotomic::root_of_unity(w.character.angles[0])).is_root);
    }
    CHECK(*r.weights[1].order == 6);
    CHECK(r.identity_holds);
}

TEST_CASE("infinite Alexander modules are reported") {
    auto s = fixtures::group("surface2");
    auto r = weights_and_W(s, 2, 3);
    CHECK(r.finiteness == Finiteness::infinite);
    CHECK_FALSE(r.identity_holds);
    CHECK_THROWS_AS(weights_and_W(s, 3, 3), Refusal);
}

TEST_CASE("finite cover check") {
    auto z2 = fixtures::group("z2");
    auto r = finite_cover_check(z2, 2, 4);
    CHECK(r.cover.degree == 1);
    CHECK(r.passed);
    auto t = fixtures::group("trefoil");
    auto rt = finite_cover_check(t, 2, 6);
    // the 6-fold cyclic cover of the trefoil complement has group F_2 x Z,
    // whose jump locus is positive dimensional: the knot group is not Kaehler
    CHECK(rt.cover.degree == 6);
    CHECK_FALSE(rt.passed);
    auto z3z = fixtures::group("z3_plus_z");
    CHECK(finite_cover_check(z3z, 2, 6).passed);
    CHECK_THROWS_WITH(finite_cover_check(fixtures::group("free2"), 2, 3), "finiteness hypotheses fail");
}

TEST_CASE("joint kernel quotients") {
    auto g = fixtures::group("z2");
    const auto pts = enumerate_torsion_points(g.abelianization, 6);
    std::mt19937_64 rng(4);
    for (int t = 0; t < 20; ++t) {
        std::vector<TorsionPoint> chosen;
        for (int k = 0; k < 2; ++k) chosen.push_back(pts[rng() % pts.size()]);
        auto q = joint_kernel_quotient(g.abelianization, chosen);
        // the quotient order is the size of the group the characters generate
        std::set<std::vector<long>> span;
        const long L = chosen[0].den;
        for (long a = 0; a < 6; ++a)
            for (long b = 0; b < 6; ++b) {
                std::vector<long> v(2);
                for (std::size_t c = 0; c < 2; ++c) v[c] = ((a * chosen[0].num[c] + b * chosen[1].num[c]) % L + L) % L;
                span.insert(v);
            }
        CHECK(q.order() == span.size());
    }
}
