#include <doctest.h>

#include <numeric>
#include <random>

#include "fixtures.hpp"
#include "jumploci/error.hpp"

using namespace jumploci;
using fixtures::q;

namespace {

std::vector<Rational> halves(std::vector<int> bits) {
    std::vector<Rational> out;
    for (int b : bits) out.push_back(q(b, 2));
    return out;
}

Character random_torsion(std::mt19937_64& rng, const AbelianizationData& a, long max_order) {
    const auto pts = enumerate_torsion_points(a, max_order);
    return to_character(pts[rng() % pts.size()], a.free_rank);
}

}  // namespace

TEST_CASE("twisted cohomology of the genus 2 surface") {
    auto g = fixtures::group("surface2");
    auto d = twisted_cohomology_dims(g, Character::trivial(4), true);
    CHECK(d.h0 == 1);
    CHECK(d.h1 == 4);
    CHECK(*d.h2 == 1);
    auto chi = fixtures::from_generator_angles(g.abelianization, halves({1, 0, 0, 0}));
    d = twisted_cohomology_dims(g, chi, true);
    CHECK(d.h0 == 0);
    CHECK(d.h1 == 2);
    CHECK(*d.h2 == 0);
}

TEST_CASE("twisted cohomology of Z^2 and F_2") {
    auto z2 = fixtures::group("z2");
    auto chi = fixtures::from_generator_angles(z2.abelianization, halves({1, 0}));
    auto d = twisted_cohomology_dims(z2, chi, true);
    CHECK(d.h0 == 0);
    CHECK(d.h1 == 0);
    CHECK(*d.h2 == 0);
    CHECK_FALSE(sigma_membership(z2, chi, 1, 1));

    auto f2 = fixtures::group("free2");
    std::mt19937_64 rng(3);
    for (int t = 0; t < 10; ++t) {
        Character c = random_torsion(rng, f2.abelianization, 6);
        if (c.is_trivial()) continue;
        CHECK(sigma_membership(f2, c, 1, 1));
    }
    CHECK(sigma_membership(f2, Character::trivial(2), 1, 2));
    CHECK_FALSE(sigma_membership(f2, Character::trivial(2), 1, 3));
}

TEST_CASE("degree two needs an aspherical flag") {
    auto g = fixtures::group("z3");
    CHECK_THROWS_WITH(twisted_cohomology_dims(g, Character::trivial(3), true), "H² undefined for this input");
    CHECK_THROWS_AS(cohomology_dim(g, Character::trivial(3), 2), Refusal);
}

TEST_CASE("d1 composed with d0 vanishes") {
    std::mt19937_64 rng(5);
    for (const char* name : {"surface2", "trefoil", "z3_plus_z", "surface2_free_z2"}) {
        auto g = fixtures::group(name);
        for (int t = 0; t < 10; ++t) {
            auto cx = TwistedComplex::build(g, random_torsion(rng, g.abelianization, 6));
            for (std::size_t i = 0; i < cx.d1.rows(); ++i) {
                Cyclotomic s;
                for (std::size_t j = 0; j < cx.d1.cols(); ++j) s += cx.d1(i, j) * cx.d0(0, j);
                CHECK(s.is_zero());
            }
        }
    }
}

TEST_CASE("mod p scan agrees with exact dimensions") {
    for (const char* name : {"surface2", "trefoil", "z3_plus_z", "torsion_free_product", "z2"}) {
        auto g = fixtures::group(name);
        for (const auto& p : enumerate_torsion_points(g.abelianization, 4)) {
            const Character c = to_character(p, g.free_rank());
            CHECK(cohomology_dim_at(g, p, 1) == cohomology_dim(g, c, 1));
        }
    }
}

TEST_CASE("symmetries and nesting of the jump loci") {
    std::mt19937_64 rng(8);
    for (const char* name : {"surface2", "trefoil", "z3_plus_z", "surface2_free_z2", "free2"}) {
        auto g = fixtures::group(name);
        for (int t = 0; t < 15; ++t) {
            Character c = random_torsion(rng, g.abelianization, 6);
            const long h = cohomology_dim(g, c, 1);
            CHECK(h >= 0);
            CHECK(cohomology_dim(g, c.conj(), 1) == h);
            CHECK(cohomology_dim(g, c.inverse(), 1) == h);
            for (long m = 1; m <= 4; ++m)
                if (sigma_membership(g, c, 1, m + 1)) CHECK(sigma_membership(g, c, 1, m));
        }
    }
}

TEST_CASE("Euler characteristic of the surface") {
    auto g = fixtures::group("surface2");
    std::mt19937_64 rng(11);
    for (int t = 0; t < 25; ++t) {
        Character c = random_torsion(rng, g.abelianization, 6);
        auto d = twisted_cohomology_dims(g, c, true);
        CHECK(d.h0 - d.h1 + *d.h2 == -2);
        CHECK(d.h1 == 2 + 2 * (c.is_trivial() ? 1 : 0));
    }
}

TEST_CASE("certification examples") {
    auto s = fixtures::group("surface2");
    auto full = TranslatedSubtorus::full(4, Character::trivial(4));
    CHECK(certify_component(s, full, 1, 2).status == Status::certified);
    CHECK(certify_component(s, full, 1, 3).status == Status::refuted);
    auto z2 = fixtures::group("z2");
    CHECK(certify_component(z2, TranslatedSubtorus::full(2, Character::trivial(2)), 1, 1).status ==
          Status::refuted);
    auto f2 = fixtures::group("free2");
    CHECK(certify_component(f2, TranslatedSubtorus::point(Character::trivial(2)), 1, 2).status ==
          Status::certified);
    CHECK_THROWS_AS(certify_component(f2, full, 1, 1), DomainError);
}

TEST_CASE("discovery on the genus 2 surface") {
    auto g = fixtures::group("surface2");
    DiscoveryOptions opt;
    opt.K = 3;
    auto r = discover_components(g, 1, 1, opt);
    REQUIRE(r.certified().size() == 1);
    CHECK(r.certified()[0]->torus.dimension() == 4);
    CHECK(r.residuals.empty());
    CHECK(count_Ng(r, 2) == 1);
    CHECK(count_Ng(r, 3) == 0);
    CHECK_THROWS_AS(count_Ng(r, 1), DomainError);
    auto cert = abelian_cover_certificate(g, r);
    REQUIRE(cert);
    CHECK(cert->cover.degree == 1);
    CHECK(cert->contains_trivial);
    CHECK(cert->certification.status == Status::certified);
}

TEST_CASE("discovery on free abelian groups") {
    for (const char* name : {"z2", "z3"}) {
        auto g = fixtures::group(name);
        DiscoveryOptions opt;
        opt.K = 4;
        auto r = discover_components(g, 1, 1, opt);
        REQUIRE(r.certified().size() == 1);
        CHECK(r.certified()[0]->torus.dimension() == 0);
        CHECK(r.certified()[0]->torus.translate.is_trivial());
        CHECK(r.members.size() == 1);
        CHECK_FALSE(abelian_cover_certificate(g, r));
    }
}

TEST_CASE("product with Z^2 keeps the second factor trivial") {
    auto g = fixtures::group("surface2_x_z2");
    DiscoveryOptions opt;
    opt.K = 3;
    auto r = discover_components(g, 1, 1, opt);
    std::size_t positive = 0;
    for (const auto* c : r.certified()) {
        if (c->torus.dimension() == 0) continue;
        ++positive;
        CHECK(c->torus.dimension() == 4);
        CHECK(c->torus.contains(Character::trivial(6)));
    }
    CHECK(positive == 1);
    CHECK(r.residuals.empty());
}

TEST_CASE("torsion translated components") {
    auto g = fixtures::group("surface2_free_z2");
    DiscoveryOptions opt;
    opt.K = 4;
    auto r = discover_components(g, 1, 3, opt);
    // the translated (C*)^4 and the isolated trivial character, where h^1 = 4
    REQUIRE(r.certified().size() == 2);
    const auto& t = r.certified()[0]->torus;
    CHECK(t.dimension() == 4);
    CHECK(r.certified()[1]->torus.translate.is_trivial());
    CHECK(t.has_torsion_translate());
    CHECK_FALSE(t.translate.is_trivial());
    auto cert = abelian_cover_certificate(g, r);
    REQUIRE(cert);
    CHECK(cert->cover.degree == 2);
    CHECK(cert->contains_trivial);
    CHECK(cert->certification.status == Status::certified);

    auto h = fixtures::group("torsion_free_product");
    auto rh = discover_components(h, 1, 1, opt);
    bool translated = false;
    for (const auto* c : rh.certified())
        if (c->torus.dimension() == 1 && !c->torus.translate.is_trivial()) translated = true;
    CHECK(translated);
}

TEST_CASE("certificate needs a torsion translate") {
    auto g = fixtures::group("surface2");
    auto t = TranslatedSubtorus::point(Character::with_moduli({q(2), q(1), q(1), q(1)}, {q(0), q(0), q(0), q(0)}));
    CHECK_THROWS_WITH(cover_certificate_for(g, t), "certificate requires torsion translate");
}

TEST_CASE("reports do not depend on the presentation") {
    std::mt19937_64 rng(13);
    for (const char* name : {"surface2", "trefoil", "torsion_free_product", "z3_plus_z"}) {
        const auto p = fixtures::presentation(name);
        const auto g = GroupData::from(p);
        DiscoveryOptions opt;
        opt.K = 4;
        const auto base = discover_components(g, 1, 1, opt);
        for (int t = 0; t < 3; ++t) {
            std::vector<std::size_t> perm(p.generator_count());
            std::iota(perm.begin(), perm.end(), 0);
            std::shuffle(perm.begin(), perm.end(), rng);
            std::vector<int> signs;
            for (std::size_t i = 0; i < perm.size(); ++i) signs.push_back(rng() % 2 ? 1 : -1);
            const auto g2 = GroupData::from(tietze_permute(p, perm, signs));
            const auto other = discover_components(g2, 1, 1, opt);
            REQUIRE(other.certified().size() == base.certified().size());
            CHECK(other.members.size() == base.members.size());
            std::vector<TranslatedSubtorus> lhs, rhs;
            for (const auto* c : base.certified()) {
                auto gc = generator_coordinates(c->torus, g.abelianization);
                lhs.push_back(permute_generator_torus(gc, perm, signs));
            }
            for (const auto* c : other.certified()) rhs.push_back(generator_coordinates(c->torus, g2.abelianization));
            for (const auto& x : lhs) CHECK(std::find(rhs.begin(), rhs.end(), x) != rhs.end());
        }
    }
}

TEST_CASE("product of surface groups") {
    auto g = fixtures::group("surface2_x_surface3");
    DiscoveryOptions opt;
    opt.K = 3;
    auto r = discover_components(g, 1, 1, opt);
    std::vector<std::size_t> dims;
    for (const auto* c : r.certified())
        if (c->torus.dimension() > 0 && c->torus.contains(Character::trivial(10))) dims.push_back(c->torus.dimension());
    std::sort(dims.begin(), dims.end());
    CHECK(dims == std::vector<std::size_t>{4, 6});
    CHECK(count_Ng(r, 2) == 1);
    CHECK(count_Ng(r, 3) == 1);
    CHECK(count_Ng(r, 4) == 0);
}
