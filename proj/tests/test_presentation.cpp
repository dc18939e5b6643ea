#include <doctest.h>

#include <random>

#include "jumploci/error.hpp"
#include "jumploci/presentation.hpp"

using namespace jumploci;

namespace {

FinitePresentation surface(int genus) {
    std::vector<std::string> names;
    std::string rel;
    for (int k = 1; k <= genus; ++k) {
        names.push_back("a" + std::to_string(k));
        names.push_back("b" + std::to_string(k));
        rel += "[a" + std::to_string(k) + ",b" + std::to_string(k) + "]";
    }
    return FinitePresentation::make(names, {parse_word(rel, names)}, true);
}

FinitePresentation from(std::vector<std::string> names, std::vector<std::string> rels) {
    std::vector<Word> words;
    for (const auto& r : rels) words.push_back(parse_word(r, names));
    return FinitePresentation::make(names, words, false);
}

// Z[H_1] evaluated at the all-ones point of the free part: sum of coefficients
// grouped by nothing, i.e. the augmentation.
Integer augmentation(const GroupRingElement& x) {
    Integer s = 0;
    for (const auto& [e, c] : x) s += c;
    return s;
}

GroupRingElement mul(const AbelianizationData& a, const GroupRingElement& x, const GroupRingElement& y) {
    GroupRingElement out;
    for (const auto& [e1, c1] : x)
        for (const auto& [e2, c2] : y) add_term(out, a.add(e1, e2), c1 * c2);
    return out;
}

}  // namespace

TEST_CASE("words reduce freely") {
    std::vector<std::string> names{"a", "b"};
    Word w = parse_word("a b b^-1 a^-1 a", names);
    CHECK(w == Word::generator(0));
    CHECK(parse_word("[a,b]", names).length() == 4);
    CHECK(parse_word("a^3", names).length() == 3);
    CHECK(parse_word("(a b)^-2", names) == parse_word("b^-1 a^-1 b^-1 a^-1", names));
    CHECK(parse_word("b a b^-1", names).cyclically_reduced() == Word::generator(0));
    CHECK(parse_word("1", names).empty());
    CHECK_THROWS_AS(parse_word("a c", names), ParseError);
    CHECK_THROWS_AS(parse_word("[a b", names), ParseError);
}

TEST_CASE("longest generator name wins") {
    std::vector<std::string> names{"a", "a1", "b1"};
    Word w = parse_word("a1b1a", names);
    REQUIRE(w.length() == 3);
    CHECK(w.letters()[0].gen == 1);
    CHECK(w.letters()[1].gen == 2);
    CHECK(w.letters()[2].gen == 0);
}

TEST_CASE("json round trip") {
    auto p = parse_presentation_json(R"({"generators":["x","y"],"relators":["[x,y]","x^2"],"aspherical":false})");
    CHECK(p.generator_count() == 2);
    CHECK(p.relator_count() == 2);
    auto q = parse_presentation_json(presentation_to_json(p));
    CHECK(q.relators == p.relators);
    CHECK_THROWS_AS(parse_presentation_json("{"), ParseError);
    CHECK_THROWS_AS(parse_presentation_json(R"({"generators":["x"],"relators":["y"]})"), ParseError);
    CHECK_THROWS_AS(parse_presentation_json(R"({"generators":["x","x"]})"), ParseError);
}

TEST_CASE("abelianize examples") {
    auto s2 = abelianize(surface(2));
    CHECK(s2.free_rank == 4);
    CHECK(s2.torsion.empty());
    auto z2 = abelianize(from({"a", "b"}, {"[a,b]"}));
    CHECK(z2.free_rank == 2);
    CHECK(z2.torsion.empty());
    auto z3 = abelianize(from({"a"}, {"a^3"}));
    CHECK(z3.free_rank == 0);
    CHECK(z3.torsion == std::vector<long>{3});
    auto f3 = abelianize(from({"a", "b", "c"}, {}));
    CHECK(f3.free_rank == 3);
    auto mixed = abelianize(from({"a", "b", "c"}, {"a^2 b^4", "b^6", "[a,c]"}));
    CHECK(mixed.free_rank == 1);
    // relation lattice {(2,4,0),(0,6,0)} has invariants 2, 6
    CHECK(mixed.torsion == std::vector<long>{2, 6});
}

TEST_CASE("projection kills relators and basis round-trips") {
    auto p = from({"a", "b", "c"}, {"a^2 b^4", "b^6 c^3", "[a,c]"});
    auto a = abelianize(p);
    for (const auto& r : p.relators) CHECK(a.project(r) == a.zero());
    for (std::size_t k = 0; k < a.coordinate_count(); ++k) {
        std::vector<Letter> letters;
        for (std::size_t j = 0; j < p.generator_count(); ++j) {
            long e = a.basis_in_generators(k, j).get_si();
            for (long t = 0; t < std::abs(e); ++t) letters.push_back({j, e > 0 ? 1 : -1});
        }
        H1Element expect = a.zero();
        if (k < a.free_rank) expect.free[k] = 1;
        else expect.torsion[k - a.free_rank] = 1;
        CHECK(a.project(Word(letters)) == expect);
    }
}

TEST_CASE("fox derivatives") {
    auto z2 = from({"a", "b"}, {"[a,b]"});
    auto a = abelianize(z2);
    auto m = fox_matrix(z2, a);
    REQUIRE(m.entries.rows() == 1);
    // row (1 - B, A - 1)
    GroupRingElement e0, e1;
    add_term(e0, a.zero(), 1);
    add_term(e0, a.generator(1), -1);
    add_term(e1, a.generator(0), 1);
    add_term(e1, a.zero(), -1);
    CHECK(m.entries(0, 0) == e0);
    CHECK(m.entries(0, 1) == e1);

    auto c3 = from({"a"}, {"a^3"});
    auto ac = abelianize(c3);
    auto mc = fox_matrix(c3, ac);
    CHECK(mc.entries(0, 0).size() == 3);
    CHECK(augmentation(mc.entries(0, 0)) == 3);

    auto f2 = from({"a", "b"}, {});
    CHECK(fox_matrix(f2, abelianize(f2)).entries.rows() == 0);
}

TEST_CASE("fundamental identity after abelianization") {
    std::vector<FinitePresentation> corpus{surface(2), surface(3), from({"a", "b"}, {"a b a b^-1 a^-1 b^-1"}),
                                           from({"a", "b"}, {"a^3", "[a,b]"}),
                                           from({"a", "b", "c"}, {"a^2 b^4", "b^6 c^3", "[a,c]"})};
    for (const auto& p : corpus) {
        auto a = abelianize(p);
        auto m = fox_matrix(p, a);
        for (std::size_t i = 0; i < p.relator_count(); ++i) {
            GroupRingElement total;
            for (std::size_t j = 0; j < p.generator_count(); ++j) {
                GroupRingElement xj;
                add_term(xj, a.generator(j), 1);
                add_term(xj, a.zero(), -1);
                for (const auto& [e, c] : mul(a, m.entries(i, j), xj)) add_term(total, e, c);
            }
            // r - 1 maps to 0 in Z[H_1] since r is trivial in H_1
            CHECK(total.empty());
        }
        // augmentation of the Fox matrix is the exponent matrix
        IntMatrix ex = exponent_matrix(p);
        for (std::size_t i = 0; i < p.relator_count(); ++i)
            for (std::size_t j = 0; j < p.generator_count(); ++j)
                CHECK(augmentation(m.entries(i, j)) == ex(i, j));
    }
}

TEST_CASE("reidemeister-schreier examples") {
    auto z2 = from({"a", "b"}, {"[a,b]"});
    auto az = abelianize(z2);
    AbelianQuotient q{{2}, {{1}, {0}}};
    auto cov = reidemeister_schreier(z2, az, q);
    CHECK(cov.degree == 2);
    auto ac = abelianize(cov.presentation);
    CHECK(ac.free_rank == 2);
    CHECK(ac.torsion.empty());

    auto s2 = surface(2);
    auto as = abelianize(s2);
    AbelianQuotient q2{{2}, {{1}, {0}, {0}, {0}}};
    auto cs = reidemeister_schreier(s2, as, q2);
    CHECK(cs.presentation.generator_count() == 2 * (4 - 1) + 1);
    CHECK(abelianize(cs.presentation).free_rank == 6);

    auto f2 = from({"a", "b"}, {});
    auto af = abelianize(f2);
    auto cf = reidemeister_schreier(f2, af, AbelianQuotient{{3}, {{1}, {0}}});
    CHECK(cf.presentation.generator_count() == 4);
    CHECK(cf.presentation.relator_count() == 0);
    CHECK(abelianize(cf.presentation).free_rank == 4);

    CHECK_THROWS_WITH(reidemeister_schreier(f2, af, AbelianQuotient{{3}, {{0}, {0}}}),
                      "not a covering of the stated degree");
}

TEST_CASE("cover generator words lie in the kernel") {
    auto s2 = surface(2);
    auto as = abelianize(s2);
    AbelianQuotient q{{3}, {{1}, {2}, {0}, {1}}};
    auto cov = reidemeister_schreier(s2, as, q);
    CHECK(cov.degree == 3);
    for (const auto& w : cov.generator_words) {
        auto h = as.project(w);
        long s = h.free[0] * 1 + h.free[1] * 2 + h.free[3];
        CHECK(((s % 3) + 3) % 3 == 0);
    }
    // Euler characteristic: rank of H_1 of a degree-3 cover of genus 2 is 2*(3*1+1)
    CHECK(abelianize(cov.presentation).free_rank == 8);
}

TEST_CASE("smith invariants survive generator permutation and inversion") {
    auto p = from({"a", "b", "c"}, {"a^2 b^4", "b^6 c^3", "[a,c]"});
    auto base = abelianize(p);
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<std::size_t> perm{0, 1, 2};
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<int> signs{rng() % 2 ? 1 : -1, rng() % 2 ? 1 : -1, rng() % 2 ? 1 : -1};
        auto v = abelianize(tietze_permute(p, perm, signs));
        CHECK(v.free_rank == base.free_rank);
        CHECK(v.torsion == base.torsion);
    }
}
