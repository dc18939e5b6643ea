#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "jumploci/lattice.hpp"
#include "jumploci/matrix.hpp"

namespace jumploci {

struct Letter {
    std::size_t gen;
    int exp;  // +1 or -1
    friend bool operator==(const Letter&, const Letter&) = default;
    friend auto operator<=>(const Letter&, const Letter&) = default;
};

/// Freely reduced word in a free group.
class Word {
public:
    Word() = default;
    explicit Word(std::vector<Letter> letters);  // reduces
    static Word generator(std::size_t g, int exp = 1);
    static Word commutator(const Word& x, const Word& y);

    const std::vector<Letter>& letters() const { return letters_; }
    std::size_t length() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }

    Word inverse() const;
    Word power(long n) const;
    Word cyclically_reduced() const;
    friend Word operator*(const Word& a, const Word& b);
    friend bool operator==(const Word&, const Word&) = default;
    friend auto operator<=>(const Word&, const Word&) = default;

    std::string to_string(const std::vector<std::string>& names) const;

private:
    std::vector<Letter> letters_;
};

struct FinitePresentation {
    std::vector<std::string> generator_names;
    std::vector<Word> relators;
    bool aspherical = false;

    std::size_t generator_count() const { return generator_names.size(); }
    std::size_t relator_count() const { return relators.size(); }

    /// Validates letter indices, cyclically reduces relators and drops the
    /// trivial ones.
    static FinitePresentation make(std::vector<std::string> names, std::vector<Word> relators,
                                   bool aspherical);
};

/// Parses juxtaposed generator names with `^n` powers (n may be negative),
/// parentheses, and `[x,y]` = x y x^-1 y^-1. Names are matched longest-first.
Word parse_word(std::string_view text, const std::vector<std::string>& names);

/// Reads `{"generators": [...], "relators": [...], "aspherical": bool}`.
FinitePresentation parse_presentation_json(std::string_view text);
std::string presentation_to_json(const FinitePresentation& p);

/// Element of H_1 = Z^b + (+)_i Z/d_i in Smith coordinates.
struct H1Element {
    std::vector<long> free;
    std::vector<long> torsion;  // residues in [0, d_i)
    friend bool operator==(const H1Element&, const H1Element&) = default;
    friend auto operator<=>(const H1Element&, const H1Element&) = default;
};

struct AbelianizationData {
    std::size_t free_rank = 0;
    std::vector<long> torsion;  // d_1 | d_2 | ..., each >= 2
    /// generator_count x (free_rank + torsion.size()); row j holds the
    /// coordinates of generator j (torsion entries reduced mod d_i).
    IntMatrix generator_coords;
    /// (free_rank + torsion.size()) x generator_count; row k expresses the k-th
    /// basis element of H_1 as an exponent vector over the generators.
    IntMatrix basis_in_generators;

    std::size_t coordinate_count() const { return free_rank + torsion.size(); }
    H1Element zero() const;
    H1Element generator(std::size_t j, int exp = 1) const;
    H1Element add(const H1Element& a, const H1Element& b) const;
    H1Element negate(const H1Element& a) const;
    H1Element project(const Word& w) const;
    H1Element reduce(std::vector<long> free, std::vector<long> torsion) const;
};

AbelianizationData abelianize(const FinitePresentation& p);

/// Integer relator exponent-sum matrix (relators x generators).
IntMatrix exponent_matrix(const FinitePresentation& p);

/// Element of the integral group ring Z[H_1].
using GroupRingElement = std::map<H1Element, Integer>;

void add_term(GroupRingElement& x, const H1Element& e, const Integer& c);

/// Row i = abelianised Fox derivatives of relator i.
struct AlexanderMatrix {
    Matrix<GroupRingElement> entries;
    AbelianizationData abelianization;
};

AlexanderMatrix fox_matrix(const FinitePresentation& p, const AbelianizationData& a);

/// A homomorphism H_1 -> Q = (+)_k Z/n_k onto a finite abelian group.
struct AbelianQuotient {
    std::vector<long> moduli;
    /// coordinate_count x moduli.size(): image of each H_1 basis element.
    std::vector<std::vector<long>> images;
    std::size_t order() const;
};

struct CoverPresentation {
    FinitePresentation presentation;
    std::size_t degree = 0;
    /// Each generator of the cover as a word in the original generators.
    std::vector<Word> generator_words;
};

/// Presentation of the kernel of pi_1 -> H_1 -> Q. Throws DomainError
/// ("not a covering of the stated degree") when q is not onto Q.
CoverPresentation reidemeister_schreier(const FinitePresentation& p, const AbelianizationData& a,
                                        const AbelianQuotient& q);

/// Generator permutation/inversion: new generator i is old generator perm[i]
/// raised to signs[i].
FinitePresentation tietze_permute(const FinitePresentation& p, const std::vector<std::size_t>& perm,
                                  const std::vector<int>& signs);

}  // namespace jumploci
