#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "jumploci/cyclotomic.hpp"
#include "jumploci/lattice.hpp"
#include "jumploci/presentation.hpp"

namespace jumploci {

/// A character H_1 -> C*. On the free basis element k it takes the value
/// moduli[k] * exp(2 pi i angles[k]); on the i-th torsion basis element it
/// takes exp(2 pi i torsion[i]) with torsion[i] in (1/d_i)Z / Z.
///
/// Numeric mode keeps moduli and angles of the free part as doubles; the
/// torsion part is always exact.
struct Character {
    bool exact = true;
    std::vector<Rational> moduli;
    std::vector<Rational> angles;  // in [0, 1)
    std::vector<Rational> torsion;  // in [0, 1)
    std::vector<double> numeric_moduli;
    std::vector<double> numeric_angles;

    static Character trivial(std::size_t free_rank, std::size_t torsion_count = 0);
    static Character unitary(std::vector<Rational> angles, std::vector<Rational> torsion = {});
    static Character with_moduli(std::vector<Rational> moduli, std::vector<Rational> angles,
                                 std::vector<Rational> torsion = {});

    std::size_t free_rank() const { return exact ? angles.size() : numeric_angles.size(); }
    bool is_unitary() const;
    bool is_trivial() const;
    /// Multiplicative order when finite (unitary exact characters).
    std::optional<unsigned long> order() const;

    /// Exact value on an element of H_1; requires exact mode.
    Cyclotomic evaluate(const H1Element& h) const;
    std::complex<double> evaluate_numeric(const H1Element& h) const;
    /// Values on the presentation generators.
    std::vector<Cyclotomic> generator_values(const AbelianizationData& a) const;
    std::vector<std::complex<double>> generator_values_numeric(const AbelianizationData& a) const;

    Character operator*(const Character& o) const;
    Character inverse() const;
    Character conj() const;
    Character power(long k) const;

    nlohmann::json to_json() const;

    friend bool operator==(const Character&, const Character&) = default;
};

/// fractional part in [0, 1)
Rational frac(const Rational& q);

/// Torsion point with all angles written over a common denominator:
/// angle_c = num[c] / den (free coordinates first, then torsion).
struct TorsionPoint {
    long den = 1;
    std::vector<long> num;
    friend bool operator==(const TorsionPoint&, const TorsionPoint&) = default;
    friend auto operator<=>(const TorsionPoint&, const TorsionPoint&) = default;
};

long torsion_point_order(const TorsionPoint& p);
Character to_character(const TorsionPoint& p, std::size_t free_rank);

/// All characters of order <= K, each once, lexicographic in their angle
/// vectors. Every point shares the denominator lcm(1..K).
std::vector<TorsionPoint> enumerate_torsion_points(const AbelianizationData& a, long K);
std::vector<Character> enumerate_torsion_characters(const AbelianizationData& a, long K);

/// |{chi : chi^k = 1}| = k^b * prod gcd(k, d_i).
Integer count_killed_by(const AbelianizationData& a, long k);

enum class ActionVariant { A, B };

struct ActionResult {
    Character character;
    bool numeric_forced = false;
};

/// t * chi. Variant A scales the angles and fixes the moduli; variant B fixes
/// the angles and raises the moduli to the power t. Both are trivial on the
/// torsion part.
ActionResult rplus_act(const Rational& t, const Character& chi, ActionVariant variant);

/// Connected translated subtorus tau * T of the character torus, where T is
/// cut out by z^u = 1 for the rows u of `annihilator`, and tau fixes the
/// torsion part (connected components of Char lie over one torsion character).
struct TranslatedSubtorus {
    std::size_t free_rank = 0;
    IntMatrix annihilator;  // row HNF, saturated
    IntMatrix basis;        // free_rank x dim, column HNF of the kernel
    Character translate;

    static TranslatedSubtorus make(std::size_t free_rank, const IntMatrix& relations, Character translate);
    static TranslatedSubtorus full(std::size_t free_rank, Character translate);
    static TranslatedSubtorus point(Character c);

    std::size_t dimension() const { return free_rank - annihilator.rows(); }
    bool contains(const Character& chi) const;
    /// tau can be taken unitary: the moduli of tau satisfy every defining equation.
    bool is_unitary_translate() const;
    bool has_torsion_translate() const;

    nlohmann::json to_json() const;
    friend bool operator==(const TranslatedSubtorus&, const TranslatedSubtorus&) = default;
};

bool contains(const TranslatedSubtorus& outer, const TranslatedSubtorus& inner);

/// Connected components of the intersection, sorted; empty when disjoint.
/// Requires unitary translates.
std::vector<TranslatedSubtorus> intersect(const TranslatedSubtorus& a, const TranslatedSubtorus& b);

/// Representative of tau modulo the subtorus: angles reduced to a canonical
/// coset representative (unitary translates only; moduli kept verbatim).
Character canonical_translate(const IntMatrix& annihilator, const Character& tau);

/// Zariski closure of the orbit R+ * chi.
TranslatedSubtorus orbit_closure(const Character& chi, ActionVariant variant);

/// Point tau * prod_k s_k^{B_{.k}} of the subtorus, for positive rational s.
Character subtorus_point(const TranslatedSubtorus& t, const std::vector<Rational>& s,
                         const std::vector<Rational>& angle_shift = {});

}  // namespace jumploci
