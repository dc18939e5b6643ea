#pragma once

// Exact scalars and exact ranks: cyclotomic numbers, Laurent polynomials over
// them, fraction-free elimination, and the mod-p lower bounds that let most
// rank queries skip the exact path.

#include <cstddef>
#include <cstdint>
#include <optional>

#include "jumploci/cyclotomic.hpp"
#include "jumploci/laurent.hpp"
#include "jumploci/matrix.hpp"

namespace jumploci {

/// Rank over F_p by plain Gaussian elimination.
std::size_t rank_modp(Matrix<std::uint64_t> m, std::uint64_t p);

/// Rank of `m` reduced through the mod-p embedding of the common conductor;
/// a lower bound for the rank over Q(zeta). nullopt if some entry has a
/// denominator divisible by p.
std::optional<std::size_t> rank_lower_bound_modp(const Matrix<Cyclotomic>& m);

/// Rank over Q(zeta_n). `upper_bound`, when the caller knows one, lets a
/// matching mod-p lower bound settle the answer without exact elimination.
std::size_t rank_exact(const Matrix<Cyclotomic>& m,
                       std::optional<std::size_t> upper_bound = std::nullopt);

/// Rank of the specialisation at a pseudo-random point modulo p; never
/// exceeds the generic rank.
std::size_t generic_rank_lower_bound(const Matrix<LaurentPoly>& m, std::uint64_t seed = 0x5eed);

/// Rank over the fraction field of the Laurent ring, by Bareiss elimination
/// with exact polynomial division.
std::size_t rank_generic(const Matrix<LaurentPoly>& m,
                         std::optional<std::size_t> upper_bound = std::nullopt);

Cyclotomic determinant(const Matrix<Cyclotomic>& m);
LaurentPoly determinant(const Matrix<LaurentPoly>& m);

/// Rank over Q.
std::size_t rank_rational(const Matrix<Rational>& m);

/// Solution of a square nonsingular rational system.
std::vector<Rational> solve_rational(Matrix<Rational> a, std::vector<Rational> b);

}  // namespace jumploci
