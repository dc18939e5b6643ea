#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace jumploci {

using Integer = mpz_class;
using Rational = mpq_class;

/// "p" or "p/q" in lowest terms or not; throws ParseError naming `where`.
Rational parse_rational(const std::string& text, const std::string& where);

unsigned long gcd_u(unsigned long a, unsigned long b);
unsigned long lcm_u(unsigned long a, unsigned long b);
unsigned long euler_phi(unsigned long n);
std::vector<unsigned long> prime_factors(unsigned long n);
std::vector<unsigned long> divisors(unsigned long n);

/// Integer coefficients of the n-th cyclotomic polynomial, constant term first.
const std::vector<long>& cyclotomic_polynomial(unsigned long n);

/// Element of the cyclotomic field Q(zeta_n), stored in the power basis
/// 1, zeta, ..., zeta^(phi(n)-1) reduced modulo Phi_n.
///
/// Conductors congruent to 2 mod 4 never occur: Q(zeta_2k) = Q(zeta_k) for odd
/// k and `zeta()` rewrites such roots into the smaller field. Binary operations
/// lift both operands to the lcm of their conductors.
class Cyclotomic {
public:
    Cyclotomic() : conductor_(1), coeffs_(1) {}
    Cyclotomic(long value) : conductor_(1), coeffs_{Rational(value)} {}
    Cyclotomic(Rational value) : conductor_(1), coeffs_{std::move(value)} { coeffs_[0].canonicalize(); }

    /// zeta_n^k with zeta_n = exp(2 pi i / n).
    static Cyclotomic zeta(unsigned long n, long k = 1);
    /// exp(2 pi i q) for a rational q.
    static Cyclotomic root_of_unity(const Rational& angle);
    /// sum_k c_k zeta_n^k for arbitrary integer exponents k.
    static Cyclotomic from_terms(unsigned long n,
                                 const std::vector<std::pair<long, Rational>>& terms);

    unsigned long conductor() const { return conductor_; }
    const std::vector<Rational>& coefficients() const { return coeffs_; }

    Cyclotomic lifted(unsigned long target) const;
    /// Same element expressed over the smallest conductor that contains it.
    Cyclotomic canonical() const;

    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const;
    Rational rational_value() const;  // requires is_rational()

    Cyclotomic operator-() const;
    Cyclotomic& operator+=(const Cyclotomic& o);
    Cyclotomic& operator-=(const Cyclotomic& o);
    Cyclotomic& operator*=(const Cyclotomic& o);
    Cyclotomic& operator/=(const Cyclotomic& o);
    friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
    friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
    friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
    friend Cyclotomic operator/(Cyclotomic a, const Cyclotomic& b) { return a /= b; }
    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);

    Cyclotomic inverse() const;
    Cyclotomic pow(long e) const;
    /// Galois automorphism zeta -> zeta^a, gcd(a, conductor) = 1.
    Cyclotomic galois(long a) const;
    Cyclotomic conj() const { return galois(-1); }

    /// Complex value under the embedding zeta_n -> exp(2 pi i j / n).
    std::complex<double> embed(long j = 1) const;

    /// Canonical text: "n:[c0,c1,...]" over the minimal conductor.
    std::string to_string() const;

private:
    Cyclotomic(unsigned long n, std::vector<Rational> coeffs)
        : conductor_(n), coeffs_(std::move(coeffs)) {}
    static std::vector<Rational> reduce(unsigned long n, std::vector<Rational> poly);

    unsigned long conductor_;
    std::vector<Rational> coeffs_;
};

struct RootOfUnityTest {
    bool is_root;
    std::optional<unsigned long> order;
};

/// Kronecker-style test inside Q(zeta_n): the roots of unity there are exactly
/// the lcm(2, n)-th roots. Throws DomainError on zero.
RootOfUnityTest is_root_of_unity(const Cyclotomic& x);

/// Reduction of Z[zeta_N] localised away from p into F_p, zeta_N mapped to a
/// fixed primitive N-th root of unity modulo a prime p = 1 mod N.
class ModpEmbedding {
public:
    static const ModpEmbedding& for_conductor(unsigned long n);

    std::uint64_t prime() const { return p_; }
    unsigned long conductor() const { return n_; }
    /// nullopt when a coefficient denominator vanishes mod p.
    std::optional<std::uint64_t> reduce(const Cyclotomic& x) const;
    std::optional<std::uint64_t> reduce(const Rational& q) const;
    std::uint64_t zeta_power(long k) const;  // image of zeta_N^k

    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return a * b % p_; }
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
        std::uint64_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const {
        return a >= b ? a - b : a + p_ - b;
    }
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
    std::uint64_t inv(std::uint64_t a) const { return pow(a, p_ - 2); }

private:
    ModpEmbedding(unsigned long n);
    unsigned long n_;
    std::uint64_t p_;
    std::uint64_t omega_;
};

}  // namespace jumploci
