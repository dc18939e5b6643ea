#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jumploci/cyclotomic.hpp"

namespace jumploci {

using Exponent = std::vector<long>;

/// Multivariate Laurent polynomial with cyclotomic coefficients. Terms are
/// kept in lexicographic exponent order with no zero coefficients; lex order is
/// a group order on Z^n, which makes leading-term division exact.
class LaurentPoly {
public:
    LaurentPoly() = default;
    explicit LaurentPoly(std::size_t nvars) : nvars_(nvars) {}
    LaurentPoly(std::size_t nvars, const Cyclotomic& constant);
    static LaurentPoly monomial(std::size_t nvars, Exponent e, const Cyclotomic& c = Cyclotomic(1));
    static LaurentPoly variable(std::size_t nvars, std::size_t k);

    std::size_t variable_count() const { return nvars_; }
    const std::map<Exponent, Cyclotomic>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    /// Nonzero constant times a monomial.
    bool is_unit() const { return terms_.size() == 1; }
    unsigned long conductor() const;

    void add_term(const Exponent& e, const Cyclotomic& c);

    LaurentPoly operator-() const;
    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }
    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

    LaurentPoly scaled(const Cyclotomic& c, const Exponent& shift) const;
    /// Quotient a / b when b divides a exactly in the Laurent ring.
    std::optional<LaurentPoly> divide_exact(const LaurentPoly& b) const;

    Cyclotomic evaluate(std::span<const Cyclotomic> point) const;
    /// Image under the mod-p embedding with variables set to `point` (nonzero
    /// residues); nullopt on a bad coefficient denominator.
    std::optional<std::uint64_t> evaluate_modp(const ModpEmbedding& f,
                                               std::span<const std::uint64_t> point) const;

    /// Shift by a monomial so the lex-least term has exponent 0.
    LaurentPoly monomial_normalised() const;
    /// Variables that occur with nonzero exponent in some term.
    std::vector<std::size_t> support_variables() const;

    std::string to_string(std::span<const std::string> names = {}) const;

private:
    std::size_t nvars_ = 0;
    std::map<Exponent, Cyclotomic> terms_;
};

/// Dense univariate polynomial over a cyclotomic field, constant term first.
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<Cyclotomic> coeffs);
    static UniPoly x_minus(const Cyclotomic& root);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<Cyclotomic>& coefficients() const { return coeffs_; }
    const Cyclotomic& leading() const { return coeffs_.back(); }

    UniPoly operator+(const UniPoly& o) const;
    UniPoly operator-(const UniPoly& o) const;
    UniPoly operator*(const UniPoly& o) const;
    UniPoly scaled(const Cyclotomic& c) const;
    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.coeffs_ == b.coeffs_; }

    /// (quotient, remainder)
    std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const;
    UniPoly monic() const;
    static UniPoly gcd(UniPoly a, UniPoly b);

    Cyclotomic evaluate(const Cyclotomic& x) const;
    UniPoly derivative() const;

private:
    void trim();
    std::vector<Cyclotomic> coeffs_;
};

/// Univariate Laurent polynomial in variable `var` as a dense polynomial
/// (shifted by the minimal exponent). Requires every other exponent zero.
UniPoly to_unipoly(const LaurentPoly& p, std::size_t var);

}  // namespace jumploci
