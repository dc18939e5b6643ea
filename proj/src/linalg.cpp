#include <algorithm>
#include <random>
#include <stdexcept>

#include "jumploci/error.hpp"
#include "jumploci/exact_scalars.hpp"

namespace jumploci {

namespace {

bool is_zero(const Cyclotomic& x) { return x.is_zero(); }
bool is_zero(const LaurentPoly& x) { return x.is_zero(); }
bool is_zero(const Rational& x) { return sgn(x) == 0; }

Cyclotomic exact_div(const Cyclotomic& a, const Cyclotomic& b) { return a / b; }
Rational exact_div(const Rational& a, const Rational& b) { return a / b; }
LaurentPoly exact_div(const LaurentPoly& a, const LaurentPoly& b) {
    auto q = a.divide_exact(b);
    if (!q) throw std::logic_error("Bareiss step produced an inexact division");
    return *q;
}

// Fraction-free elimination. After k pivots every remaining entry equals a
// (k+1)-minor of the input, so each division by the previous pivot is exact.
// Pivot: first nonzero entry in the current column, scanning rows in order.
template <class T>
std::size_t bareiss_rank(Matrix<T> a, std::size_t stop_at, T* det_out = nullptr) {
    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();
    std::size_t rank = 0;
    bool negate = false;
    std::optional<T> prev;
    for (std::size_t c = 0; c < cols && rank < rows && rank < stop_at; ++c) {
        std::size_t piv = rank;
        while (piv < rows && is_zero(a(piv, c))) ++piv;
        if (piv == rows) {
            if (det_out) {
                *det_out = T();
                return rank;
            }
            continue;
        }
        if (piv != rank) {
            a.swap_rows(piv, rank);
            negate = !negate;
        }
        const T pivot = a(rank, c);
        for (std::size_t i = rank + 1; i < rows; ++i) {
            const T factor = a(i, c);
            for (std::size_t j = c + 1; j < cols; ++j) {
                T v = pivot * a(i, j);
                if (!is_zero(factor) && !is_zero(a(rank, j))) v = v - factor * a(rank, j);
                a(i, j) = prev ? exact_div(v, *prev) : v;
            }
            a(i, c) = T();
        }
        prev = pivot;
        ++rank;
    }
    if (det_out) {
        if (rows == 0) *det_out = T(1);
        else if (rank == rows) *det_out = negate ? T() - *prev : *prev;
        else *det_out = T();
    }
    return rank;
}

std::uint64_t splitmix(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

std::size_t rank_modp(Matrix<std::uint64_t> m, std::uint64_t p) {
    const std::size_t rows = m.rows(), cols = m.cols();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && m(piv, c) == 0) ++piv;
        if (piv == rows) continue;
        m.swap_rows(piv, rank);
        std::uint64_t inv = 1, base = m(rank, c), e = p - 2;
        while (e) {
            if (e & 1) inv = inv * base % p;
            base = base * base % p;
            e >>= 1;
        }
        for (std::size_t i = rank + 1; i < rows; ++i) {
            if (m(i, c) == 0) continue;
            const std::uint64_t f = m(i, c) * inv % p;
            for (std::size_t j = c; j < cols; ++j) {
                m(i, j) = (m(i, j) + p - f * m(rank, j) % p) % p;
            }
        }
        ++rank;
    }
    return rank;
}

std::optional<std::size_t> rank_lower_bound_modp(const Matrix<Cyclotomic>& m) {
    unsigned long n = 1;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) n = lcm_u(n, m(i, j).conductor());
    const auto& f = ModpEmbedding::for_conductor(n);
    Matrix<std::uint64_t> r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            auto v = f.reduce(m(i, j));
            if (!v) return std::nullopt;
            r(i, j) = *v;
        }
    }
    return rank_modp(std::move(r), f.prime());
}

std::size_t rank_exact(const Matrix<Cyclotomic>& m, std::optional<std::size_t> upper_bound) {
    if (m.empty()) return 0;
    const std::size_t full = std::min(m.rows(), m.cols());
    const std::size_t cap = upper_bound ? std::min(*upper_bound, full) : full;
    if (auto lb = rank_lower_bound_modp(m); lb && *lb >= cap) return *lb;
    unsigned long n = 1;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) n = lcm_u(n, m(i, j).conductor());
    return bareiss_rank(m.map([n](const Cyclotomic& x) { return x.lifted(n); }), full);
}

std::size_t generic_rank_lower_bound(const Matrix<LaurentPoly>& m, std::uint64_t seed) {
    if (m.empty()) return 0;
    unsigned long n = 1;
    std::size_t nvars = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            n = lcm_u(n, m(i, j).conductor());
            nvars = std::max(nvars, m(i, j).variable_count());
        }
    }
    const auto& f = ModpEmbedding::for_conductor(n);
    std::uint64_t state = seed;
    std::vector<std::uint64_t> point(nvars);
    for (auto& v : point) v = 2 + splitmix(state) % (f.prime() - 3);
    Matrix<std::uint64_t> r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            auto v = m(i, j).evaluate_modp(f, point);
            if (!v) return 0;
            r(i, j) = *v;
        }
    }
    return rank_modp(std::move(r), f.prime());
}

std::size_t rank_generic(const Matrix<LaurentPoly>& m, std::optional<std::size_t> upper_bound) {
    if (m.empty()) return 0;
    const std::size_t full = std::min(m.rows(), m.cols());
    const std::size_t cap = upper_bound ? std::min(*upper_bound, full) : full;
    if (generic_rank_lower_bound(m) >= cap) return cap;
    return bareiss_rank(m, full);
}

Cyclotomic determinant(const Matrix<Cyclotomic>& m) {
    if (m.rows() != m.cols()) throw DomainError("determinant of a non-square matrix");
    Cyclotomic det(1);
    bareiss_rank(m, m.rows(), &det);
    return det;
}

LaurentPoly determinant(const Matrix<LaurentPoly>& m) {
    if (m.rows() != m.cols()) throw DomainError("determinant of a non-square matrix");
    std::size_t nvars = 0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) nvars = std::max(nvars, m(i, j).variable_count());
    LaurentPoly det(nvars, Cyclotomic(1));
    if (m.rows() == 0) return det;
    bareiss_rank(m, m.rows(), &det);
    if (det.variable_count() == 0 && det.is_zero()) det = LaurentPoly(nvars);
    return det;
}

std::size_t rank_rational(const Matrix<Rational>& m) {
    if (m.empty()) return 0;
    return bareiss_rank(m, std::min(m.rows(), m.cols()));
}

std::vector<Rational> solve_rational(Matrix<Rational> a, std::vector<Rational> b) {
    const std::size_t n = a.rows();
    if (a.cols() != n || b.size() != n) throw DomainError("solve_rational: shape mismatch");
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && sgn(a(piv, c)) == 0) ++piv;
        if (piv == n) throw DomainError("singular linear system");
        a.swap_rows(piv, c);
        std::swap(b[piv], b[c]);
        const Rational inv = 1 / a(c, c);
        for (std::size_t j = c; j < n; ++j) a(c, j) *= inv;
        b[c] *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || sgn(a(i, c)) == 0) continue;
            const Rational f = a(i, c);
            for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
            b[i] -= f * b[c];
        }
    }
    return b;
}

}  // namespace jumploci
