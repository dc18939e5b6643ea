#include "jumploci/cyclotomic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>

#include "jumploci/error.hpp"

namespace jumploci {

Rational parse_rational(const std::string& text, const std::string& where) {
    const auto bad = [&] { return ParseError("not a rational number: '" + text + "'", where); };
    const auto slash = text.find('/');
    const auto digits = [](const std::string& t, bool sign) {
        std::size_t i = sign && !t.empty() && (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    if (!digits(text.substr(0, slash), true)) throw bad();
    if (slash != std::string::npos && !digits(text.substr(slash + 1), false)) throw bad();
    Rational r(text[0] == '+' ? text.substr(1) : text);
    if (r.get_den() == 0) throw ParseError("zero denominator in '" + text + "'", where);
    r.canonicalize();
    return r;
}

unsigned long gcd_u(unsigned long a, unsigned long b) {
    while (b) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

unsigned long lcm_u(unsigned long a, unsigned long b) {
    if (a == 0 || b == 0) return 0;
    return a / gcd_u(a, b) * b;
}

std::vector<unsigned long> prime_factors(unsigned long n) {
    std::vector<unsigned long> out;
    for (unsigned long d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

unsigned long euler_phi(unsigned long n) {
    unsigned long result = n;
    for (auto p : prime_factors(n)) result = result / p * (p - 1);
    return result;
}

std::vector<unsigned long> divisors(unsigned long n) {
    std::vector<unsigned long> out;
    for (unsigned long d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            if (d * d != n) out.push_back(n / d);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

std::mutex& cache_mutex() {
    static std::mutex m;
    return m;
}

// Exact division of integer polynomials (constant term first), divisor monic.
std::vector<long> divide_monic(std::vector<long> num, const std::vector<long>& den) {
    const std::size_t dn = den.size() - 1;
    std::vector<long> q(num.size() - dn, 0);
    for (std::size_t i = num.size(); i-- > dn;) {
        long c = num[i];
        q[i - dn] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
    }
    return q;
}

std::vector<long> compute_cyclotomic(unsigned long n) {
    std::vector<long> poly(n + 1, 0);
    poly[0] = -1;
    poly[n] = 1;
    for (auto d : divisors(n)) {
        if (d == n) continue;
        poly = divide_monic(poly, cyclotomic_polynomial(d));
    }
    return poly;
}

unsigned long normalise_conductor(unsigned long n) {
    if (n % 4 == 2) return n / 2;
    return n;
}

long mod_pos(long a, long n) {
    long r = a % n;
    return r < 0 ? r + n : r;
}

}  // namespace

const std::vector<long>& cyclotomic_polynomial(unsigned long n) {
    static std::map<unsigned long, std::unique_ptr<std::vector<long>>> cache;
    {
        std::lock_guard<std::mutex> lock(cache_mutex());
        auto it = cache.find(n);
        if (it != cache.end()) return *it->second;
    }
    auto poly = std::make_unique<std::vector<long>>(compute_cyclotomic(n));
    std::lock_guard<std::mutex> lock(cache_mutex());
    auto [it, inserted] = cache.try_emplace(n, std::move(poly));
    return *it->second;
}

std::vector<Rational> Cyclotomic::reduce(unsigned long n, std::vector<Rational> poly) {
    // fold exponents modulo n, then divide by Phi_n
    if (poly.size() > n) {
        for (std::size_t i = n; i < poly.size(); ++i) poly[i % n] += poly[i];
        poly.resize(n);
    }
    const auto& phi = cyclotomic_polynomial(n);
    const std::size_t deg = phi.size() - 1;
    for (std::size_t i = poly.size(); i-- > deg;) {
        if (sgn(poly[i]) == 0) continue;
        Rational c = poly[i];
        for (std::size_t j = 0; j < deg; ++j) {
            if (phi[j] != 0) poly[i - deg + j] -= c * phi[j];
        }
        poly[i] = 0;
    }
    poly.resize(deg);
    return poly;
}

Cyclotomic Cyclotomic::zeta(unsigned long n, long k) {
    if (n == 0) throw DomainError("cyclotomic conductor must be positive");
    k = mod_pos(k, static_cast<long>(n));
    const unsigned long m = normalise_conductor(n);
    if (m != n) {
        // zeta_{2m} = -zeta_m^((m+1)/2) for odd m
        Cyclotomic base = -zeta(m, static_cast<long>((m + 1) / 2));
        return base.pow(k);
    }
    std::vector<Rational> poly(static_cast<std::size_t>(k) + 1);
    poly[static_cast<std::size_t>(k)] = 1;
    return Cyclotomic(n, reduce(n, std::move(poly)));
}

Cyclotomic Cyclotomic::root_of_unity(const Rational& angle) {
    Rational a = angle;
    a.canonicalize();
    const unsigned long den = a.get_den().get_ui();
    Integer num = a.get_num();
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), num.get_mpz_t(), den);
    return zeta(den, static_cast<long>(r.get_si()));
}

Cyclotomic Cyclotomic::from_terms(unsigned long n,
                                  const std::vector<std::pair<long, Rational>>& terms) {
    const unsigned long m = normalise_conductor(n);
    if (m != n) {
        Cyclotomic out;
        for (const auto& [k, c] : terms) out += Cyclotomic(c) * zeta(n, k);
        return out;
    }
    std::vector<Rational> poly(n);
    for (const auto& [k, c] : terms) {
        Rational v = c;
        v.canonicalize();
        poly[static_cast<std::size_t>(mod_pos(k, static_cast<long>(n)))] += v;
    }
    return Cyclotomic(n, reduce(n, std::move(poly)));
}

Cyclotomic Cyclotomic::lifted(unsigned long target) const {
    if (target == conductor_) return *this;
    if (target % conductor_ != 0)
        throw DomainError("lift target is not a multiple of the conductor");
    const unsigned long step = target / conductor_;
    std::vector<Rational> poly(target);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        if (sgn(coeffs_[k]) != 0) poly[(k * step) % target] += coeffs_[k];
    }
    return Cyclotomic(target, reduce(target, std::move(poly)));
}

bool Cyclotomic::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const Rational& c) { return sgn(c) == 0; });
}

bool Cyclotomic::is_rational() const {
    for (std::size_t k = 1; k < coeffs_.size(); ++k)
        if (sgn(coeffs_[k]) != 0) return false;
    // Phi_n has degree >= 1, so a constant polynomial is its own reduction.
    return true;
}

Rational Cyclotomic::rational_value() const {
    if (!is_rational()) throw DomainError("cyclotomic number is not rational");
    return coeffs_[0];
}

bool Cyclotomic::is_one() const { return is_rational() && coeffs_[0] == 1; }

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic out = *this;
    for (auto& c : out.coeffs_) c = -c;
    return out;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
    if (o.conductor_ == conductor_) {
        for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
        return *this;
    }
    const unsigned long n = lcm_u(conductor_, o.conductor_);
    *this = lifted(n);
    const Cyclotomic other = o.lifted(n);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
    return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) { return *this += -o; }

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
    if (o.conductor_ == 1) {
        for (auto& c : coeffs_) c *= o.coeffs_[0];
        return *this;
    }
    if (conductor_ == 1) {
        Rational s = coeffs_[0];
        *this = o;
        for (auto& c : coeffs_) c *= s;
        return *this;
    }
    const unsigned long n = lcm_u(conductor_, o.conductor_);
    const Cyclotomic a = lifted(n);
    const Cyclotomic b = o.lifted(n);
    std::vector<Rational> poly(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (sgn(a.coeffs_[i]) == 0) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
            if (sgn(b.coeffs_[j]) == 0) continue;
            poly[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    *this = Cyclotomic(n, reduce(n, std::move(poly)));
    return *this;
}

Cyclotomic& Cyclotomic::operator/=(const Cyclotomic& o) { return *this *= o.inverse(); }

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.conductor_ == b.conductor_) return a.coeffs_ == b.coeffs_;
    const unsigned long n = lcm_u(a.conductor_, b.conductor_);
    return a.lifted(n).coeffs_ == b.lifted(n).coeffs_;
}

Cyclotomic Cyclotomic::inverse() const {
    if (is_zero()) throw DomainError("division by zero in cyclotomic field");
    const std::size_t d = coeffs_.size();
    if (is_rational()) return Cyclotomic(conductor_, [&] {
        std::vector<Rational> v(d);
        v[0] = 1 / coeffs_[0];
        return v;
    }());
    // Solve (x * y) = 1 using the multiplication-by-x matrix.
    std::vector<std::vector<Rational>> a(d, std::vector<Rational>(d + 1));
    for (std::size_t k = 0; k < d; ++k) {
        std::vector<Rational> e(d);
        e[k] = 1;
        Cyclotomic col = *this * Cyclotomic(conductor_, std::move(e));
        for (std::size_t i = 0; i < d; ++i) a[i][k] = col.coeffs_[i];
    }
    a[0][d] = 1;
    for (std::size_t c = 0; c < d; ++c) {
        std::size_t piv = c;
        while (piv < d && sgn(a[piv][c]) == 0) ++piv;
        std::swap(a[c], a[piv]);
        Rational inv = 1 / a[c][c];
        for (std::size_t j = c; j <= d; ++j) a[c][j] *= inv;
        for (std::size_t i = 0; i < d; ++i) {
            if (i == c || sgn(a[i][c]) == 0) continue;
            Rational f = a[i][c];
            for (std::size_t j = c; j <= d; ++j) a[i][j] -= f * a[c][j];
        }
    }
    std::vector<Rational> y(d);
    for (std::size_t i = 0; i < d; ++i) y[i] = a[i][d];
    return Cyclotomic(conductor_, std::move(y));
}

Cyclotomic Cyclotomic::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Cyclotomic result(1);
    Cyclotomic base = *this;
    while (e > 0) {
        if (e & 1) result *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return result;
}

Cyclotomic Cyclotomic::galois(long a) const {
    const long n = static_cast<long>(conductor_);
    if (n > 1 && gcd_u(static_cast<unsigned long>(mod_pos(a, n)), conductor_) != 1)
        throw DomainError("galois exponent not coprime to conductor");
    std::vector<Rational> poly(conductor_);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        if (sgn(coeffs_[k]) != 0)
            poly[static_cast<std::size_t>(mod_pos(a * static_cast<long>(k), n))] += coeffs_[k];
    }
    return Cyclotomic(conductor_, reduce(conductor_, std::move(poly)));
}

std::complex<double> Cyclotomic::embed(long j) const {
    std::complex<double> z(0.0, 0.0);
    const double n = static_cast<double>(conductor_);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        if (sgn(coeffs_[k]) == 0) continue;
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) *
                             static_cast<double>(k) / n;
        z += coeffs_[k].get_d() * std::polar(1.0, angle);
    }
    return z;
}

Cyclotomic Cyclotomic::canonical() const {
    if (conductor_ == 1) return *this;
    const long n = static_cast<long>(conductor_);
    for (auto d : divisors(conductor_)) {
        if (d == conductor_) break;
        if (d % 4 == 2) continue;
        bool fixed = true;
        for (long a = 1; a < n && fixed; ++a) {
            if (gcd_u(static_cast<unsigned long>(a), conductor_) != 1) continue;
            if (a % static_cast<long>(d) != 1 % static_cast<long>(d)) continue;
            fixed = galois(a) == *this;
        }
        if (!fixed) continue;
        // solve for coordinates in the power basis of Q(zeta_d)
        const std::size_t pd = euler_phi(d);
        const std::size_t pn = coeffs_.size();
        std::vector<std::vector<Rational>> a(pn, std::vector<Rational>(pd + 1));
        for (std::size_t k = 0; k < pd; ++k) {
            Cyclotomic col = zeta(d, static_cast<long>(k)).lifted(conductor_);
            for (std::size_t i = 0; i < pn; ++i) a[i][k] = col.coeffs_[i];
        }
        for (std::size_t i = 0; i < pn; ++i) a[i][pd] = coeffs_[i];
        std::size_t row = 0;
        std::vector<std::size_t> pivot_row(pd);
        for (std::size_t c = 0; c < pd; ++c) {
            std::size_t piv = row;
            while (piv < pn && sgn(a[piv][c]) == 0) ++piv;
            if (piv == pn) continue;
            std::swap(a[row], a[piv]);
            Rational inv = 1 / a[row][c];
            for (std::size_t j = c; j <= pd; ++j) a[row][j] *= inv;
            for (std::size_t i = 0; i < pn; ++i) {
                if (i == row || sgn(a[i][c]) == 0) continue;
                Rational f = a[i][c];
                for (std::size_t j = c; j <= pd; ++j) a[i][j] -= f * a[row][j];
            }
            pivot_row[c] = row++;
        }
        std::vector<Rational> y(pd);
        for (std::size_t c = 0; c < pd; ++c) y[c] = a[pivot_row[c]][pd];
        return Cyclotomic(d, std::move(y));
    }
    return *this;
}

std::string Cyclotomic::to_string() const {
    const Cyclotomic c = canonical();
    std::ostringstream os;
    os << c.conductor_ << ":[";
    for (std::size_t k = 0; k < c.coeffs_.size(); ++k) {
        if (k) os << ',';
        os << c.coeffs_[k].get_str();
    }
    os << ']';
    return os.str();
}

RootOfUnityTest is_root_of_unity(const Cyclotomic& x) {
    if (x.is_zero()) throw DomainError("is_root_of_unity: zero has no multiplicative order");
    const unsigned long bound = lcm_u(2, x.conductor());
    if (!x.pow(static_cast<long>(bound)).is_one()) return {false, std::nullopt};
    unsigned long order = bound;
    for (auto p : prime_factors(bound)) {
        while (order % p == 0 && x.pow(static_cast<long>(order / p)).is_one()) order /= p;
    }
    return {true, order};
}

// ---------------------------------------------------------------------------

namespace {

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace

std::uint64_t ModpEmbedding::pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1 % p_;
    a %= p_;
    while (e) {
        if (e & 1) r = r * a % p_;
        a = a * a % p_;
        e >>= 1;
    }
    return r;
}

ModpEmbedding::ModpEmbedding(unsigned long n) : n_(n), p_(0), omega_(1) {
    const std::uint64_t start = (std::uint64_t{1} << 30) / n + 1;
    for (std::uint64_t k = start;; ++k) {
        const std::uint64_t cand = k * n + 1;
        if (cand >= (std::uint64_t{1} << 31)) throw Error("no suitable prime for conductor");
        if (is_prime_u64(cand)) {
            p_ = cand;
            break;
        }
    }
    const auto qs = prime_factors(n);
    for (std::uint64_t x = 2;; ++x) {
        const std::uint64_t w = pow(x, (p_ - 1) / n);
        bool primitive = true;
        for (auto q : qs) {
            if (pow(w, n / q) == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) {
            omega_ = w;
            break;
        }
    }
}

const ModpEmbedding& ModpEmbedding::for_conductor(unsigned long n) {
    static std::map<unsigned long, std::unique_ptr<ModpEmbedding>> cache;
    static std::mutex m;
    std::lock_guard<std::mutex> lock(m);
    auto it = cache.find(n);
    if (it == cache.end())
        it = cache.emplace(n, std::unique_ptr<ModpEmbedding>(new ModpEmbedding(n))).first;
    return *it->second;
}

std::uint64_t ModpEmbedding::zeta_power(long k) const {
    const long n = static_cast<long>(n_);
    return pow(omega_, static_cast<std::uint64_t>(mod_pos(k, n)));
}

std::optional<std::uint64_t> ModpEmbedding::reduce(const Rational& q) const {
    const std::uint64_t den = mpz_fdiv_ui(q.get_den_mpz_t(), p_);
    if (den == 0) return std::nullopt;
    const std::uint64_t num = mpz_fdiv_ui(q.get_num_mpz_t(), p_);
    return mul(num, inv(den));
}

std::optional<std::uint64_t> ModpEmbedding::reduce(const Cyclotomic& x) const {
    if (n_ % x.conductor() != 0) throw DomainError("conductor does not divide embedding conductor");
    const long step = static_cast<long>(n_ / x.conductor());
    std::uint64_t acc = 0;
    const auto& c = x.coefficients();
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (sgn(c[k]) == 0) continue;
        auto v = reduce(c[k]);
        if (!v) return std::nullopt;
        acc = add(acc, mul(*v, zeta_power(static_cast<long>(k) * step)));
    }
    return acc;
}

}  // namespace jumploci
