#include "jumploci/character_torus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "jumploci/error.hpp"

namespace jumploci {

namespace {

Rational rpow(const Rational& q, long e) {
    Integer num = q.get_num(), den = q.get_den();
    const unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
    Integer n2, d2;
    mpz_pow_ui(n2.get_mpz_t(), num.get_mpz_t(), k);
    mpz_pow_ui(d2.get_mpz_t(), den.get_mpz_t(), k);
    Rational out = e < 0 ? Rational(d2, n2) : Rational(n2, d2);
    out.canonicalize();
    return out;
}

// Exact q-th root of a nonnegative integer, if any.
std::optional<Integer> exact_root(const Integer& x, unsigned long q) {
    Integer r;
    if (mpz_root(r.get_mpz_t(), x.get_mpz_t(), q) == 0) return std::nullopt;
    return r;
}

Rational dot_frac(const IntMatrix& u, std::size_t row, const std::vector<Rational>& v) {
    Rational s = 0;
    for (std::size_t j = 0; j < u.cols(); ++j)
        if (u(row, j) != 0) s += Rational(u(row, j)) * v[j];
    return frac(s);
}

Rational product_power(const IntMatrix& u, std::size_t row, const std::vector<Rational>& moduli) {
    Rational p = 1;
    for (std::size_t j = 0; j < u.cols(); ++j)
        if (u(row, j) != 0) p *= rpow(moduli[j], u(row, j).get_si());
    return p;
}

double frac_d(double x) { return x - std::floor(x); }

Character as_numeric(const Character& c) {
    if (!c.exact) return c;
    Character n;
    n.exact = false;
    n.torsion = c.torsion;
    for (std::size_t k = 0; k < c.angles.size(); ++k) {
        n.numeric_moduli.push_back(c.moduli[k].get_d());
        n.numeric_angles.push_back(c.angles[k].get_d());
    }
    return n;
}

std::string rational_text(const Rational& q) { return q.get_str(); }

}  // namespace

Rational frac(const Rational& q) {
    Integer fl;
    mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    Rational r = q - Rational(fl);
    r.canonicalize();
    return r;
}

// ---------------------------------------------------------------------------
// Characters

Character Character::trivial(std::size_t free_rank, std::size_t torsion_count) {
    Character c;
    c.moduli.assign(free_rank, Rational(1));
    c.angles.assign(free_rank, Rational(0));
    c.torsion.assign(torsion_count, Rational(0));
    return c;
}

Character Character::unitary(std::vector<Rational> angles, std::vector<Rational> torsion) {
    std::vector<Rational> ones(angles.size(), Rational(1));
    return with_moduli(std::move(ones), std::move(angles), std::move(torsion));
}

Character Character::with_moduli(std::vector<Rational> moduli, std::vector<Rational> angles,
                                 std::vector<Rational> torsion) {
    if (moduli.size() != angles.size()) throw DomainError("moduli and angles differ in length");
    Character c;
    for (auto& m : moduli) {
        m.canonicalize();
        if (sgn(m) <= 0) throw DomainError("character moduli must be positive");
    }
    c.moduli = std::move(moduli);
    for (auto& a : angles) a = frac(a);
    for (auto& t : torsion) t = frac(t);
    c.angles = std::move(angles);
    c.torsion = std::move(torsion);
    return c;
}

bool Character::is_unitary() const {
    if (!exact)
        return std::all_of(numeric_moduli.begin(), numeric_moduli.end(),
                           [](double r) { return std::abs(r - 1.0) < 1e-12; });
    return std::all_of(moduli.begin(), moduli.end(), [](const Rational& r) { return r == 1; });
}

bool Character::is_trivial() const {
    auto zero = [](const Rational& q) { return sgn(q) == 0; };
    if (!std::all_of(torsion.begin(), torsion.end(), zero)) return false;
    if (!exact)
        return is_unitary() && std::all_of(numeric_angles.begin(), numeric_angles.end(),
                                           [](double a) { return std::min(a, 1.0 - a) < 1e-12; });
    return is_unitary() && std::all_of(angles.begin(), angles.end(), zero);
}

std::optional<unsigned long> Character::order() const {
    if (!exact || !is_unitary()) return std::nullopt;
    unsigned long n = 1;
    for (const auto& a : angles) n = lcm_u(n, a.get_den().get_ui());
    for (const auto& t : torsion) n = lcm_u(n, t.get_den().get_ui());
    return n;
}

Cyclotomic Character::evaluate(const H1Element& h) const {
    if (!exact) throw DomainError("exact evaluation of a numeric character");
    Rational modulus = 1, angle = 0;
    for (std::size_t k = 0; k < h.free.size(); ++k) {
        if (h.free[k] == 0) continue;
        modulus *= rpow(moduli[k], h.free[k]);
        angle += angles[k] * h.free[k];
    }
    for (std::size_t i = 0; i < h.torsion.size(); ++i) angle += torsion[i] * h.torsion[i];
    return Cyclotomic(modulus) * Cyclotomic::root_of_unity(frac(angle));
}

std::complex<double> Character::evaluate_numeric(const H1Element& h) const {
    const Character n = as_numeric(*this);
    double log_mod = 0, angle = 0;
    for (std::size_t k = 0; k < h.free.size(); ++k) {
        log_mod += std::log(n.numeric_moduli[k]) * static_cast<double>(h.free[k]);
        angle += n.numeric_angles[k] * static_cast<double>(h.free[k]);
    }
    for (std::size_t i = 0; i < h.torsion.size(); ++i)
        angle += Rational(torsion[i] * h.torsion[i]).get_d();
    return std::polar(std::exp(log_mod), 2.0 * std::numbers::pi * frac_d(angle));
}

std::vector<Cyclotomic> Character::generator_values(const AbelianizationData& a) const {
    std::vector<Cyclotomic> out;
    const std::size_t g = a.generator_coords.rows();
    for (std::size_t j = 0; j < g; ++j) out.push_back(evaluate(a.generator(j)));
    return out;
}

std::vector<std::complex<double>> Character::generator_values_numeric(const AbelianizationData& a) const {
    std::vector<std::complex<double>> out;
    const std::size_t g = a.generator_coords.rows();
    for (std::size_t j = 0; j < g; ++j) out.push_back(evaluate_numeric(a.generator(j)));
    return out;
}

Character Character::operator*(const Character& o) const {
    if (torsion.size() != o.torsion.size() || free_rank() != o.free_rank())
        throw DomainError("characters of different groups");
    if (exact && o.exact) {
        Character c = *this;
        for (std::size_t k = 0; k < angles.size(); ++k) {
            c.moduli[k] *= o.moduli[k];
            c.angles[k] = frac(c.angles[k] + o.angles[k]);
        }
        for (std::size_t i = 0; i < torsion.size(); ++i) c.torsion[i] = frac(c.torsion[i] + o.torsion[i]);
        return c;
    }
    Character a = as_numeric(*this), b = as_numeric(o);
    for (std::size_t k = 0; k < a.numeric_angles.size(); ++k) {
        a.numeric_moduli[k] *= b.numeric_moduli[k];
        a.numeric_angles[k] = frac_d(a.numeric_angles[k] + b.numeric_angles[k]);
    }
    for (std::size_t i = 0; i < a.torsion.size(); ++i) a.torsion[i] = frac(a.torsion[i] + b.torsion[i]);
    return a;
}

Character Character::inverse() const {
    Character c = *this;
    for (auto& m : c.moduli) m = 1 / m;
    for (auto& a : c.angles) a = frac(-a);
    for (auto& t : c.torsion) t = frac(-t);
    for (auto& m : c.numeric_moduli) m = 1.0 / m;
    for (auto& a : c.numeric_angles) a = frac_d(-a);
    return c;
}

Character Character::conj() const {
    Character c = *this;
    for (auto& a : c.angles) a = frac(-a);
    for (auto& t : c.torsion) t = frac(-t);
    for (auto& a : c.numeric_angles) a = frac_d(-a);
    return c;
}

Character Character::power(long k) const {
    Character c = *this;
    for (auto& m : c.moduli) m = rpow(m, k);
    for (auto& a : c.angles) a = frac(a * k);
    for (auto& t : c.torsion) t = frac(t * k);
    for (auto& m : c.numeric_moduli) m = std::pow(m, static_cast<double>(k));
    for (auto& a : c.numeric_angles) a = frac_d(a * static_cast<double>(k));
    return c;
}

nlohmann::json Character::to_json() const {
    nlohmann::json j;
    nlohmann::json tors = nlohmann::json::array();
    for (const auto& t : torsion) tors.push_back(rational_text(t));
    j["torsion"] = tors;
    if (exact) {
        nlohmann::json m = nlohmann::json::array(), a = nlohmann::json::array();
        for (const auto& x : moduli) m.push_back(rational_text(x));
        for (const auto& x : angles) a.push_back(rational_text(x));
        j["moduli"] = m;
        j["angles"] = a;
    } else {
        j["moduli"] = numeric_moduli;
        j["angles"] = numeric_angles;
        j["numeric"] = true;
    }
    return j;
}

// ---------------------------------------------------------------------------
// Torsion enumeration

long torsion_point_order(const TorsionPoint& p) {
    long g = p.den;
    for (long v : p.num) g = std::gcd(g, v);
    return p.den / g;
}

Character to_character(const TorsionPoint& p, std::size_t free_rank) {
    std::vector<Rational> angles, torsion;
    for (std::size_t c = 0; c < p.num.size(); ++c) {
        Rational q(p.num[c], p.den);
        q.canonicalize();
        (c < free_rank ? angles : torsion).push_back(q);
    }
    return Character::unitary(std::move(angles), std::move(torsion));
}

Integer count_killed_by(const AbelianizationData& a, long k) {
    Integer n;
    mpz_ui_pow_ui(n.get_mpz_t(), static_cast<unsigned long>(k), a.free_rank);
    for (long d : a.torsion) n *= std::gcd(k, d);
    return n;
}

std::vector<TorsionPoint> enumerate_torsion_points(const AbelianizationData& a, long K) {
    if (K < 1) throw DomainError("scan order must be at least 1");
    long L = 1;
    for (long k = 2; k <= K; ++k) L = std::lcm(L, k);
    const std::size_t b = a.free_rank, n = a.coordinate_count();
    std::vector<TorsionPoint> out;
    for (long k = 1; k <= K; ++k) {
        // odometer over numerators: free coordinates in [0, k), torsion
        // coordinate i in [0, gcd(k, d_i)); all scaled to denominator L
        std::vector<long> radix(n);
        for (std::size_t c = 0; c < n; ++c) radix[c] = c < b ? k : std::gcd(k, a.torsion[c - b]);
        std::vector<long> digit(n, 0);
        while (true) {
            TorsionPoint p{L, std::vector<long>(n)};
            for (std::size_t c = 0; c < n; ++c) p.num[c] = digit[c] * (L / radix[c]);
            if (torsion_point_order(p) == k) out.push_back(std::move(p));
            bool done = true;
            for (std::size_t c = n; c-- > 0;) {
                if (++digit[c] < radix[c]) {
                    done = false;
                    break;
                }
                digit[c] = 0;
            }
            if (done) break;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Character> enumerate_torsion_characters(const AbelianizationData& a, long K) {
    std::vector<Character> out;
    for (const auto& p : enumerate_torsion_points(a, K)) out.push_back(to_character(p, a.free_rank));
    return out;
}

// ---------------------------------------------------------------------------
// R+ action

ActionResult rplus_act(const Rational& t_in, const Character& chi, ActionVariant variant) {
    Rational t = t_in;
    t.canonicalize();
    if (sgn(t) <= 0) throw DomainError("R+ action needs a positive parameter");
    if (variant == ActionVariant::A) {
        Character c = chi;
        for (auto& a : c.angles) a = frac(a * t);
        for (auto& a : c.numeric_angles) a = frac_d(a * t.get_d());
        return {c, false};
    }
    if (!chi.exact) {
        Character c = chi;
        for (auto& m : c.numeric_moduli) m = std::pow(m, t.get_d());
        return {c, false};
    }
    const unsigned long q = t.get_den().get_ui();
    const long p = t.get_num().get_si();
    Character c = chi;
    for (auto& m : c.moduli) {
        auto num = exact_root(m.get_num(), q), den = exact_root(m.get_den(), q);
        if (!num || !den) {
            Character n = as_numeric(chi);
            for (auto& x : n.numeric_moduli) x = std::pow(x, t.get_d());
            return {n, true};
        }
        Rational root(*num, *den);
        root.canonicalize();
        m = rpow(root, p);
    }
    return {c, false};
}

// ---------------------------------------------------------------------------
// Translated subtori

Character canonical_translate(const IntMatrix& u, const Character& tau) {
    if (!tau.exact) return tau;
    Character c = tau;
    bool unitary = true;
    for (std::size_t i = 0; i < u.rows() && unitary; ++i) unitary = product_power(u, i, tau.moduli) == 1;
    if (unitary) std::fill(c.moduli.begin(), c.moduli.end(), Rational(1));
    // pivot columns of the row HNF; P is upper triangular with positive diagonal
    std::vector<std::size_t> pivots;
    for (std::size_t i = 0; i < u.rows(); ++i) {
        std::size_t j = 0;
        while (u(i, j) == 0) ++j;
        pivots.push_back(j);
    }
    std::vector<Rational> w(u.rows());
    for (std::size_t i = 0; i < u.rows(); ++i) w[i] = dot_frac(u, i, tau.angles);
    std::vector<Rational> x(u.rows());
    for (std::size_t i = u.rows(); i-- > 0;) {
        Rational s = w[i];
        for (std::size_t l = i + 1; l < u.rows(); ++l) s -= Rational(u(i, pivots[l])) * x[l];
        x[i] = s / Rational(u(i, pivots[i]));
    }
    std::fill(c.angles.begin(), c.angles.end(), Rational(0));
    for (std::size_t i = 0; i < u.rows(); ++i) c.angles[pivots[i]] = frac(x[i]);
    return c;
}

TranslatedSubtorus TranslatedSubtorus::make(std::size_t free_rank, const IntMatrix& relations,
                                            Character translate) {
    if (translate.free_rank() != free_rank) throw DomainError("translate lives on a different torus");
    TranslatedSubtorus t;
    t.free_rank = free_rank;
    IntMatrix rel = relations;
    if (rel.rows() == 0) rel = IntMatrix(0, free_rank);
    if (rel.cols() != free_rank) throw DomainError("relation width differs from the torus rank");
    t.annihilator = saturate_rows(rel);
    t.basis = integer_kernel(t.annihilator).transposed();
    if (t.basis.cols() == 0) t.basis = IntMatrix(free_rank, 0);
    t.translate = canonical_translate(t.annihilator, translate);
    return t;
}

TranslatedSubtorus TranslatedSubtorus::full(std::size_t free_rank, Character translate) {
    return make(free_rank, IntMatrix(0, free_rank), std::move(translate));
}

TranslatedSubtorus TranslatedSubtorus::point(Character c) {
    const std::size_t b = c.free_rank();
    return make(b, identity_matrix(b), std::move(c));
}

bool TranslatedSubtorus::contains(const Character& chi) const {
    if (chi.free_rank() != free_rank || chi.torsion.size() != translate.torsion.size())
        throw DomainError("character lives on a different torus");
    if (chi.torsion != translate.torsion) return false;
    if (chi.exact && translate.exact) {
        for (std::size_t i = 0; i < annihilator.rows(); ++i) {
            if (product_power(annihilator, i, chi.moduli) != product_power(annihilator, i, translate.moduli))
                return false;
            if (dot_frac(annihilator, i, chi.angles) != dot_frac(annihilator, i, translate.angles)) return false;
        }
        return true;
    }
    const Character a = as_numeric(chi), b = as_numeric(translate);
    for (std::size_t i = 0; i < annihilator.rows(); ++i) {
        double lm = 0, ang = 0;
        for (std::size_t j = 0; j < free_rank; ++j) {
            const double u = annihilator(i, j).get_d();
            lm += u * (std::log(a.numeric_moduli[j]) - std::log(b.numeric_moduli[j]));
            ang += u * (a.numeric_angles[j] - b.numeric_angles[j]);
        }
        const double f = frac_d(ang);
        if (std::abs(lm) > 1e-8 || std::min(f, 1.0 - f) > 1e-8) return false;
    }
    return true;
}

bool TranslatedSubtorus::is_unitary_translate() const {
    if (!translate.exact) return translate.is_unitary();
    for (std::size_t i = 0; i < annihilator.rows(); ++i)
        if (product_power(annihilator, i, translate.moduli) != 1) return false;
    return true;
}

bool TranslatedSubtorus::has_torsion_translate() const { return translate.exact && is_unitary_translate(); }

nlohmann::json TranslatedSubtorus::to_json() const {
    nlohmann::json j;
    j["H"] = to_long_rows(annihilator);
    j["basis"] = to_long_rows(basis);
    j["tau"] = translate.to_json();
    j["dim"] = dimension();
    return j;
}

bool contains(const TranslatedSubtorus& outer, const TranslatedSubtorus& inner) {
    if (outer.free_rank != inner.free_rank) throw DomainError("subtori of different tori");
    for (std::size_t i = 0; i < outer.annihilator.rows(); ++i)
        if (!row_lattice_contains(inner.annihilator, outer.annihilator.row(i))) return false;
    return outer.contains(inner.translate);
}

std::vector<TranslatedSubtorus> intersect(const TranslatedSubtorus& a, const TranslatedSubtorus& b) {
    if (a.free_rank != b.free_rank || a.translate.torsion.size() != b.translate.torsion.size())
        throw DomainError("subtori of different tori");
    if (!a.is_unitary_translate() || !b.is_unitary_translate() || !a.translate.exact || !b.translate.exact)
        throw DomainError("intersection requires exact unitary translates");
    if (a.translate.torsion != b.translate.torsion) return {};
    const std::size_t n = a.free_rank;
    IntMatrix m(0, n);
    std::vector<Rational> c;
    for (std::size_t i = 0; i < a.annihilator.rows(); ++i) {
        m.append_row(a.annihilator.row(i));
        c.push_back(dot_frac(a.annihilator, i, a.translate.angles));
    }
    for (std::size_t i = 0; i < b.annihilator.rows(); ++i) {
        m.append_row(b.annihilator.row(i));
        c.push_back(dot_frac(b.annihilator, i, b.translate.angles));
    }
    if (m.rows() == 0) return {a};
    // L m R = D; solve D y = L c (mod 1) and map back with x = R y
    const SmithForm s = smith_normal_form(m);
    std::vector<Rational> lc(m.rows(), Rational(0));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t k = 0; k < m.rows(); ++k)
            if (s.left(i, k) != 0) lc[i] += Rational(s.left(i, k)) * c[k];
    for (std::size_t i = s.rank; i < m.rows(); ++i)
        if (frac(lc[i]) != 0) return {};
    std::vector<long> radix(s.rank);
    for (std::size_t i = 0; i < s.rank; ++i) radix[i] = s.diag(i, i).get_si();
    std::vector<long> digit(s.rank, 0);
    std::vector<TranslatedSubtorus> out;
    while (true) {
        std::vector<Rational> y(n, Rational(0));
        for (std::size_t i = 0; i < s.rank; ++i) y[i] = (lc[i] + digit[i]) / Rational(radix[i]);
        std::vector<Rational> x(n, Rational(0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k)
                if (s.right(i, k) != 0) x[i] += Rational(s.right(i, k)) * y[k];
        out.push_back(TranslatedSubtorus::make(n, m, Character::unitary(x, a.translate.torsion)));
        std::size_t i = 0;
        while (i < s.rank && ++digit[i] == radix[i]) digit[i++] = 0;
        if (i == s.rank) break;
    }
    std::sort(out.begin(), out.end(), [](const TranslatedSubtorus& l, const TranslatedSubtorus& r) {
        return l.translate.angles < r.translate.angles;
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

// Pairwise coprime factor base of a set of positive integers; every input is
// a product of base elements, and distinct base elements are multiplicatively
// independent.
std::vector<Integer> coprime_base(std::vector<Integer> xs) {
    std::vector<Integer> base;
    for (auto& x : xs)
        if (x > 1) base.push_back(x);
    bool changed = true;
    while (changed) {
        changed = false;
        std::sort(base.begin(), base.end());
        base.erase(std::unique(base.begin(), base.end()), base.end());
        for (std::size_t i = 0; i < base.size() && !changed; ++i) {
            for (std::size_t j = i + 1; j < base.size() && !changed; ++j) {
                Integer g;
                mpz_gcd(g.get_mpz_t(), base[i].get_mpz_t(), base[j].get_mpz_t());
                if (g == 1) continue;
                Integer a = base[i] / g, b = base[j] / g;
                base.erase(base.begin() + static_cast<long>(j));
                base.erase(base.begin() + static_cast<long>(i));
                for (const auto& v : {g, a, b})
                    if (v > 1) base.push_back(v);
                changed = true;
            }
        }
    }
    return base;
}

long valuation(Integer x, const Integer& q) {
    long v = 0;
    while (x % q == 0) {
        x /= q;
        ++v;
    }
    return v;
}

}  // namespace

TranslatedSubtorus orbit_closure(const Character& chi, ActionVariant variant) {
    if (!chi.exact) throw DomainError("orbit closure requires exact data");
    const std::size_t b = chi.free_rank();
    if (variant == ActionVariant::B) {
        std::vector<Integer> parts;
        for (const auto& r : chi.moduli) {
            parts.push_back(r.get_num());
            parts.push_back(r.get_den());
        }
        const auto base = coprime_base(parts);
        IntMatrix e(base.size(), b, Integer(0));
        for (std::size_t i = 0; i < base.size(); ++i)
            for (std::size_t j = 0; j < b; ++j)
                e(i, j) = valuation(chi.moduli[j].get_num(), base[i]) - valuation(chi.moduli[j].get_den(), base[i]);
        IntMatrix u = base.empty() ? identity_matrix(b) : integer_kernel(e);
        return TranslatedSubtorus::make(b, u, Character::unitary(chi.angles, chi.torsion));
    }
    // variant A: t -> exp(2 pi i t lambda) with lambda in [0,1)^b
    Integer l = 1;
    for (const auto& a : chi.angles) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a.get_den_mpz_t());
    IntMatrix row(1, b);
    for (std::size_t j = 0; j < b; ++j) row(0, j) = chi.angles[j].get_num() * (l / chi.angles[j].get_den());
    return TranslatedSubtorus::make(b, integer_kernel(row), chi);
}

Character subtorus_point(const TranslatedSubtorus& t, const std::vector<Rational>& s,
                         const std::vector<Rational>& angle_shift) {
    if (s.size() != t.dimension()) throw DomainError("subtorus parameter count differs from dimension");
    Character c = t.translate;
    for (std::size_t j = 0; j < t.free_rank; ++j) {
        for (std::size_t k = 0; k < s.size(); ++k) {
            const long e = t.basis(j, k).get_si();
            if (e == 0) continue;
            c.moduli[j] *= rpow(s[k], e);
            if (!angle_shift.empty()) c.angles[j] = frac(c.angles[j] + angle_shift[k] * e);
        }
    }
    return c;
}

}  // namespace jumploci
