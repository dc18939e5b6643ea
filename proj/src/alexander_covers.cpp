#include "jumploci/alexander_covers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include <Eigen/Dense>

#include "jumploci/error.hpp"
#include "jumploci/parallel.hpp"

namespace jumploci {

namespace {

constexpr std::size_t max_minors = 20000;

Matrix<Cyclotomic> identity_cyc(std::size_t n) {
    Matrix<Cyclotomic> m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Cyclotomic(1);
    return m;
}

Matrix<Cyclotomic> mul(const Matrix<Cyclotomic>& a, const Matrix<Cyclotomic>& b) {
    Matrix<Cyclotomic> out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
        }
    return out;
}

// increments a sorted k-subset of [0, n); false after the last one
bool next_subset(std::vector<std::size_t>& s, std::size_t n) {
    const std::size_t k = s.size();
    for (std::size_t i = k; i-- > 0;) {
        if (s[i] < n - k + i) {
            ++s[i];
            for (std::size_t j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
            return true;
        }
    }
    return false;
}

std::vector<std::size_t> first_subset(std::size_t k) {
    std::vector<std::size_t> s(k);
    std::iota(s.begin(), s.end(), 0);
    return s;
}

Integer binomial(std::size_t n, std::size_t k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

std::vector<std::vector<std::size_t>> all_subsets(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    if (k > n) return out;
    auto s = first_subset(k);
    do out.push_back(s);
    while (next_subset(s, n));
    return out;
}

LaurentPoly normalise(const LaurentPoly& p) {
    LaurentPoly q = p.monomial_normalised();
    const Cyclotomic lead = q.terms().begin()->second;
    return q.scaled(lead.inverse(), Exponent(q.variable_count(), 0));
}

std::complex<double> evaluate_numeric(const LaurentPoly& p, const std::vector<std::complex<double>>& point) {
    std::complex<double> s = 0;
    for (const auto& [e, c] : p.terms()) {
        std::complex<double> t = c.embed();
        for (std::size_t k = 0; k < e.size(); ++k) t *= std::pow(point[k], static_cast<double>(e[k]));
        s += t;
    }
    return s;
}

double coefficient_size(const LaurentPoly& p) {
    double s = 0;
    for (const auto& [e, c] : p.terms()) s += std::abs(c.embed());
    return s;
}

// continued-fraction approximation with bounded denominator
Rational approximate(double x, long max_den) {
    long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double r = x;
    for (int it = 0; it < 40; ++it) {
        const double a = std::floor(r);
        if (std::abs(a) > 1e12) break;
        const long ai = static_cast<long>(a);
        const long p2 = ai * p1 + p0, q2 = ai * q1 + q0;
        if (q2 > max_den) break;
        p0 = p1, q0 = q1, p1 = p2, q1 = q2;
        if (std::abs(r - a) < 1e-12) break;
        r = 1.0 / (r - a);
    }
    Rational out(p1, q1);
    out.canonicalize();
    return out;
}

struct Root {
    bool exact = false;
    Rational modulus = 1;
    Rational angle = 0;
    std::complex<double> value;
    Cyclotomic exact_value() const { return Cyclotomic(modulus) * Cyclotomic::root_of_unity(angle); }
};

std::vector<std::complex<double>> numeric_roots(const UniPoly& f) {
    const int d = f.degree();
    if (d <= 0) return {};
    const auto& c = f.coefficients();
    const std::complex<double> lead = c.back().embed();
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < d; ++i) comp(i, d - 1) = -c[static_cast<std::size_t>(i)].embed() / lead;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp);
    std::vector<std::complex<double>> out;
    for (int i = 0; i < d; ++i) out.push_back(es.eigenvalues()(i));
    return out;
}

// Distinct roots of f. A root is exact when it snaps to a root of unity or a
// signed rational and the snap evaluates to zero exactly.
std::vector<Root> distinct_roots(UniPoly f) {
    if (f.degree() <= 0) return {};
    f = f.divmod(UniPoly::gcd(f, f.derivative())).first;
    std::vector<Root> out;
    for (const auto& z : numeric_roots(f)) {
        Root r;
        r.value = z;
        const double mod = std::abs(z);
        if (std::abs(mod - 1) < 1e-6) {
            double turn = std::arg(z) / (2 * M_PI);
            if (turn < 0) turn += 1;
            const Rational a = frac(approximate(turn, 2000));
            if (f.evaluate(Cyclotomic::root_of_unity(a)).is_zero()) {
                r.exact = true;
                r.angle = a;
            }
        }
        if (!r.exact && std::abs(z.imag()) < 1e-6 * std::max(1.0, mod)) {
            Rational q = approximate(z.real(), 1000000);
            if (q != 0 && f.evaluate(Cyclotomic(q)).is_zero()) {
                r.exact = true;
                r.modulus = abs(q);
                r.angle = q < 0 ? Rational(1, 2) : Rational(0);
            }
        }
        if (r.exact) r.value = r.exact_value().embed();
        out.push_back(r);
    }
    // numeric duplicates of an exact root collapse onto it
    std::vector<Root> unique;
    for (const auto& r : out) {
        bool dup = false;
        for (const auto& u : unique)
            if (std::abs(u.value - r.value) < 1e-9 * std::max(1.0, std::abs(r.value))) dup = true;
        if (!dup) unique.push_back(r);
    }
    return unique;
}

struct SliceResult {
    Finiteness finiteness = Finiteness::finite;
    std::string reason;
    std::vector<Weight> weights;  // support of H_1(X^ab) on the slice
};

SliceResult analyse_slice(const GroupData& g, const std::vector<Rational>& torsion) {
    SliceResult out;
    const std::size_t b = g.free_rank(), gens = g.generator_count(), r = g.relator_count();
    const Matrix<LaurentPoly> F = alexander_matrix(g, torsion);
    if (gens == 0) return out;
    const std::size_t s = gens - 1;
    if (b > 0 && rank_generic(F, s) < s) {
        out.finiteness = Finiteness::infinite;
        out.reason = "Alexander module has positive rank";
        return out;
    }
    if (s > 0 && binomial(r, s) * gens > max_minors) {
        out.finiteness = Finiteness::undetermined;
        out.reason = "too many minors";
        return out;
    }
    const auto minors = fitting_generators(F, 1);
    if (minors.empty()) {
        // b = 0 and rank below g - 1 everywhere on this slice
        out.weights.push_back({1, true, Character::unitary({}, torsion), {}, {}});
        return out;
    }
    for (const auto& m : minors)
        if (m.is_unit()) return out;

    // candidate values for each free coordinate
    std::vector<std::vector<Root>> axes(b);
    for (std::size_t j = 0; j < b; ++j) {
        std::optional<UniPoly> h;
        for (const auto& m : minors) {
            const auto vars = m.support_variables();
            if (vars.size() > 1 || (vars.size() == 1 && vars[0] != j)) continue;
            const UniPoly u = to_unipoly(m, j);
            h = h ? UniPoly::gcd(*h, u) : u;
        }
        if (!h) {
            out.finiteness = Finiteness::undetermined;
            out.reason = "no univariate element found for a free coordinate";
            return out;
        }
        axes[j] = distinct_roots(*h);
        if (axes[j].empty()) return out;
    }

    std::vector<std::size_t> idx(b, 0);
    while (true) {
        bool exact = true;
        for (std::size_t j = 0; j < b; ++j) exact = exact && axes[j][idx[j]].exact;
        bool zero = true;
        if (exact) {
            std::vector<Cyclotomic> pt;
            for (std::size_t j = 0; j < b; ++j) pt.push_back(axes[j][idx[j]].exact_value());
            for (const auto& m : minors)
                if (!m.evaluate(pt).is_zero()) {
                    zero = false;
                    break;
                }
        } else {
            std::vector<std::complex<double>> pt;
            for (std::size_t j = 0; j < b; ++j) pt.push_back(axes[j][idx[j]].value);
            for (const auto& m : minors)
                if (std::abs(evaluate_numeric(m, pt)) > 1e-8 * (1 + coefficient_size(m))) {
                    zero = false;
                    break;
                }
        }
        if (zero) {
            Weight w;
            w.degree = 1;
            w.exact = exact;
            if (exact) {
                std::vector<Rational> mods, angs;
                for (std::size_t j = 0; j < b; ++j) {
                    mods.push_back(axes[j][idx[j]].modulus);
                    angs.push_back(axes[j][idx[j]].angle);
                }
                w.character = Character::with_moduli(mods, angs, torsion);
                w.order = w.character.order();
            } else {
                for (std::size_t j = 0; j < b; ++j) w.values.push_back(axes[j][idx[j]].value);
                for (const auto& t : torsion) w.values.push_back(Cyclotomic::root_of_unity(t).embed());
            }
            out.weights.push_back(std::move(w));
        }
        std::size_t j = 0;
        while (j < b && ++idx[j] == axes[j].size()) idx[j++] = 0;
        if (j == b) break;
    }
    return out;
}

Weight inverted(const Weight& w) {
    Weight v = w;
    if (w.exact) {
        v.character = w.character.inverse();
    } else {
        for (auto& z : v.values) z = 1.0 / z;
    }
    return v;
}

nlohmann::json weight_json(const Weight& w) {
    nlohmann::json j;
    j["degree"] = w.degree;
    j["exact"] = w.exact;
    if (w.exact) {
        j["character"] = w.character.to_json();
        if (w.order) j["order"] = *w.order;
    } else {
        nlohmann::json vals = nlohmann::json::array();
        for (const auto& z : w.values) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.12g%+.12gi", z.real(), z.imag());
            vals.push_back(buf);
        }
        j["values"] = vals;
    }
    return j;
}

}  // namespace

Matrix<Cyclotomic> inverse(const Matrix<Cyclotomic>& m) {
    const std::size_t n = m.rows();
    if (m.cols() != n) throw DomainError("inverse of a non-square matrix");
    Matrix<Cyclotomic> a = m, inv = identity_cyc(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a(p, c).is_zero()) ++p;
        if (p == n) throw DomainError("matrix is not invertible");
        a.swap_rows(p, c);
        inv.swap_rows(p, c);
        const Cyclotomic s = a(c, c).inverse();
        for (std::size_t j = 0; j < n; ++j) {
            a(c, j) *= s;
            inv(c, j) *= s;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a(i, c).is_zero()) continue;
            const Cyclotomic f = a(i, c);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(c, j);
                inv(i, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

ModuleAction ModuleAction::make(std::vector<Matrix<Cyclotomic>> actions) {
    if (actions.empty()) throw DomainError("module action needs at least one operator");
    const std::size_t n = actions.front().rows();
    for (const auto& m : actions) {
        if (m.rows() != n || m.cols() != n) throw DomainError("operators must be square of equal size");
        if (rank_exact(m, n) != n) throw DomainError("operators must be invertible");
    }
    for (std::size_t i = 0; i < actions.size(); ++i)
        for (std::size_t j = i + 1; j < actions.size(); ++j)
            if (!(mul(actions[i], actions[j]) == mul(actions[j], actions[i])))
                throw DomainError("operators must commute");
    ModuleAction v;
    v.rank = actions.size();
    v.dimension = n;
    v.actions = std::move(actions);
    return v;
}

ModuleAction ModuleAction::trivial(std::size_t b, std::size_t dim) {
    ModuleAction v;
    v.rank = b;
    v.dimension = dim;
    v.actions.assign(b, identity_cyc(dim));
    return v;
}

ModuleAction ModuleAction::dual() const {
    ModuleAction v;
    v.rank = rank;
    v.dimension = dimension;
    for (const auto& m : actions) v.actions.push_back(inverse(m).transposed());
    return v;
}

std::vector<LaurentPoly> fitting_generators(const Matrix<LaurentPoly>& m, std::size_t k) {
    const std::size_t g = m.cols(), r = m.rows();
    if (k > g) throw DomainError("Fitting index exceeds the number of generators");
    const std::size_t s = g - k;
    const std::size_t nvars = r && g ? m(0, 0).variable_count() : 0;
    if (s == 0) return {LaurentPoly(nvars, Cyclotomic(1))};
    if (s > r) return {};
    std::vector<LaurentPoly> out;
    for (const auto& rows : all_subsets(r, s)) {
        for (const auto& cols : all_subsets(g, s)) {
            Matrix<LaurentPoly> sub(s, s, LaurentPoly(nvars));
            for (std::size_t i = 0; i < s; ++i)
                for (std::size_t j = 0; j < s; ++j) sub(i, j) = m(rows[i], cols[j]);
            const LaurentPoly d = determinant(sub);
            if (!d.is_zero()) out.push_back(normalise(d));
        }
    }
    std::sort(out.begin(), out.end(),
              [](const LaurentPoly& a, const LaurentPoly& b) { return a.to_string() < b.to_string(); });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Matrix<LaurentPoly> alexander_matrix(const GroupData& g, const std::vector<Rational>& torsion_angles) {
    const std::size_t b = g.free_rank();
    if (torsion_angles.size() != g.abelianization.torsion.size()) throw DomainError("torsion character has the wrong length");
    return restricted_fox(g, TranslatedSubtorus::full(b, Character::unitary(std::vector<Rational>(b, 0), torsion_angles)));
}

bool is_weight(const std::vector<Cyclotomic>& chi, const ModuleAction& v) {
    if (chi.size() != v.rank) throw DomainError("character and action have different ranks");
    const std::size_t n = v.dim();
    if (n == 0) return false;
    Matrix<Cyclotomic> stacked(v.rank * n, n);
    for (std::size_t j = 0; j < v.rank; ++j)
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
                stacked(j * n + r, c) = v.actions[j](r, c) - (r == c ? chi[j] : Cyclotomic(0));
    return rank_exact(stacked) < n;
}

std::vector<long> koszul_cohomology(const ModuleAction& v, const std::vector<Cyclotomic>& chi) {
    if (chi.size() != v.rank) throw DomainError("character and action have different ranks");
    const std::size_t b = v.rank, n = v.dim();
    std::vector<Matrix<Cyclotomic>> N;
    for (std::size_t j = 0; j < b; ++j) {
        Matrix<Cyclotomic> m(n, n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) m(r, c) = chi[j] * v.actions[j](r, c) - (r == c ? Cyclotomic(1) : Cyclotomic(0));
        N.push_back(std::move(m));
    }
    // ranks of d^p : C^p -> C^{p+1}, C^p = Lambda^p(C^b) (x) V
    std::vector<std::size_t> ranks(b + 1, 0);
    for (std::size_t p = 0; p < b; ++p) {
        const auto src = all_subsets(b, p), dst = all_subsets(b, p + 1);
        Matrix<Cyclotomic> d(dst.size() * n, src.size() * n);
        for (std::size_t row = 0; row < dst.size(); ++row) {
            const auto& J = dst[row];
            for (std::size_t t = 0; t <= p; ++t) {
                std::vector<std::size_t> I;
                for (std::size_t u = 0; u <= p; ++u)
                    if (u != t) I.push_back(J[u]);
                const std::size_t col = static_cast<std::size_t>(std::find(src.begin(), src.end(), I) - src.begin());
                const Cyclotomic sign(t % 2 ? -1 : 1);
                for (std::size_t r = 0; r < n; ++r)
                    for (std::size_t c = 0; c < n; ++c)
                        if (!N[J[t]](r, c).is_zero()) d(row * n + r, col * n + c) += sign * N[J[t]](r, c);
            }
        }
        ranks[p] = rank_exact(d);
    }
    std::vector<long> dims;
    for (std::size_t p = 0; p <= b; ++p) {
        const long cp = binomial(b, p).get_si() * static_cast<long>(n);
        dims.push_back(cp - static_cast<long>(ranks[p]) - (p ? static_cast<long>(ranks[p - 1]) : 0));
    }
    return dims;
}

VanishingVerdict vanishing_check(const ModuleAction& v, const std::vector<Cyclotomic>& chi) {
    VanishingVerdict out;
    out.dims = koszul_cohomology(v, chi);
    std::vector<Cyclotomic> inv;
    for (const auto& c : chi) inv.push_back(c.inverse());
    out.inverse_is_weight = is_weight(inv, v);
    out.h0_nonzero = out.dims[0] > 0;
    out.all_vanish = std::all_of(out.dims.begin(), out.dims.end(), [](long d) { return d == 0; });
    out.consistent = out.h0_nonzero == out.inverse_is_weight && (out.inverse_is_weight || out.all_vanish);
    return out;
}

std::string to_string(Finiteness f) {
    switch (f) {
        case Finiteness::finite:
            return "finite";
        case Finiteness::infinite:
            return "infinite";
        case Finiteness::undetermined:
            return "undetermined";
    }
    return "undetermined";
}

WeightReport weights_and_W(const GroupData& g, int N, long K) {
    if (N < 1) throw DomainError("N must be positive");
    if (N > 2) throw Refusal("degrees of X^ab above 1 are out of reach for presentations");
    if (K < 1) throw DomainError("scan order must be at least 1");
    const auto& a = g.abelianization;
    WeightReport rep;
    rep.scan_order = K;
    rep.finiteness = Finiteness::finite;
    Weight one;
    one.degree = 0;
    one.character = Character::trivial(a.free_rank, a.torsion.size());
    one.order = 1;
    rep.weights.push_back(one);
    rep.inverse_weights.push_back(one);
    if (N >= 2) {
        AbelianizationData torsion_only;
        torsion_only.torsion = a.torsion;
        for (const auto& t : enumerate_torsion_points(torsion_only, std::max<long>(1, std::accumulate(a.torsion.begin(), a.torsion.end(), 1L, [](long x, long y) { return std::lcm(x, y); })))) {
            std::vector<Rational> angles;
            for (long v : t.num) angles.push_back(frac(Rational(v, t.den)));
            SliceResult s = analyse_slice(g, angles);
            if (s.finiteness != Finiteness::finite) {
                rep.finiteness = s.finiteness;
                rep.reason = s.reason;
                rep.weights.resize(1);
                rep.inverse_weights.resize(1);
                break;
            }
            for (auto& w : s.weights) {
                if (w.exact && w.character.is_trivial()) continue;
                rep.inverse_weights.push_back(w);
                rep.weights.push_back(inverted(w));
            }
        }
    }
    if (rep.finiteness != Finiteness::finite) return rep;

    const auto points = enumerate_torsion_points(a, K);
    rep.scanned = points.size();
    std::vector<char> bad(points.size(), 0);
    parallel_for(points.size(), [&](std::size_t i) {
        const Character chi = to_character(points[i], a.free_rank);
        const bool trivial = chi.is_trivial();
        const bool in_sigma = trivial || (N >= 2 && cohomology_dim_at(g, points[i], 1) >= 1);
        bool in_w = trivial;
        for (const auto& w : rep.inverse_weights)
            if (w.exact && w.character == chi) in_w = true;
        bad[i] = in_sigma != in_w;
    });
    for (std::size_t i = 0; i < points.size(); ++i)
        if (bad[i]) rep.mismatches.push_back(points[i]);
    rep.identity_holds = rep.mismatches.empty();
    return rep;
}

nlohmann::json WeightReport::to_json(const AbelianizationData& a) const {
    nlohmann::json j;
    j["finiteness"] = to_string(finiteness);
    if (!reason.empty()) j["reason"] = reason;
    nlohmann::json w = nlohmann::json::array(), wi = nlohmann::json::array();
    for (const auto& x : weights) w.push_back(weight_json(x));
    for (const auto& x : inverse_weights) wi.push_back(weight_json(x));
    j["W"] = w;
    j["W_inverse"] = wi;
    j["K"] = scan_order;
    j["scanned"] = scanned;
    nlohmann::json mm = nlohmann::json::array();
    for (const auto& p : mismatches) mm.push_back(to_character(p, a.free_rank).to_json());
    j["mismatches"] = mm;
    j["identity_holds"] = identity_holds;
    return j;
}

AbelianQuotient joint_kernel_quotient(const AbelianizationData& a, const std::vector<TorsionPoint>& points) {
    const std::size_t c = a.coordinate_count(), s = points.size();
    AbelianQuotient q;
    q.images.assign(c, {});
    if (s == 0 || c == 0) return q;
    long L = 1;
    for (const auto& p : points) L = std::lcm(L, p.den);
    IntMatrix A(s, c + s, Integer(0));
    for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t k = 0; k < c; ++k) A(i, k) = points[i].num[k] * (L / points[i].den);
        A(i, c + i) = L;
    }
    const IntMatrix ker = integer_kernel(A);
    IntMatrix lattice(ker.rows(), c);
    for (std::size_t r = 0; r < ker.rows(); ++r)
        for (std::size_t k = 0; k < c; ++k) lattice(r, k) = ker(r, k);
    const SmithForm sf = smith_normal_form(lattice);
    if (sf.rank != c) throw Error("joint kernel has infinite index");
    std::vector<std::size_t> cols;
    for (std::size_t k = 0; k < c; ++k)
        if (sf.diag(k, k) != 1) {
            cols.push_back(k);
            q.moduli.push_back(sf.diag(k, k).get_si());
        }
    for (std::size_t k = 0; k < c; ++k)
        for (std::size_t t = 0; t < cols.size(); ++t) {
            const long m = q.moduli[t];
            long v = Integer(sf.right(k, cols[t]) % m).get_si();
            q.images[k].push_back(v < 0 ? v + m : v);
        }
    return q;
}

FiniteCoverReport finite_cover_check(const GroupData& g, int N, long K) {
    if (N < 1) throw DomainError("N must be positive");
    if (N > 2) throw Refusal("degrees of X^ab above 1 are out of reach for presentations");
    FiniteCoverReport rep;
    const auto& a = g.abelianization;
    if (N >= 2) {
        DiscoveryOptions opt;
        opt.K = K;
        const auto sigma = discover_components(g, 1, 1, opt);
        for (const auto* c : sigma.certified())
            if (c->torus.dimension() > 0) throw Refusal("finiteness hypotheses fail");
        rep.killed = sigma.members;
    } else {
        rep.killed = {enumerate_torsion_points(a, 1).front()};
    }
    rep.cover = reidemeister_schreier(g.presentation, a, joint_kernel_quotient(a, rep.killed));
    const GroupData cover = GroupData::from(rep.cover.presentation);
    const auto points = enumerate_torsion_points(cover.abelianization, K);
    rep.scanned = points.size();
    if (N >= 2) {
        std::vector<long> dims(points.size());
        parallel_for(points.size(), [&](std::size_t i) { dims[i] = cohomology_dim_at(cover, points[i], 1); });
        for (std::size_t i = 0; i < points.size(); ++i) {
            const bool trivial = std::all_of(points[i].num.begin(), points[i].num.end(), [](long v) { return v == 0; });
            if (!trivial && dims[i] >= 1) rep.survivors.push_back(points[i]);
        }
    }
    rep.passed = rep.survivors.empty();
    return rep;
}

nlohmann::json FiniteCoverReport::to_json(const AbelianizationData& base, const AbelianizationData& cover_ab) const {
    nlohmann::json j;
    nlohmann::json k = nlohmann::json::array();
    for (const auto& p : killed) k.push_back(to_character(p, base.free_rank).to_json());
    j["killed"] = k;
    j["cover_degree"] = cover.degree;
    j["cover"] = nlohmann::json::parse(presentation_to_json(cover.presentation));
    j["scanned"] = scanned;
    nlohmann::json s = nlohmann::json::array();
    for (const auto& p : survivors) s.push_back(to_character(p, cover_ab.free_rank).to_json());
    j["survivors"] = s;
    j["passed"] = passed;
    return j;
}

}  // namespace jumploci
