#include "jumploci/higgs_model.hpp"

#include <cmath>

#include "jumploci/alexander_covers.hpp"
#include "jumploci/error.hpp"

namespace jumploci {

namespace {

// trial division; a cofactor left over after the bound is kept as one atom
std::map<Integer, long> factor(Integer x) {
    std::map<Integer, long> out;
    for (Integer p = 2; p * p <= x && p < 10000000; ++p) {
        while (x % p == 0) {
            ++out[p];
            x /= p;
        }
    }
    if (x > 1) ++out[x];
    return out;
}

long binom(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    long r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<long>(n - k + i) / static_cast<long>(i);
    return r;
}

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> s;
    auto rec = [&](auto&& self, std::size_t start) -> void {
        if (s.size() == k) {
            out.push_back(s);
            return;
        }
        for (std::size_t i = start; i < n; ++i) {
            s.push_back(i);
            self(self, i + 1);
            s.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

// rank of w ^ - : Lambda^p -> Lambda^{p+1} on C^n
std::size_t wedge_rank(const std::vector<Rational>& w, std::size_t p) {
    const std::size_t n = w.size();
    if (p >= n) return 0;
    const auto src = subsets(n, p), dst = subsets(n, p + 1);
    Matrix<Rational> m(dst.size(), src.size());
    for (std::size_t c = 0; c < src.size(); ++c) {
        for (std::size_t k = 0; k < n; ++k) {
            if (w[k] == 0 || std::find(src[c].begin(), src[c].end(), k) != src[c].end()) continue;
            std::vector<std::size_t> J = src[c];
            const long sign = (std::count_if(J.begin(), J.end(), [k](std::size_t x) { return x < k; }) % 2) ? -1 : 1;
            J.insert(std::upper_bound(J.begin(), J.end(), k), k);
            const std::size_t r = static_cast<std::size_t>(std::find(dst.begin(), dst.end(), J) - dst.begin());
            m(r, c) += w[k] * sign;
        }
    }
    return rank_rational(m);
}

}  // namespace

LogReal LogReal::log_of(const Rational& x) {
    if (x <= 0) throw DomainError("logarithm of a non-positive number");
    LogReal out;
    for (const auto& [p, e] : factor(x.get_num())) out.terms[p] += e;
    for (const auto& [p, e] : factor(x.get_den())) out.terms[p] -= e;
    std::erase_if(out.terms, [](const auto& t) { return t.second == 0; });
    return out;
}

double LogReal::value() const {
    double s = 0;
    for (const auto& [p, c] : terms) s += c.get_d() * std::log(p.get_d());
    return s;
}

LogReal& LogReal::operator+=(const LogReal& o) {
    for (const auto& [p, c] : o.terms) terms[p] += c;
    std::erase_if(terms, [](const auto& t) { return t.second == 0; });
    return *this;
}

LogReal operator*(const Rational& c, const LogReal& a) {
    LogReal out;
    if (c == 0) return out;
    for (const auto& [p, v] : a.terms) out.terms[p] = Rational(c * v);
    return out;
}

std::string LogReal::to_string() const {
    if (terms.empty()) return "0";
    std::string s;
    for (const auto& [p, c] : terms) {
        if (!s.empty()) s += " + ";
        s += c.get_str() + "*log(" + p.get_str() + ")";
    }
    return s;
}

ComplexTorusModel ComplexTorusModel::make(std::vector<std::vector<Rational>> re, std::vector<std::vector<Rational>> im) {
    ComplexTorusModel x;
    x.n = re.empty() ? 0 : re.front().size();
    if (x.n == 0 || re.size() != 2 * x.n || im.size() != re.size()) throw DomainError("period matrix must be 2n x n");
    for (std::size_t j = 0; j < re.size(); ++j)
        if (re[j].size() != x.n || im[j].size() != x.n) throw DomainError("period matrix must be 2n x n");
    x.re = std::move(re);
    x.im = std::move(im);
    if (rank_rational(x.real_system()) != 2 * x.n) throw DomainError("singular period data");
    return x;
}

ComplexTorusModel ComplexTorusModel::standard(std::size_t n) {
    std::vector<std::vector<Rational>> re(2 * n, std::vector<Rational>(n, 0)), im = re;
    for (std::size_t k = 0; k < n; ++k) {
        re[k][k] = 1;
        im[n + k][k] = 1;
    }
    return make(re, im);
}

ComplexTorusModel ComplexTorusModel::from_json(const nlohmann::json& j) {
    auto num = [](const nlohmann::json& v) {
        if (v.is_number_integer()) return Rational(v.get<long>());
        if (!v.is_string()) throw ParseError("period entries must be integers or \"p/q\" strings", "period");
        return parse_rational(v.get<std::string>(), "period");
    };
    if (!j.is_object() || !j.contains("n") || !j.contains("period")) throw ParseError("model needs 'n' and 'period'", "top level");
    const std::size_t n = j["n"].get<std::size_t>();
    std::vector<std::vector<Rational>> re, im;
    for (const auto& row : j["period"]) {
        if (!row.is_array() || row.size() != n) throw ParseError("each period row needs n entries", "period");
        std::vector<Rational> r, i;
        for (const auto& e : row) {
            if (!e.is_array() || e.size() != 2) throw ParseError("period entries are [re, im] pairs", "period");
            r.push_back(num(e[0]));
            i.push_back(num(e[1]));
        }
        re.push_back(r);
        im.push_back(i);
    }
    return make(re, im);
}

Matrix<Rational> ComplexTorusModel::real_system() const {
    Matrix<Rational> a(2 * n, 2 * n);
    for (std::size_t j = 0; j < 2 * n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
            a(j, k) = 2 * re[j][k];
            a(j, n + k) = -2 * im[j][k];
        }
    return a;
}

bool HiggsLineBundle::theta_zero() const {
    for (std::size_t k = 0; k < theta_re.size(); ++k)
        if (!theta_re[k].is_zero() || !theta_im[k].is_zero()) return false;
    return true;
}

nlohmann::json HiggsLineBundle::to_json() const {
    nlohmann::json j;
    j["chi"] = chi.to_json();
    j["torsion_class"] = torsion_class;
    nlohmann::json t = nlohmann::json::array();
    for (std::size_t k = 0; k < theta_re.size(); ++k) t.push_back({theta_re[k].to_string(), theta_im[k].to_string()});
    j["theta"] = t;
    return j;
}

HiggsLineBundle psi(const ComplexTorusModel& x, const Character& rho) {
    const std::size_t n = x.n;
    if (!rho.exact) throw DomainError("psi needs an exact character");
    if (rho.free_rank() != 2 * n || !rho.torsion.empty()) throw DomainError("character is not on the period lattice");
    std::vector<LogReal> ell;
    for (const auto& m : rho.moduli) ell.push_back(LogReal::log_of(m));
    // invert the real system column by column
    const Matrix<Rational> a = x.real_system();
    HiggsLineBundle h;
    h.chi = Character::unitary(rho.angles);
    h.theta_re.assign(n, LogReal{});
    h.theta_im.assign(n, LogReal{});
    for (std::size_t j = 0; j < 2 * n; ++j) {
        if (ell[j].is_zero()) continue;
        std::vector<Rational> e(2 * n, 0);
        e[j] = 1;
        const auto col = solve_rational(a, e);
        for (std::size_t k = 0; k < n; ++k) {
            h.theta_re[k] += col[k] * ell[j];
            h.theta_im[k] += col[n + k] * ell[j];
        }
    }
    return h;
}

Character psi_inverse(const ComplexTorusModel& x, const HiggsLineBundle& h) {
    const std::size_t n = x.n;
    const Matrix<Rational> a = x.real_system();
    std::vector<LogReal> ell(2 * n);
    for (std::size_t j = 0; j < 2 * n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
            ell[j] += a(j, k) * h.theta_re[k];
            ell[j] += a(j, n + k) * h.theta_im[k];
        }
    std::vector<Rational> moduli;
    bool exact = true;
    for (const auto& l : ell) {
        Rational m = 1;
        for (const auto& [p, c] : l.terms) {
            if (c.get_den() != 1) {
                exact = false;
                break;
            }
            Integer pw;
            mpz_pow_ui(pw.get_mpz_t(), p.get_mpz_t(), Integer(abs(c.get_num())).get_ui());
            m *= c > 0 ? Rational(pw) : Rational(1 / Rational(pw));
        }
        moduli.push_back(m);
    }
    if (exact) return Character::with_moduli(moduli, h.chi.angles);
    Character c;
    c.exact = false;
    for (std::size_t j = 0; j < 2 * n; ++j) {
        c.numeric_moduli.push_back(std::exp(ell[j].value()));
        c.numeric_angles.push_back(h.chi.angles[j].get_d());
    }
    return c;
}

HiggsLineBundle operator+(const HiggsLineBundle& a, const HiggsLineBundle& b) {
    HiggsLineBundle h = a;
    h.chi = a.chi * b.chi;
    for (std::size_t k = 0; k < h.theta_re.size(); ++k) {
        h.theta_re[k] += b.theta_re[k];
        h.theta_im[k] += b.theta_im[k];
    }
    return h;
}

HiggsLineBundle scale_theta(const HiggsLineBundle& h, const Rational& t) {
    HiggsLineBundle out = h;
    for (std::size_t k = 0; k < h.theta_re.size(); ++k) {
        out.theta_re[k] = t * h.theta_re[k];
        out.theta_im[k] = t * h.theta_im[k];
    }
    return out;
}

long higgs_cohomology_dim(const ComplexTorusModel& x, const HiggsLineBundle& h, std::size_t p, std::size_t q) {
    const std::size_t n = x.n;
    if (p > n || q > n) throw DomainError("Hodge index out of range");
    // Dolbeault cohomology of a nontrivial flat line bundle on a torus vanishes
    if (!h.chi.is_trivial()) return 0;
    // the rank of wedge with theta depends only on theta being nonzero, and
    // every nonzero theta is GL_n-equivalent to one with this zero pattern
    std::vector<Rational> w(n, 0);
    for (std::size_t k = 0; k < n; ++k)
        if (!h.theta_re[k].is_zero() || !h.theta_im[k].is_zero()) w[k] = 1;
    const long in = p ? static_cast<long>(wedge_rank(w, p - 1)) : 0;
    const long out = static_cast<long>(wedge_rank(w, p));
    return (binom(n, p) - in - out) * binom(n, q);
}

long local_system_dim(const ComplexTorusModel& x, const Character& rho, std::size_t i) {
    if (rho.free_rank() != 2 * x.n) throw DomainError("character is not on the period lattice");
    if (i > 2 * x.n) return 0;
    std::vector<Cyclotomic> values;
    for (std::size_t j = 0; j < 2 * x.n; ++j) values.push_back(Cyclotomic(rho.moduli[j]) * Cyclotomic::root_of_unity(rho.angles[j]));
    return koszul_cohomology(ModuleAction::trivial(2 * x.n), values)[i];
}

DecompositionCheck verify_higgs_decomposition(const ComplexTorusModel& x, const Character& rho, std::size_t i) {
    DecompositionCheck c;
    c.lhs = local_system_dim(x, rho, i);
    const HiggsLineBundle h = psi(x, rho);
    for (std::size_t p = 0; p <= std::min(i, x.n); ++p)
        if (i - p <= x.n) c.rhs += higgs_cohomology_dim(x, h, p, i - p);
    return c;
}

bool sigma_pq_membership(const ComplexTorusModel& x, const HiggsLineBundle& h, std::size_t p, std::size_t q, long m) {
    return higgs_cohomology_dim(x, h, p, q) >= m;
}

bool S_pq_membership(const ComplexTorusModel& x, const HiggsLineBundle& h, std::size_t p, std::size_t q, long m) {
    return sigma_pq_membership(x, scale_theta(h, 0), p, q, m);
}

PartitionCheck partition_check(const ComplexTorusModel& x, const Character& rho, std::size_t i, long m) {
    if (m < 1) throw DomainError("multiplicity must be positive");
    PartitionCheck c;
    c.in_sigma = local_system_dim(x, rho, i) >= m;
    const HiggsLineBundle h = psi(x, rho);
    std::vector<long> dims(i + 1, 0);
    for (std::size_t k = 0; k <= i; ++k)
        if (k <= x.n && i - k <= x.n) dims[k] = higgs_cohomology_dim(x, h, k, i - k);
    // all mu : {0..i} -> Z_{>=0} with sum m; sigma_0 is everything
    std::vector<long> mu(i + 1, 0);
    auto rec = [&](auto&& self, std::size_t k, long left) -> void {
        if (k == i) {
            mu[k] = left;
            ++c.partitions;
            bool ok = true;
            for (std::size_t t = 0; t <= i; ++t) ok = ok && dims[t] >= mu[t];
            c.in_partition = c.in_partition || ok;
            return;
        }
        for (long v = 0; v <= left; ++v) {
            mu[k] = v;
            self(self, k + 1, left - v);
        }
    };
    rec(rec, 0, m);
    return c;
}

}  // namespace jumploci
