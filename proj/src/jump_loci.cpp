#include "jumploci/jump_loci.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <random>
#include <thread>
#include <unordered_set>

#include <Eigen/Dense>

#include "jumploci/error.hpp"
#include "jumploci/parallel.hpp"

namespace jumploci {

std::size_t worker_count() {
    if (const char* env = std::getenv("JUMPLOCI_WORKERS")) {
        const long n = std::strtol(env, nullptr, 10);
        if (n >= 1) return static_cast<std::size_t>(n);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

// Fox entries flattened to (H_1 coordinates, integer coefficient) terms.
struct ScanKernel {
    struct Term {
        std::vector<long> coords;
        long coeff;
    };
    std::size_t rows = 0, cols = 0;
    std::vector<std::vector<Term>> entries;  // row-major
};

namespace {

std::shared_ptr<const ScanKernel> build_kernel(const AlexanderMatrix& m) {
    auto k = std::make_shared<ScanKernel>();
    k->rows = m.entries.rows();
    k->cols = m.entries.cols();
    for (std::size_t i = 0; i < k->rows; ++i) {
        for (std::size_t j = 0; j < k->cols; ++j) {
            std::vector<ScanKernel::Term> terms;
            for (const auto& [e, c] : m.entries(i, j)) {
                if (!c.fits_slong_p()) throw Error("Fox coefficient overflow");
                std::vector<long> coords = e.free;
                coords.insert(coords.end(), e.torsion.begin(), e.torsion.end());
                terms.push_back({std::move(coords), c.get_si()});
            }
            k->entries.push_back(std::move(terms));
        }
    }
    return k;
}

long mod_pos(long a, long n) {
    long r = a % n;
    return r < 0 ? r + n : r;
}

bool is_trivial_point(const TorsionPoint& p) {
    return std::all_of(p.num.begin(), p.num.end(), [](long v) { return v == 0; });
}

void require_h2(const GroupData& g) {
    if (!g.presentation.aspherical) throw Refusal("H² undefined for this input");
}

long dim_from_rank(const GroupData& g, int degree, std::size_t rank, long h0) {
    const long gens = static_cast<long>(g.generator_count());
    switch (degree) {
        case 0:
            return h0;
        case 1:
            return gens - static_cast<long>(rank) - (1 - h0);
        case 2:
            require_h2(g);
            return static_cast<long>(g.relator_count()) - static_cast<long>(rank);
        default:
            throw Refusal("cohomology beyond degree 2 is not computed from a presentation");
    }
}

std::size_t numeric_rank(const Matrix<std::complex<double>>& m) {
    if (m.empty()) return 0;
    Eigen::MatrixXcd e(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) e(static_cast<long>(i), static_cast<long>(j)) = m(i, j);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(e);
    const auto& s = svd.singularValues();
    const double scale = std::max(1.0, s.size() ? s(0) : 0.0);
    std::size_t r = 0;
    for (long i = 0; i < s.size(); ++i)
        if (s(i) > 1e-8 * scale) ++r;
    return r;
}

}  // namespace

GroupData GroupData::from(FinitePresentation p) {
    GroupData g;
    g.presentation = std::move(p);
    g.abelianization = abelianize(g.presentation);
    g.fox = fox_matrix(g.presentation, g.abelianization);
    g.kernel = build_kernel(g.fox);
    return g;
}

Matrix<Cyclotomic> evaluate_fox(const GroupData& g, const Character& chi) {
    const auto& e = g.fox.entries;
    Matrix<Cyclotomic> out(e.rows(), e.cols());
    std::map<H1Element, Cyclotomic> cache;
    for (std::size_t i = 0; i < e.rows(); ++i) {
        for (std::size_t j = 0; j < e.cols(); ++j) {
            Cyclotomic v;
            for (const auto& [h, c] : e(i, j)) {
                auto it = cache.find(h);
                if (it == cache.end()) it = cache.emplace(h, chi.evaluate(h)).first;
                v += Cyclotomic(Rational(c)) * it->second;
            }
            out(i, j) = v;
        }
    }
    return out;
}

Matrix<std::complex<double>> evaluate_fox_numeric(const GroupData& g, const Character& chi) {
    const auto& e = g.fox.entries;
    Matrix<std::complex<double>> out(e.rows(), e.cols());
    for (std::size_t i = 0; i < e.rows(); ++i)
        for (std::size_t j = 0; j < e.cols(); ++j)
            for (const auto& [h, c] : e(i, j)) out(i, j) += c.get_d() * chi.evaluate_numeric(h);
    return out;
}

TwistedComplex TwistedComplex::build(const GroupData& g, const Character& chi) {
    TwistedComplex t;
    t.character = chi;
    t.d0 = Matrix<Cyclotomic>(1, g.generator_count());
    const auto values = chi.generator_values(g.abelianization);
    for (std::size_t j = 0; j < values.size(); ++j) t.d0(0, j) = values[j] - Cyclotomic(1);
    t.d1 = evaluate_fox(g, chi);
    t.degree2 = g.presentation.aspherical;
    return t;
}

CohomologyDims twisted_cohomology_dims(const GroupData& g, const Character& chi, bool want_h2) {
    if (want_h2) require_h2(g);
    if (!chi.exact) throw DomainError("twisted cohomology needs an exact character");
    CohomologyDims d;
    d.h0 = chi.is_trivial() ? 1 : 0;
    const std::size_t ub = g.generator_count() - (d.h0 ? 0 : 1);
    const std::size_t rank = rank_exact(evaluate_fox(g, chi), ub);
    d.h1 = dim_from_rank(g, 1, rank, d.h0);
    if (want_h2) d.h2 = dim_from_rank(g, 2, rank, d.h0);
    return d;
}

long cohomology_dim(const GroupData& g, const Character& chi, int degree) {
    if (degree == 0) return chi.is_trivial() ? 1 : 0;
    const auto d = twisted_cohomology_dims(g, chi, degree == 2);
    if (degree == 1) return d.h1;
    if (degree == 2) return *d.h2;
    throw Refusal("cohomology beyond degree 2 is not computed from a presentation");
}

bool sigma_membership(const GroupData& g, const Character& chi, int degree, long m) {
    if (m < 1) throw DomainError("multiplicity must be positive");
    return cohomology_dim(g, chi, degree) >= m;
}

long cohomology_dim_at(const GroupData& g, const TorsionPoint& p, int degree) {
    if (degree == 2) require_h2(g);
    const long h0 = is_trivial_point(p) ? 1 : 0;
    if (degree == 0) return h0;
    if (degree > 2 || degree < 0) throw Refusal("cohomology beyond degree 2 is not computed from a presentation");
    const ScanKernel& k = *g.kernel;
    const std::size_t ub = g.generator_count() - (h0 ? 0 : 1);
    const auto& f = ModpEmbedding::for_conductor(static_cast<unsigned long>(p.den));
    std::vector<std::uint64_t> powers(static_cast<std::size_t>(p.den));
    powers[0] = 1;
    const std::uint64_t w = f.zeta_power(1);
    for (std::size_t e = 1; e < powers.size(); ++e) powers[e] = f.mul(powers[e - 1], w);
    Matrix<std::uint64_t> m(k.rows, k.cols);
    for (std::size_t i = 0; i < k.rows; ++i) {
        for (std::size_t j = 0; j < k.cols; ++j) {
            std::uint64_t v = 0;
            for (const auto& t : k.entries[i * k.cols + j]) {
                long angle = 0;
                for (std::size_t c = 0; c < t.coords.size(); ++c)
                    if (t.coords[c]) angle = mod_pos(angle + mod_pos(t.coords[c], p.den) * p.num[c], p.den);
                const std::uint64_t coeff = static_cast<std::uint64_t>(mod_pos(t.coeff, static_cast<long>(f.prime())));
                v = f.add(v, f.mul(coeff, powers[static_cast<std::size_t>(angle)]));
            }
            m(i, j) = v;
        }
    }
    std::size_t rank = rank_modp(std::move(m), f.prime());
    if (rank < std::min(ub, k.rows))
        rank = rank_exact(evaluate_fox(g, to_character(p, g.free_rank())), ub);
    return dim_from_rank(g, degree, rank, h0);
}

std::string to_string(Status s) {
    switch (s) {
        case Status::certified:
            return "certified";
        case Status::candidate:
            return "candidate";
        case Status::refuted:
            return "refuted";
    }
    return "refuted";
}

// ---------------------------------------------------------------------------
// Certification

Matrix<LaurentPoly> restricted_fox(const GroupData& g, const TranslatedSubtorus& t) {
    if (t.free_rank != g.free_rank() || t.translate.torsion.size() != g.abelianization.torsion.size())
        throw DomainError("component dimension mismatch");
    const std::size_t d = t.dimension();
    const auto& e = g.fox.entries;
    Matrix<LaurentPoly> out(e.rows(), e.cols(), LaurentPoly(d));
    for (std::size_t i = 0; i < e.rows(); ++i) {
        for (std::size_t j = 0; j < e.cols(); ++j) {
            for (const auto& [h, c] : e(i, j)) {
                Exponent ex(d, 0);
                for (std::size_t k = 0; k < d; ++k) {
                    Integer s = 0;
                    for (std::size_t c2 = 0; c2 < t.free_rank; ++c2) s += h.free[c2] * t.basis(c2, k);
                    ex[k] = s.get_si();
                }
                out(i, j).add_term(ex, Cyclotomic(Rational(c)) * t.translate.evaluate(h));
            }
        }
    }
    return out;
}

Certification certify_component(const GroupData& g, const TranslatedSubtorus& t, int degree, long m) {
    if (t.free_rank != g.free_rank() || t.translate.torsion.size() != g.abelianization.torsion.size())
        throw DomainError("component dimension mismatch");
    if (!t.translate.exact) throw DomainError("certification requires an exact translate");
    if (degree == 2) require_h2(g);
    const std::size_t d = t.dimension();
    // generic points of a positive-dimensional subtorus are nontrivial
    const long h0 = (d == 0 && t.translate.is_trivial()) ? 1 : 0;
    Certification c;
    if (degree == 0) {
        c.generic_dim = h0;
    } else {
        const std::size_t ub = g.generator_count() - (h0 ? 0 : 1);
        c.generic_rank = d == 0 ? rank_exact(evaluate_fox(g, t.translate), ub) : rank_generic(restricted_fox(g, t), ub);
        c.generic_dim = dim_from_rank(g, degree, c.generic_rank, h0);
    }
    c.status = c.generic_dim >= m ? Status::certified : Status::refuted;
    return c;
}

// ---------------------------------------------------------------------------
// Discovery

namespace {

struct VecHash {
    std::size_t operator()(const std::vector<long>& v) const {
        std::size_t h = 1469598103934665603ull;
        for (long x : v) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ull;
        return h;
    }
};

class Fitter {
public:
    Fitter(const std::vector<TorsionPoint>& hits, std::size_t b, long K, long L)
        : hits_(hits), b_(b), K_(K), L_(L) {
        for (const auto& h : hits) set_.insert(h.num);
    }

    // Greedy growth of the coset through p: add a direction while every
    // scanned point of the enlarged coset is still a hit.
    IntMatrix grow(const TorsionPoint& p) const {
        IntMatrix dirs(0, b_);
        IntMatrix ann = identity_matrix(b_);
        bool extended = true;
        while (extended && dirs.rows() < b_) {
            extended = false;
            for (const auto& h : hits_) {
                if (!same_torsion(p, h) || in_coset(ann, p, h)) continue;
                std::vector<Integer> v = direction(p, h);
                IntMatrix line(0, b_);
                line.append_row(v);
                if (!coset_all_hits(p, line)) continue;
                IntMatrix trial = dirs;
                trial.append_row(v);
                trial = saturate_rows(trial);
                if (!coset_all_hits(p, trial)) continue;
                dirs = trial;
                ann = dirs.rows() ? integer_kernel(dirs) : identity_matrix(b_);
                extended = true;
                break;
            }
        }
        return ann;
    }

    bool in_coset(const IntMatrix& ann, const TorsionPoint& p, const TorsionPoint& h) const {
        for (std::size_t i = 0; i < ann.rows(); ++i) {
            long s = 0;
            for (std::size_t j = 0; j < b_; ++j)
                if (ann(i, j) != 0) s = mod_pos(s + mod_pos(ann(i, j).get_si(), L_) * mod_pos(h.num[j] - p.num[j], L_), L_);
            if (s != 0) return false;
        }
        return true;
    }

private:
    bool same_torsion(const TorsionPoint& p, const TorsionPoint& h) const {
        return std::equal(p.num.begin() + static_cast<long>(b_), p.num.end(), h.num.begin() + static_cast<long>(b_));
    }

    // primitive integer vector along the minimal lift of h - p
    std::vector<Integer> direction(const TorsionPoint& p, const TorsionPoint& h) const {
        std::vector<long> lift(b_);
        long g = 0;
        for (std::size_t j = 0; j < b_; ++j) {
            long d = mod_pos(h.num[j] - p.num[j], L_);
            if (2 * d > L_) d -= L_;
            lift[j] = d;
            g = std::gcd(g, std::abs(d));
        }
        std::vector<Integer> v(b_);
        for (std::size_t j = 0; j < b_; ++j) v[j] = g ? lift[j] / g : 0;
        return v;
    }

    // Every scanned point of p + span(rows) is a hit. Scanned points x on the
    // coset have x - p of order dividing lcm(ord x, ord p), so it suffices to
    // run s over (1/k)Z^d for k = lcm(j, ord p), j <= K.
    bool coset_all_hits(const TorsionPoint& p, const IntMatrix& rows) const {
        const std::size_t d = rows.rows();
        const long op = torsion_point_order(p);
        std::vector<long> ks;
        for (long j = 1; j <= K_; ++j) ks.push_back(std::lcm(j, op));
        std::sort(ks.begin(), ks.end());
        ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
        std::vector<std::vector<long>> dir(d, std::vector<long>(b_));
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t j = 0; j < b_; ++j) dir[r][j] = mod_pos(rows(r, j).get_si(), L_);
        for (long k : ks) {
            const long step = L_ / k;
            std::vector<long> digit(d, 0);
            while (true) {
                TorsionPoint x = p;
                for (std::size_t r = 0; r < d; ++r)
                    if (digit[r])
                        for (std::size_t j = 0; j < b_; ++j)
                            x.num[j] = mod_pos(x.num[j] + digit[r] * step % L_ * dir[r][j], L_);
                if (torsion_point_order(x) <= K_ && !set_.count(x.num)) return false;
                std::size_t r = 0;
                while (r < d && ++digit[r] == k) digit[r++] = 0;
                if (r == d) break;
            }
        }
        return true;
    }

    const std::vector<TorsionPoint>& hits_;
    std::size_t b_;
    long K_, L_;
    std::unordered_set<std::vector<long>, VecHash> set_;
};

bool component_less(const Component& a, const Component& b) {
    const int sa = a.certification.status == Status::certified ? 0 : 1;
    const int sb = b.certification.status == Status::certified ? 0 : 1;
    if (sa != sb) return sa < sb;
    if (a.torus.dimension() != b.torus.dimension()) return a.torus.dimension() > b.torus.dimension();
    const auto ra = to_long_rows(a.torus.annihilator), rb = to_long_rows(b.torus.annihilator);
    if (ra != rb) return ra < rb;
    if (a.torus.translate.torsion != b.torus.translate.torsion)
        return a.torus.translate.torsion < b.torus.translate.torsion;
    return a.torus.translate.angles < b.torus.translate.angles;
}

}  // namespace

std::vector<const Component*> JumpLocusReport::certified() const {
    std::vector<const Component*> out;
    for (const auto& c : components)
        if (c.certification.status == Status::certified) out.push_back(&c);
    return out;
}

JumpLocusReport discover_components(const GroupData& g, int degree, long m, const DiscoveryOptions& opt) {
    if (opt.K < 1) throw DomainError("scan order must be at least 1");
    if (m < 1) throw DomainError("multiplicity must be positive");
    if (degree == 2) require_h2(g);
    if (degree < 0 || degree > 2) throw Refusal("cohomology beyond degree 2 is not computed from a presentation");
    JumpLocusReport report;
    report.degree = degree;
    report.multiplicity = m;
    report.scan_order = opt.K;

    const auto points = enumerate_torsion_points(g.abelianization, opt.K);
    report.scanned = points.size();
    std::vector<long> dims(points.size());
    parallel_for(points.size(), [&](std::size_t i) { dims[i] = cohomology_dim_at(g, points[i], degree); });
    for (std::size_t i = 0; i < points.size(); ++i)
        if (dims[i] >= m) report.members.push_back(points[i]);

    const std::size_t b = g.free_rank();
    const long L = points.empty() ? 1 : points.front().den;
    Fitter fitter(report.members, b, opt.K, L);
    std::vector<bool> explained(report.members.size(), false);
    std::vector<Component> candidates;
    for (std::size_t idx = 0; idx < report.members.size(); ++idx) {
        if (explained[idx]) continue;
        const TorsionPoint& p = report.members[idx];
        const IntMatrix ann = fitter.grow(p);
        Component c;
        c.torus = TranslatedSubtorus::make(b, ann, to_character(p, b));
        for (std::size_t j = 0; j < report.members.size(); ++j) {
            if (fitter.in_coset(c.torus.annihilator, p, report.members[j]) &&
                std::equal(p.num.begin() + static_cast<long>(b), p.num.end(),
                           report.members[j].num.begin() + static_cast<long>(b))) {
                explained[j] = true;
                ++c.hits;
            }
        }
        c.insufficient_sampling = c.torus.dimension() > 0 && opt.K < 3;
        candidates.push_back(std::move(c));
    }
    parallel_for(candidates.size(), [&](std::size_t i) {
        candidates[i].certification = certify_component(g, candidates[i].torus, degree, m);
    });

    // keep maximal certified components, refuted candidates are reported too
    std::vector<Component> kept;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const auto& c = candidates[i];
        bool dominated = false;
        if (c.certification.status == Status::certified) {
            for (std::size_t j = 0; j < candidates.size() && !dominated; ++j) {
                if (i == j || candidates[j].certification.status != Status::certified) continue;
                const bool inside = contains(candidates[j].torus, c.torus);
                const bool same = inside && contains(c.torus, candidates[j].torus);
                dominated = inside && (!same || j < i);
            }
        }
        if (!dominated) kept.push_back(c);
    }
    std::sort(kept.begin(), kept.end(), component_less);
    report.components = std::move(kept);

    for (const auto& p : report.members) {
        const Character chi = to_character(p, b);
        bool covered = false;
        for (const auto* c : report.certified())
            if (c->torus.contains(chi)) {
                covered = true;
                break;
            }
        if (!covered) report.residuals.push_back(p);
    }

    if (opt.numeric_fallback) {
        report.numeric_hits = numeric_scan(g, degree, m, opt.numeric_samples, opt.seed);
        for (auto& h : report.numeric_hits)
            for (const auto* c : report.certified())
                if (c->torus.contains(h.character)) h.explained = true;
    }
    return report;
}

nlohmann::json JumpLocusReport::to_json(const AbelianizationData& a) const {
    nlohmann::json j;
    j["degree"] = degree;
    j["multiplicity"] = multiplicity;
    j["K"] = scan_order;
    j["scanned"] = scanned;
    j["members"] = members.size();
    nlohmann::json comps = nlohmann::json::array();
    for (const auto& c : components) {
        nlohmann::json cj = c.torus.to_json();
        cj["certified"] = c.certification.status == Status::certified;
        cj["status"] = to_string(c.certification.status);
        cj["generic_dim"] = c.certification.generic_dim;
        if (degree == 1) cj["generic_h1"] = c.certification.generic_dim;
        cj["K"] = scan_order;
        cj["hits"] = c.hits;
        cj["insufficient_sampling"] = c.insufficient_sampling;
        cj["torsion_translate"] = c.torus.has_torsion_translate();
        if (auto o = c.torus.translate.order()) cj["translate_order"] = *o;
        comps.push_back(cj);
    }
    j["components"] = comps;
    nlohmann::json res = nlohmann::json::array();
    for (const auto& p : residuals) res.push_back(to_character(p, a.free_rank).to_json());
    j["residuals"] = res;
    if (!numeric_hits.empty()) {
        nlohmann::json nh = nlohmann::json::array();
        for (const auto& h : numeric_hits) {
            nlohmann::json e = h.character.to_json();
            e["dim"] = h.dim;
            e["explained"] = h.explained;
            nh.push_back(e);
        }
        j["numeric_hits"] = nh;
    }
    return j;
}

long count_Ng(const JumpLocusReport& report, long genus) {
    if (genus < 2) throw DomainError("N_g needs g >= 2");
    if (report.degree != 1 || report.multiplicity != 1) throw DomainError("N_g is read off Sigma^1_1");
    long n = 0;
    for (const auto* c : report.certified()) {
        if (static_cast<long>(c->torus.dimension()) != 2 * genus) continue;
        const Character one = Character::trivial(c->torus.free_rank, c->torus.translate.torsion.size());
        if (c->torus.contains(one)) ++n;
    }
    return n;
}

long count_Ng(const GroupData& g, long genus, long K) {
    DiscoveryOptions opt;
    opt.K = K;
    return count_Ng(discover_components(g, 1, 1, opt), genus);
}

std::vector<NumericHit> numeric_scan(const GroupData& g, int degree, long m, std::size_t samples,
                                     std::uint64_t seed) {
    if (degree == 2) require_h2(g);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const auto& a = g.abelianization;
    std::vector<Character> chars;
    for (std::size_t s = 0; s < samples; ++s) {
        Character c;
        c.exact = false;
        for (std::size_t k = 0; k < a.free_rank; ++k) {
            c.numeric_moduli.push_back(1.0);
            c.numeric_angles.push_back(unit(rng));
        }
        for (long d : a.torsion) c.torsion.push_back(frac(Rational(static_cast<long>(rng() % static_cast<std::uint64_t>(d)), d)));
        chars.push_back(std::move(c));
    }
    std::vector<long> dims(chars.size());
    parallel_for(chars.size(), [&](std::size_t i) {
        const long h0 = chars[i].is_trivial() ? 1 : 0;
        dims[i] = degree == 0 ? h0 : dim_from_rank(g, degree, numeric_rank(evaluate_fox_numeric(g, chars[i])), h0);
    });
    std::vector<NumericHit> out;
    for (std::size_t i = 0; i < chars.size(); ++i)
        if (dims[i] >= m) out.push_back({chars[i], dims[i], false});
    return out;
}

// ---------------------------------------------------------------------------
// Covers

TranslatedSubtorus generator_coordinates(const TranslatedSubtorus& t, const AbelianizationData& a) {
    const std::size_t g = a.generator_coords.rows(), b = a.free_rank;
    IntMatrix cfree(g, b);
    for (std::size_t j = 0; j < g; ++j)
        for (std::size_t k = 0; k < b; ++k) cfree(j, k) = a.generator_coords(j, k);
    const IntMatrix image = multiply(cfree, t.basis);  // g x d
    const IntMatrix ann = integer_kernel(image.transposed());
    std::vector<Rational> moduli, angles;
    for (std::size_t j = 0; j < g; ++j) {
        const H1Element h = a.generator(j);
        Rational mod = 1, ang = 0;
        for (std::size_t k = 0; k < b; ++k) {
            if (h.free[k] == 0) continue;
            Rational base = t.translate.moduli[k];
            Rational p = 1;
            for (long e = 0; e < std::abs(h.free[k]); ++e) p *= base;
            mod *= h.free[k] > 0 ? p : 1 / p;
            ang += t.translate.angles[k] * h.free[k];
        }
        for (std::size_t i = 0; i < h.torsion.size(); ++i) ang += t.translate.torsion[i] * h.torsion[i];
        moduli.push_back(mod);
        angles.push_back(frac(ang));
    }
    return TranslatedSubtorus::make(g, ann, Character::with_moduli(moduli, angles));
}

Character character_from_generator_values(const AbelianizationData& a, const std::vector<Rational>& moduli,
                                          const std::vector<Rational>& angles) {
    const std::size_t g = a.generator_coords.rows();
    if (moduli.size() != g || angles.size() != g) throw DomainError("one value per generator expected");
    for (const auto& m : moduli)
        if (m <= 0) throw DomainError("moduli must be positive");
    std::vector<Rational> mod, ang, tors;
    for (std::size_t k = 0; k < a.coordinate_count(); ++k) {
        Rational m = 1, t = 0;
        for (std::size_t j = 0; j < g; ++j) {
            const long e = a.basis_in_generators(k, j).get_si();
            for (long r = 0; r < std::abs(e); ++r) m = e > 0 ? Rational(m * moduli[j]) : Rational(m / moduli[j]);
            t += angles[j] * e;
        }
        if (k < a.free_rank) {
            mod.push_back(m);
            ang.push_back(frac(t));
        } else {
            if (m != 1) throw DomainError("values do not define a character of the group");
            tors.push_back(frac(t));
        }
    }
    const Character chi = Character::with_moduli(mod, ang, tors);
    const auto values = chi.generator_values(a);
    for (std::size_t j = 0; j < g; ++j)
        if (!(values[j] == Cyclotomic(moduli[j]) * Cyclotomic::root_of_unity(angles[j])))
            throw DomainError("values do not define a character of the group");
    return chi;
}

TranslatedSubtorus permute_generator_torus(const TranslatedSubtorus& t, const std::vector<std::size_t>& perm,
                                           const std::vector<int>& signs) {
    const std::size_t g = perm.size();
    if (t.free_rank != g || !t.translate.torsion.empty()) throw DomainError("component dimension mismatch");
    IntMatrix ann(t.annihilator.rows(), g);
    for (std::size_t r = 0; r < ann.rows(); ++r)
        for (std::size_t i = 0; i < g; ++i) ann(r, i) = t.annihilator(r, perm[i]) * signs[i];
    std::vector<Rational> moduli, angles;
    for (std::size_t i = 0; i < g; ++i) {
        const Rational& m = t.translate.moduli[perm[i]];
        moduli.push_back(signs[i] > 0 ? m : Rational(1 / m));
        angles.push_back(frac(t.translate.angles[perm[i]] * signs[i]));
    }
    return TranslatedSubtorus::make(g, ann, Character::with_moduli(moduli, angles));
}

CoverCertificate cover_certificate_for(const GroupData& g, const TranslatedSubtorus& component) {
    if (!component.has_torsion_translate()) throw DomainError("certificate requires torsion translate");
    const auto& a = g.abelianization;
    const unsigned long k = *component.translate.order();
    AbelianQuotient q{{static_cast<long>(k)}, {}};
    for (std::size_t c = 0; c < a.coordinate_count(); ++c) {
        const Rational ang = c < a.free_rank ? component.translate.angles[c] : component.translate.torsion[c - a.free_rank];
        const Rational scaled = ang * static_cast<long>(k);
        if (scaled.get_den() != 1) throw Error("translate order mismatch");
        q.images.push_back({scaled.get_num().get_si() % static_cast<long>(k)});
    }
    CoverCertificate cert;
    cert.source = component;
    cert.cover = reidemeister_schreier(g.presentation, a, q);
    const GroupData cover = GroupData::from(cert.cover.presentation);
    const auto& ac = cover.abelianization;
    const std::size_t gc = cover.generator_count(), d = component.dimension();
    // values of the cover generators along the component: s^(f_i . B)
    IntMatrix fb(gc, d, Integer(0));
    for (std::size_t i = 0; i < gc; ++i) {
        const H1Element h = a.project(cert.cover.generator_words[i]);
        for (std::size_t c = 0; c < a.free_rank; ++c)
            for (std::size_t l = 0; l < d; ++l) fb(i, l) += h.free[c] * component.basis(c, l);
    }
    const IntMatrix coords = multiply(ac.basis_in_generators, fb);  // cover coordinates x d
    for (std::size_t c = ac.free_rank; c < ac.coordinate_count(); ++c)
        for (std::size_t l = 0; l < d; ++l)
            if (coords(c, l) != 0) throw Error("pulled back component moves along torsion");
    IntMatrix free_part(ac.free_rank, d);
    for (std::size_t c = 0; c < ac.free_rank; ++c)
        for (std::size_t l = 0; l < d; ++l) free_part(c, l) = coords(c, l);
    const IntMatrix ann = integer_kernel(free_part.transposed());
    cert.pullback = TranslatedSubtorus::make(ac.free_rank, ann, Character::trivial(ac.free_rank, ac.torsion.size()));
    cert.certification = certify_component(cover, cert.pullback, 1, 1);
    cert.contains_trivial = cert.pullback.contains(Character::trivial(ac.free_rank, ac.torsion.size()));
    return cert;
}

std::optional<CoverCertificate> abelian_cover_certificate(const GroupData& g, const JumpLocusReport& report) {
    if (report.degree != 1) throw DomainError("cover certificates concern Sigma^1");
    const Component* pick = nullptr;
    for (const auto* c : report.certified()) {
        if (c->torus.dimension() == 0) continue;
        if (!pick || (pick->torus.translate.is_trivial() && !c->torus.translate.is_trivial())) pick = c;
    }
    if (!pick) return std::nullopt;
    return cover_certificate_for(g, pick->torus);
}

}  // namespace jumploci
