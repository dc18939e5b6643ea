// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Every check is exact; the only tolerance is the 1e-12 used to read off the
// absolute value of a cyclotomic number under a complex embedding.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "jumploci/alexander_covers.hpp"
#include "jumploci/cli_runner.hpp"
#include "jumploci/error.hpp"
#include "jumploci/higgs_model.hpp"
#include "jumploci/jump_loci.hpp"
#include "jumploci/parallel.hpp"

using namespace jumploci;

namespace {

std::string corpus_dir = JUMPLOCI_CORPUS_DIR;

constexpr double unit_modulus_tol = 1e-12;

Rational q(long p, long r = 1) {
    Rational x(p, r);
    x.canonicalize();
    return x;
}

std::string corpus_path(const std::string& name) { return corpus_dir + "/" + name + ".json"; }

FinitePresentation presentation(const std::string& name) {
    std::ifstream in(corpus_path(name));
    if (!in) throw std::runtime_error("missing corpus file " + corpus_path(name));
    std::stringstream s;
    s << in.rdbuf();
    return parse_presentation_json(s.str());
}

GroupData group(const std::string& name) { return GroupData::from(presentation(name)); }

// Collects failures of one criterion; the first few are echoed.
struct Criterion {
    std::vector<std::string> failures;
    std::size_t checks = 0;

    void expect(bool ok, const std::string& what) {
        ++checks;
        if (!ok) failures.push_back(what);
    }
};

bool report(int number, const std::string& title, const std::function<void(Criterion&)>& body) {
    Criterion c;
    try {
        body(c);
    } catch (const std::exception& e) {
        c.failures.push_back(std::string("exception: ") + e.what());
    }
    const bool pass = c.failures.empty();
    std::cout << (pass ? "PASS" : "FAIL") << " " << number << " " << title << " (" << c.checks << " checks";
    if (!pass) std::cout << ", " << c.failures.size() << " failed";
    std::cout << ")\n";
    for (std::size_t i = 0; i < std::min<std::size_t>(c.failures.size(), 5); ++i) std::cout << "    " << c.failures[i] << "\n";
    std::cout.flush();
    return pass;
}

long binom(long n, long k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

bool is_trivial_on(const std::vector<Cyclotomic>& values, std::size_t from, std::size_t to) {
    for (std::size_t k = from; k < to; ++k)
        if (!values[k].is_one()) return false;
    return true;
}

std::vector<std::size_t> dims_through_one(const JumpLocusReport& r, std::size_t free_rank, std::size_t torsion) {
    std::vector<std::size_t> dims;
    for (const auto* c : r.certified())
        if (c->torus.dimension() > 0 && c->torus.contains(Character::trivial(free_rank, torsion)))
            dims.push_back(c->torus.dimension());
    std::sort(dims.begin(), dims.end());
    return dims;
}

// 1. genus 2 surface
void surface_suite(Criterion& c) {
    for (long genus : {2L, 3L}) {
        const auto g = group("surface" + std::to_string(genus));
        const std::size_t b = 2 * static_cast<std::size_t>(genus);
        const auto d = twisted_cohomology_dims(g, Character::trivial(b), true);
        c.expect(d.h0 == 1 && d.h1 == 2 * genus && d.h2 == 1L, "trivial character dims, genus " + std::to_string(genus));

        auto pts = enumerate_torsion_points(g.abelianization, 6);
        pts.erase(std::remove_if(pts.begin(), pts.end(), [&](const TorsionPoint& p) { return to_character(p, b).is_trivial(); }),
                  pts.end());
        std::mt19937_64 rng(static_cast<std::uint64_t>(genus));
        std::shuffle(pts.begin(), pts.end(), rng);
        for (std::size_t k = 0; k < 25; ++k) {
            const auto chi = to_character(pts[k], b);
            const auto e = twisted_cohomology_dims(g, chi, true);
            // Euler characteristic 2 - 2g with h^0 = h^2 = 0 off the trivial character
            c.expect(e.h0 == 0 && e.h1 == 2 * genus - 2 && e.h2 == 0L, "nontrivial torsion character " + std::to_string(k));
        }
    }
    const auto g = group("surface2");
    DiscoveryOptions opt;
    opt.K = 3;
    const auto r = discover_components(g, 1, 1, opt);
    const auto cert = r.certified();
    c.expect(cert.size() == 1 && cert[0]->torus.dimension() == 4 && cert[0]->torus.translate.is_trivial(),
             "K=3 discovery certifies exactly the full torus");
    c.expect(r.residuals.empty(), "no residual points");
    c.expect(count_Ng(r, 2) == 1, "N_2 = 1");
    c.expect(count_Ng(r, 3) == 0, "N_3 = 0");
}

// 2. product of surface groups of genus 2 and 3
void product_suite(Criterion& c) {
    const auto g = group("surface2_x_surface3");
    const auto& a = g.abelianization;
    c.expect(a.free_rank == 10 && a.torsion.empty(), "H_1 = Z^10");
    DiscoveryOptions opt;
    opt.K = 3;
    const auto r = discover_components(g, 1, 1, opt);
    c.expect(dims_through_one(r, 10, 0) == std::vector<std::size_t>{4, 6}, "positive-dimensional components through 1 have dims 4, 6");
    c.expect(count_Ng(r, 2) == 1, "N_2 = 1");
    c.expect(count_Ng(r, 3) == 1, "N_3 = 1");
    c.expect(count_Ng(r, 4) == 0, "N_4 = 0");

    // Kunneth: h^1(chi1 x chi2) = h^1(chi1) h^0(chi2) + h^0(chi1) h^1(chi2)
    const auto pts = enumerate_torsion_points(a, 3);
    std::vector<char> bad(pts.size(), 0);
    parallel_for(pts.size(), [&](std::size_t i) {
        const auto values = to_character(pts[i], 10).generator_values(a);
        const bool t1 = is_trivial_on(values, 0, 4), t2 = is_trivial_on(values, 4, 10);
        const long h1a = 2 + 2 * t1, h1b = 4 + 2 * t2;
        const long expected = h1a * t2 + t1 * h1b;
        bad[i] = cohomology_dim_at(g, pts[i], 1) != expected;
    });
    for (std::size_t i = 0; i < pts.size(); ++i)
        c.expect(!bad[i], "Kunneth mismatch at " + to_character(pts[i], 10).to_json().dump());
}

// 3. free abelian groups
void abelian_suite(Criterion& c) {
    for (int b = 2; b <= 4; ++b) {
        const auto g = group("z" + std::to_string(b));
        DiscoveryOptions opt;
        opt.K = 4;
        const auto r = discover_components(g, 1, 1, opt);
        const auto cert = r.certified();
        const std::string tag = "Z^" + std::to_string(b);
        c.expect(cert.size() == 1 && cert[0]->torus.dimension() == 0 && cert[0]->torus.translate.is_trivial(),
                 tag + ": only the trivial character is certified");
        c.expect(r.members.size() == 1, tag + ": exactly one scanned member, " + std::to_string(r.members.size()) + " found");
        c.expect(r.residuals.empty(), tag + ": no residuals");
        // orders 1..4: killed by 4 or by 3, and only 1 is killed by both
        const Integer expected = count_killed_by(g.abelianization, 4) + count_killed_by(g.abelianization, 3) - 1;
        c.expect(r.scanned == Integer(expected).get_ui(), tag + ": scan covers every character of order <= 4");
        if (b == 4) {
            c.expect(count_Ng(r, 2) == 0, "N_2(Z^4) = 0");
            c.expect(count_Ng(r, 3) == 0, "N_3(Z^4) = 0");
        }
    }
}

// rank of the multiplicative group generated by the moduli
std::size_t log_rank(const std::vector<Rational>& moduli) {
    std::vector<std::map<Integer, Rational>> rows;
    std::set<Integer> primes;
    for (const auto& m : moduli) {
        rows.push_back(LogReal::log_of(m).terms);
        for (const auto& [p, _] : rows.back()) primes.insert(p);
    }
    Matrix<Rational> mat(rows.size(), primes.size());
    std::size_t j = 0;
    for (const auto& p : primes) {
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (auto it = rows[i].find(p); it != rows[i].end()) mat(i, j) = it->second;
        ++j;
    }
    return rank_rational(mat);
}

// 4. orbit closures
void orbit_suite(Criterion& c) {
    std::mt19937_64 rng(4);
    auto small = [&] { return q(1 + static_cast<long>(rng() % 50), 1 + static_cast<long>(rng() % 50)); };
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t b = 1 + rng() % 4;
        std::vector<Rational> mod, ang;
        for (std::size_t j = 0; j < b; ++j) {
            mod.push_back(small());
            const long den = 1 + static_cast<long>(rng() % 12);
            ang.push_back(q(static_cast<long>(rng() % den), den));
        }
        const Character chi = Character::with_moduli(mod, ang);
        const auto t = orbit_closure(chi, ActionVariant::B);
        const std::string tag = "trial " + std::to_string(trial);
        for (long s = 1; s <= 10; ++s)
            c.expect(t.contains(rplus_act(q(s), chi, ActionVariant::B).character), tag + ": misses orbit point " + std::to_string(s));
        std::vector<Rational> par;
        for (std::size_t k = 0; k < t.dimension(); ++k) par.push_back(small());
        const Character p = subtorus_point(t, par);
        c.expect(t.contains(p), tag + ": parametrised point");
        for (long s = 2; s <= 4; ++s)
            c.expect(t.contains(rplus_act(q(s), p, ActionVariant::B).character), tag + ": not action-stable");
        c.expect(t.is_unitary_translate(), tag + ": translate not unitary");
        for (const auto& angle : t.translate.angles)
            c.expect(is_root_of_unity(Cyclotomic::root_of_unity(angle)).is_root, tag + ": translate coordinate not a root of unity");
        // minimality: the closure of t -> |chi|^t has the rank of the moduli group
        c.expect(t.dimension() == log_rank(mod), tag + ": dimension differs from the rank of the moduli");
    }
    // the printed action fixes chi = (2), so its closure is a point that is not
    // a unitary translate; the expected shape must fail there
    const Character two = Character::with_moduli({q(2)}, {q(0)});
    const auto a = orbit_closure(two, ActionVariant::A);
    c.expect(a.dimension() == 0 && !a.is_unitary_translate(), "variant A closure of (2) is a non-unitary point");
    c.expect(rplus_act(q(3), two, ActionVariant::A).character == two, "variant A fixes (2)");
}

Character random_rho(std::mt19937_64& rng, std::size_t rank, int stratum) {
    std::vector<Rational> mod(rank, q(1)), ang(rank, q(0));
    if (stratum == 0) {
        for (auto& a : ang) a = q(static_cast<long>(rng() % 12), 12);
        ang[rng() % rank] = q(1, 2 + static_cast<long>(rng() % 9));
        for (auto& m : mod) m = q(1 + static_cast<long>(rng() % 20), 1 + static_cast<long>(rng() % 20));
    } else if (stratum == 1) {
        for (auto& m : mod) m = q(1 + static_cast<long>(rng() % 20), 1 + static_cast<long>(rng() % 20));
        mod[rng() % rank] = q(2 + static_cast<long>(rng() % 30));
    }
    return Character::with_moduli(mod, ang);
}

// 5. local systems against Higgs cohomology
void higgs_suite(Criterion& c) {
    const std::vector<std::pair<std::string, ComplexTorusModel>> models{
        {"n=1", ComplexTorusModel::standard(1)},
        {"n=2", ComplexTorusModel::standard(2)},
        {"n=2 skew", ComplexTorusModel::make({{q(1), q(0)}, {q(0), q(1)}, {q(1, 2), q(1, 3)}, {q(0), q(-1)}},
                                             {{q(0), q(0)}, {q(1), q(0)}, {q(2), q(0)}, {q(1), q(1)}})}};
    std::mt19937_64 rng(5);
    for (const auto& [name, x] : models) {
        const std::size_t rank = 2 * x.n;
        std::vector<int> seen(3, 0);
        for (int s = 0; s < 200; ++s) {
            const int stratum = s % 3;
            const Character rho = random_rho(rng, rank, stratum);
            const auto h = psi(x, rho);
            const bool chi_trivial = h.chi.is_trivial();
            const int actual = !chi_trivial ? 0 : (h.theta_zero() ? 2 : 1);
            c.expect(actual == stratum, name + ": sample landed in the wrong stratum");
            ++seen[static_cast<std::size_t>(actual)];
            for (std::size_t i = 0; i <= rank; ++i) {
                const auto d = verify_higgs_decomposition(x, rho, i);
                c.expect(d.holds(), name + ": decomposition fails at i=" + std::to_string(i));
                if (stratum == 2) {
                    long sum = 0;
                    for (std::size_t p = 0; p <= i; ++p) sum += binom(static_cast<long>(x.n), static_cast<long>(p)) * binom(static_cast<long>(x.n), static_cast<long>(i - p));
                    c.expect(sum == binom(static_cast<long>(rank), static_cast<long>(i)) && d.lhs == sum,
                             name + ": binomial identity at rho = 1, i=" + std::to_string(i));
                }
                for (long m = 1; m <= 3; ++m)
                    c.expect(partition_check(x, rho, i, m).holds(), name + ": partition check, i=" + std::to_string(i));
            }
        }
        c.expect(seen[0] > 0 && seen[1] > 0 && seen[2] > 0, name + ": a stratum was never sampled");
    }
}

Matrix<Cyclotomic> multiply(const Matrix<Cyclotomic>& a, const Matrix<Cyclotomic>& b) {
    Matrix<Cyclotomic> r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k)
            if (!a(i, k).is_zero())
                for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += a(i, k) * b(k, j);
    return r;
}

Matrix<Cyclotomic> matrix_power(const Matrix<Cyclotomic>& m, long e) {
    Matrix<Cyclotomic> base = e < 0 ? inverse(m) : m, r(m.rows(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) r(i, i) = Cyclotomic(1);
    for (long k = 0; k < std::abs(e); ++k) r = multiply(r, base);
    return r;
}

// 6. vanishing statement, W identity, finite cover
void weights_suite(Criterion& c) {
    // blocks: a monic polynomial given by its companion matrix and its roots
    struct Block {
        std::vector<long> poly;  // c_0 .. c_{d-1} of x^d + ... (monic)
        std::vector<Cyclotomic> roots;
    };
    const std::vector<Block> blocks{
        {{-2}, {Cyclotomic(2)}},
        {{1}, {Cyclotomic(-1)}},
        {{-1}, {Cyclotomic(1)}},
        {{1, 0}, {Cyclotomic::zeta(4), Cyclotomic::zeta(4, 3)}},
        {{1, 1}, {Cyclotomic::zeta(3), Cyclotomic::zeta(3, 2)}},
        {{1, -1}, {Cyclotomic::zeta(6), Cyclotomic::zeta(6, 5)}},
        {{6, -5}, {Cyclotomic(2), Cyclotomic(3)}},
        {{-3, -2}, {Cyclotomic(-1), Cyclotomic(3)}},
    };
    auto companion = [](const std::vector<long>& poly) {
        const std::size_t d = poly.size();
        Matrix<Cyclotomic> m(d, d);
        for (std::size_t i = 1; i < d; ++i) m(i, i - 1) = Cyclotomic(1);
        for (std::size_t i = 0; i < d; ++i) m(i, d - 1) = Cyclotomic(-poly[i]);
        return m;
    };
    std::mt19937_64 rng(6);
    const std::vector<Cyclotomic> pool{Cyclotomic(1), Cyclotomic(-1), Cyclotomic(2), Cyclotomic(q(1, 2)), Cyclotomic(3),
                                       Cyclotomic(q(1, 3)), Cyclotomic::zeta(3), Cyclotomic::zeta(4), Cyclotomic::zeta(6, 5)};
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t b = 1 + rng() % 3;
        std::vector<std::size_t> chosen;
        std::size_t dim = 0;
        while (true) {
            const std::size_t k = rng() % blocks.size();
            if (dim + blocks[k].poly.size() > 4) break;
            chosen.push_back(k);
            dim += blocks[k].poly.size();
            if (rng() % 3 == 0) break;
        }
        // M_j acts on block k as C_k^{e_jk}
        std::vector<std::vector<long>> e(b, std::vector<long>(chosen.size()));
        for (auto& row : e)
            for (auto& x : row) x = static_cast<long>(rng() % 4) - 1;
        std::vector<Matrix<Cyclotomic>> ops;
        std::set<std::vector<std::string>> spectrum;
        for (std::size_t j = 0; j < b; ++j) {
            Matrix<Cyclotomic> m(dim, dim);
            std::size_t off = 0;
            for (std::size_t k = 0; k < chosen.size(); ++k) {
                const auto blk = matrix_power(companion(blocks[chosen[k]].poly), e[j][k]);
                for (std::size_t r = 0; r < blk.rows(); ++r)
                    for (std::size_t s = 0; s < blk.cols(); ++s) m(off + r, off + s) = blk(r, s);
                off += blk.rows();
            }
            ops.push_back(m);
        }
        // joint eigenvalues by construction: (r^{e_1k}, ..., r^{e_bk}) over roots r of block k
        for (std::size_t k = 0; k < chosen.size(); ++k)
            for (const auto& root : blocks[chosen[k]].roots) {
                std::vector<std::string> w;
                for (std::size_t j = 0; j < b; ++j) w.push_back(root.pow(e[j][k]).canonical().to_string());
                spectrum.insert(w);
            }
        const auto v = ModuleAction::make(ops);
        for (int probe = 0; probe < 6; ++probe) {
            std::vector<Cyclotomic> chi(b);
            if (probe % 2 == 0) {
                // chi^{-1} a joint eigenvalue
                const std::size_t k = rng() % chosen.size();
                const auto& roots = blocks[chosen[k]].roots;
                const auto& root = roots[rng() % roots.size()];
                for (std::size_t j = 0; j < b; ++j) chi[j] = root.pow(-e[j][k]);
            } else {
                for (auto& x : chi) x = pool[rng() % pool.size()];
            }
            std::vector<std::string> inv;
            for (const auto& x : chi) inv.push_back(x.inverse().canonical().to_string());
            const bool brute = spectrum.count(inv) > 0;
            const auto verdict = vanishing_check(v, chi);
            const std::string tag = "action " + std::to_string(trial) + " probe " + std::to_string(probe);
            c.expect(verdict.inverse_is_weight == brute, tag + ": weight test disagrees with the joint spectrum");
            c.expect(verdict.h0_nonzero == brute, tag + ": H^0 disagrees with the joint spectrum");
            c.expect(verdict.all_vanish == !brute, tag + ": vanishing disagrees with the joint spectrum");
            c.expect(verdict.consistent, tag + ": verdict inconsistent");
        }
    }
    for (const char* name : {"z1", "z2", "z3_plus_z"}) {
        const auto g = group(name);
        const auto r = weights_and_W(g, 2, 6);
        c.expect(r.finiteness == Finiteness::finite, std::string(name) + ": Alexander module should be finite");
        c.expect(r.identity_holds && r.mismatches.empty(), std::string(name) + ": union of jump loci differs from W^-1");
    }
    const auto z3z = group("z3_plus_z");
    const auto fc = finite_cover_check(z3z, 2, 6);
    c.expect(fc.passed && fc.survivors.empty(), "finite cover of Z/3 + Z keeps a nontrivial jump");
}

// 7. roots of unity
void kronecker_suite(Criterion& c) {
    for (unsigned long n = 1; n <= 24; ++n)
        for (long j = 0; j < static_cast<long>(n); ++j) {
            const auto z = Cyclotomic::zeta(n, j);
            const unsigned long ord = n / std::gcd(n, static_cast<unsigned long>(j));
            const auto t = is_root_of_unity(z);
            c.expect(t.is_root && t.order == ord, "zeta_" + std::to_string(n) + "^" + std::to_string(j));
            // -zeta_n^j = zeta_2n^(2j + n)
            const unsigned long m = 2 * n, k = static_cast<unsigned long>(2 * j) + n;
            const auto tn = is_root_of_unity(-z);
            c.expect(tn.is_root && tn.order == m / std::gcd(m, k), "-zeta_" + std::to_string(n) + "^" + std::to_string(j));
        }
    // cyclotomic units (1 - zeta^a) / (1 - zeta) times a root of unity; non-torsion
    // is confirmed independently by an embedding of absolute value != 1
    std::mt19937_64 rng(7);
    int built = 0;
    for (unsigned long n : {5ul, 7ul, 8ul, 9ul, 11ul, 12ul, 13ul, 15ul, 16ul, 20ul, 21ul, 24ul}) {
        int here = 0;
        for (long a = 2; a < static_cast<long>(n) && built < 20 && here < 2; ++a) {
            if (std::gcd(static_cast<unsigned long>(a), n) != 1 || a == static_cast<long>(n) - 1) continue;
            const Cyclotomic u = (Cyclotomic(1) - Cyclotomic::zeta(n, a)) / (Cyclotomic(1) - Cyclotomic::zeta(n)) *
                                 Cyclotomic::zeta(n, static_cast<long>(rng() % n));
            bool off_circle = false;
            for (long s = 1; s < static_cast<long>(n); ++s)
                if (std::gcd(static_cast<unsigned long>(s), n) == 1)
                    off_circle = off_circle || std::abs(std::abs(u.embed(s)) - 1.0) > unit_modulus_tol;
            if (!off_circle) continue;
            ++built;
            ++here;
            const auto t = is_root_of_unity(u);
            c.expect(!t.is_root && !t.order, "unit " + u.to_string() + " accepted");
        }
    }
    c.expect(built == 20, "only " + std::to_string(built) + " non-torsion units constructed");
}

const std::vector<std::string> corpus_groups{"surface2",  "surface3",        "free2",          "free3",
                                             "z1",        "z2",              "z3",             "z4",
                                             "z3_plus_z", "surface2_x_z2",   "surface2_free_z2", "torsion_free_product",
                                             "trefoil",   "surface2_x_surface3"};

// 8. reports depend only on the group
void invariance_suite(Criterion& c) {
    std::mt19937_64 rng(8);
    for (const auto& name : corpus_groups) {
        const auto p = presentation(name);
        const auto g = GroupData::from(p);
        DiscoveryOptions opt;
        opt.K = name == "surface2_x_surface3" ? 2 : 3;
        const auto base = discover_components(g, 1, 1, opt);
        std::vector<TranslatedSubtorus> base_tori;
        for (const auto* x : base.certified()) base_tori.push_back(generator_coordinates(x->torus, g.abelianization));
        for (int t = 0; t < 10; ++t) {
            std::vector<std::size_t> perm(p.generator_count());
            std::iota(perm.begin(), perm.end(), 0);
            std::shuffle(perm.begin(), perm.end(), rng);
            std::vector<int> signs;
            for (std::size_t i = 0; i < perm.size(); ++i) signs.push_back(rng() % 2 ? 1 : -1);
            const auto g2 = GroupData::from(tietze_permute(p, perm, signs));
            const auto other = discover_components(g2, 1, 1, opt);
            const std::string tag = name + " variant " + std::to_string(t);
            c.expect(other.members.size() == base.members.size(), tag + ": member counts differ");
            c.expect(other.residuals.size() == base.residuals.size(), tag + ": residual counts differ");
            std::vector<std::string> lhs, rhs;
            for (const auto& x : base_tori) lhs.push_back(permute_generator_torus(x, perm, signs).to_json().dump());
            for (const auto* x : other.certified()) rhs.push_back(generator_coordinates(x->torus, g2.abelianization).to_json().dump());
            std::sort(lhs.begin(), lhs.end());
            std::sort(rhs.begin(), rhs.end());
            c.expect(lhs == rhs, tag + ": certified components differ after the coordinate change");
        }
    }
}

// 9. byte-identical reports across runs and worker counts
void determinism_suite(Criterion& c) {
    std::vector<AnalysisConfig> configs;
    for (const auto& name : corpus_groups) {
        AnalysisConfig a;
        a.command = "analyze";
        a.input = corpus_path(name);
        a.K = name == "surface2_x_surface3" ? 2 : 3;
        configs.push_back(a);
    }
    for (const char* cmd : {"weights", "finite-cover"})
        for (const char* name : {"z1", "z2", "z3_plus_z", "trefoil"}) {
            AnalysisConfig a;
            a.command = cmd;
            a.input = corpus_path(name);
            configs.push_back(a);
        }
    AnalysisConfig numeric;
    numeric.command = "analyze";
    numeric.input = corpus_path("surface2");
    numeric.K = 2;
    numeric.numeric_fallback = true;
    numeric.seed = 99;
    configs.push_back(numeric);
    AnalysisConfig ng;
    ng.command = "ng";
    ng.input = corpus_path("surface2_x_z2");
    ng.K = 3;
    configs.push_back(ng);
    AnalysisConfig cover;
    cover.command = "cover";
    cover.input = corpus_path("surface2_free_z2");
    cover.K = 3;
    configs.push_back(cover);
    AnalysisConfig higgs;
    higgs.command = "higgs";
    higgs.n = 2;
    higgs.samples = 30;
    configs.push_back(higgs);
    AnalysisConfig orbit;
    orbit.command = "orbit";
    orbit.moduli = "4,2,6";
    orbit.angles = "1/3,0,1/2";
    configs.push_back(orbit);

    auto run_all = [&](const char* workers) {
        setenv("JUMPLOCI_WORKERS", workers, 1);
        std::vector<std::string> out;
        for (const auto& cfg : configs) {
            std::ostringstream o, e;
            const int code = run(cfg, o, e);
            out.push_back(std::to_string(code) + "\n" + o.str());
        }
        return out;
    };
    const char* saved = std::getenv("JUMPLOCI_WORKERS");
    const std::string restore = saved ? saved : "";
    const auto first = run_all("1");
    const auto second = run_all("4");
    if (restore.empty()) unsetenv("JUMPLOCI_WORKERS");
    else setenv("JUMPLOCI_WORKERS", restore.c_str(), 1);
    for (std::size_t i = 0; i < configs.size(); ++i) {
        const std::string tag = configs[i].command + " " + configs[i].input;
        c.expect(first[i].rfind("0\n", 0) == 0, tag + ": run failed");
        c.expect(first[i] == second[i], tag + ": reports differ");
    }
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) corpus_dir = argv[1];
    bool ok = true;
    ok &= report(1, "surface group: dims, discovery, N_g", surface_suite);
    ok &= report(2, "product of surface groups: components 4 and 6, Kunneth", product_suite);
    ok &= report(3, "free abelian groups: jump locus is {1}", abelian_suite);
    ok &= report(4, "orbit closures and the printed action", orbit_suite);
    ok &= report(5, "local systems against Higgs cohomology", higgs_suite);
    ok &= report(6, "vanishing, weights, finite cover", weights_suite);
    ok &= report(7, "roots of unity", kronecker_suite);
    ok &= report(8, "invariance under Tietze moves", invariance_suite);
    ok &= report(9, "determinism", determinism_suite);
    return ok ? 0 : 1;
}
