#include "jumploci/cli_runner.hpp"

#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include "jumploci/alexander_covers.hpp"
#include "jumploci/error.hpp"
#include "jumploci/higgs_model.hpp"
#include "jumploci/jump_loci.hpp"

namespace jumploci {

namespace {

std::string read_file(const std::string& path) {
    if (path.empty()) throw ParseError("missing input file", "command line");
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open input file", path);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else if (c != ' ') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

GroupData load_group(const AnalysisConfig& c) { return GroupData::from(parse_presentation_json(read_file(c.input))); }

nlohmann::json group_json(const GroupData& g) {
    const auto& a = g.abelianization;
    nlohmann::json j;
    j["generators"] = g.presentation.generator_names;
    j["relator_count"] = g.relator_count();
    j["aspherical"] = g.presentation.aspherical;
    j["free_rank"] = a.free_rank;
    j["torsion"] = a.torsion;
    j["generator_coords"] = to_long_rows(a.generator_coords);
    return j;
}

ActionVariant variant_of(const AnalysisConfig& c) {
    if (c.variant == "A") return ActionVariant::A;
    if (c.variant == "B") return ActionVariant::B;
    throw ParseError("variant must be A or B", "--variant");
}

// translate in H_1 coordinates from --moduli/--angles/--torsion
Character coordinate_character(const AnalysisConfig& c, std::size_t free_rank, std::size_t torsion_count) {
    auto angles = c.angles.empty() ? std::vector<Rational>(free_rank, 0) : parse_rational_list(c.angles, "--angles");
    auto moduli = c.moduli.empty() ? std::vector<Rational>(free_rank, 1) : parse_rational_list(c.moduli, "--moduli");
    auto torsion = c.torsion.empty() ? std::vector<Rational>(torsion_count, 0) : parse_rational_list(c.torsion, "--torsion");
    if (angles.size() != free_rank || moduli.size() != free_rank) throw ParseError("expected one value per free coordinate", "--angles/--moduli");
    if (torsion.size() != torsion_count) throw ParseError("expected one value per torsion coordinate", "--torsion");
    for (auto& a : angles) a = frac(a);
    for (auto& t : torsion) t = frac(t);
    return Character::with_moduli(moduli, angles, torsion);
}

nlohmann::json run_analyze(const AnalysisConfig& c) {
    const GroupData g = load_group(c);
    DiscoveryOptions opt;
    opt.K = c.K;
    opt.numeric_fallback = c.numeric_fallback;
    opt.seed = c.seed;
    const auto rep = discover_components(g, c.degree, c.multiplicity, opt);
    return {{"group", group_json(g)}, {"report", rep.to_json(g.abelianization)}};
}

nlohmann::json run_ng(const AnalysisConfig& c) {
    const GroupData g = load_group(c);
    DiscoveryOptions opt;
    opt.K = c.K;
    const auto rep = discover_components(g, 1, 1, opt);
    return {{"N_g", count_Ng(rep, c.genus)}, {"g", c.genus}, {"K", c.K}, {"certified_components", rep.certified().size()}};
}

nlohmann::json run_certify(const AnalysisConfig& c) {
    const GroupData g = load_group(c);
    const auto& a = g.abelianization;
    const auto rows = c.relations.empty() ? std::vector<std::vector<long>>{} : parse_integer_rows(c.relations, "--relations");
    for (const auto& r : rows)
        if (r.size() != a.free_rank) throw ParseError("relation rows need one entry per free coordinate", "--relations");
    const auto t = TranslatedSubtorus::make(a.free_rank, to_int_matrix(rows, a.free_rank),
                                            coordinate_character(c, a.free_rank, a.torsion.size()));
    const auto cert = certify_component(g, t, c.degree, c.multiplicity);
    nlohmann::json j = t.to_json();
    j["certified"] = cert.status == Status::certified;
    j["status"] = to_string(cert.status);
    j["generic_dim"] = cert.generic_dim;
    return {{"group", group_json(g)}, {"component", j}};
}

nlohmann::json run_orbit(const AnalysisConfig& c) {
    const auto angles = parse_rational_list(c.angles, "--angles");
    const auto moduli = c.moduli.empty() ? std::vector<Rational>(angles.size(), 1) : parse_rational_list(c.moduli, "--moduli");
    if (moduli.size() != angles.size()) throw ParseError("moduli and angles differ in length", "--moduli");
    std::vector<Rational> a;
    for (const auto& x : angles) a.push_back(frac(x));
    const auto t = orbit_closure(Character::with_moduli(moduli, a), variant_of(c));
    nlohmann::json j = t.to_json();
    j["unitary_translate"] = t.is_unitary_translate();
    return j;
}

nlohmann::json run_dims(const AnalysisConfig& c) {
    const GroupData g = load_group(c);
    const std::size_t n = g.generator_count();
    const auto angles = c.angles.empty() ? std::vector<Rational>(n, 0) : parse_rational_list(c.angles, "--angles");
    const auto moduli = c.moduli.empty() ? std::vector<Rational>(n, 1) : parse_rational_list(c.moduli, "--moduli");
    const Character chi = character_from_generator_values(g.abelianization, moduli, angles);
    const auto d = twisted_cohomology_dims(g, chi, c.degree == 2);
    nlohmann::json j{{"character", chi.to_json()}, {"h0", d.h0}, {"h1", d.h1}};
    if (d.h2) j["h2"] = *d.h2;
    return j;
}

nlohmann::json run_weights(const AnalysisConfig& c) {
    const GroupData g = load_group(c);
    return {{"group", group_json(g)}, {"weights", weights_and_W(g, c.N, c.K).to_json(g.abelianization)}};
}

nlohmann::json run_finite_cover(const AnalysisConfig& c) {
    const GroupData g = load_group(c);
    const auto rep = finite_cover_check(g, c.N, c.K);
    const auto cover_ab = abelianize(rep.cover.presentation);
    return {{"group", group_json(g)}, {"finite_cover", rep.to_json(g.abelianization, cover_ab)}};
}

nlohmann::json run_cover(const AnalysisConfig& c) {
    const GroupData g = load_group(c);
    DiscoveryOptions opt;
    opt.K = c.K;
    const auto rep = discover_components(g, 1, 1, opt);
    const auto cert = abelian_cover_certificate(g, rep);
    nlohmann::json j{{"group", group_json(g)}};
    if (!cert) {
        j["certificate"] = nullptr;
        return j;
    }
    j["certificate"] = {{"source", cert->source.to_json()},
                        {"cover_degree", cert->cover.degree},
                        {"cover", nlohmann::json::parse(presentation_to_json(cert->cover.presentation))},
                        {"pullback", cert->pullback.to_json()},
                        {"certified", cert->certification.status == Status::certified},
                        {"contains_trivial", cert->contains_trivial}};
    return j;
}

Rational small_rational(std::mt19937_64& rng, long bound) {
    Rational r(1 + static_cast<long>(rng() % bound), 1 + static_cast<long>(rng() % bound));
    r.canonicalize();
    return r;
}

nlohmann::json run_higgs(const AnalysisConfig& c) {
    const ComplexTorusModel x =
        c.input.empty() ? ComplexTorusModel::standard(c.n) : ComplexTorusModel::from_json(nlohmann::json::parse(read_file(c.input)));
    std::mt19937_64 rng(c.seed);
    const std::size_t rank = 2 * x.n;
    long checks = 0, failures = 0, partition_failures = 0;
    std::vector<long> strata(3, 0);
    for (std::size_t s = 0; s < c.samples; ++s) {
        const int stratum = static_cast<int>(s % 3);
        std::vector<Rational> mod(rank, 1), ang(rank, 0);
        if (stratum == 0) {
            for (auto& m : mod) m = small_rational(rng, 50);
            ang[rng() % rank] = Rational(1, 2 + static_cast<long>(rng() % 5));
        } else if (stratum == 1) {
            for (auto& m : mod) m = small_rational(rng, 50);
            mod[rng() % rank] = Rational(2 + static_cast<long>(rng() % 49));
        }
        const Character rho = Character::with_moduli(mod, ang);
        ++strata[static_cast<std::size_t>(stratum)];
        for (std::size_t i = 0; i <= rank; ++i) {
            ++checks;
            if (!verify_higgs_decomposition(x, rho, i).holds()) ++failures;
            for (long m = 1; m <= 2; ++m)
                if (!partition_check(x, rho, i, m).holds()) ++partition_failures;
        }
    }
    return {{"n", x.n},
            {"samples", c.samples},
            {"checks", checks},
            {"strata", {{"nontrivial_unitary", strata[0]}, {"trivial_unitary_nonzero_theta", strata[1]}, {"trivial", strata[2]}}},
            {"decomposition_failures", failures},
            {"partition_failures", partition_failures},
            {"passed", failures == 0 && partition_failures == 0}};
}

}  // namespace

std::vector<Rational> parse_rational_list(const std::string& text, const std::string& what) {
    std::vector<Rational> out;
    if (text.empty()) return out;
    for (const auto& item : split(text, ',')) out.push_back(parse_rational(item, what));
    return out;
}

std::vector<std::vector<long>> parse_integer_rows(const std::string& text, const std::string& what) {
    std::vector<std::vector<long>> rows;
    for (const auto& row : split(text, ';')) {
        std::vector<long> r;
        for (const auto& item : split(row, ',')) {
            std::size_t used = 0;
            long v = 0;
            try {
                v = std::stol(item, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used == 0 || used != item.size()) throw ParseError("not an integer: '" + item + "'", what);
            r.push_back(v);
        }
        rows.push_back(r);
    }
    return rows;
}

nlohmann::json AnalysisConfig::to_json() const {
    return {{"command", command}, {"input", input},   {"i", degree},         {"m", multiplicity},
            {"K", K},             {"g", genus},       {"N", N},              {"variant", variant},
            {"numeric_fallback", numeric_fallback},   {"seed", seed},        {"samples", samples},
            {"n", n},             {"relations", relations}, {"moduli", moduli}, {"angles", angles},
            {"torsion", torsion}};
}

nlohmann::json run_command(const AnalysisConfig& c) {
    if (c.command == "analyze") return run_analyze(c);
    if (c.command == "ng") return run_ng(c);
    if (c.command == "certify") return run_certify(c);
    if (c.command == "orbit") return run_orbit(c);
    if (c.command == "dims") return run_dims(c);
    if (c.command == "weights") return run_weights(c);
    if (c.command == "finite-cover") return run_finite_cover(c);
    if (c.command == "cover") return run_cover(c);
    if (c.command == "higgs") return run_higgs(c);
    throw ParseError("unknown command '" + c.command + "'", "command line");
}

std::string render_report(const AnalysisConfig& c, const nlohmann::json& result) {
    nlohmann::json j{{"version", tool_version}, {"config", c.to_json()}, {"result", result}};
    return j.dump(2) + "\n";
}

std::string summarize(const AnalysisConfig& c, const nlohmann::json& r) {
    std::ostringstream s;
    s << c.command << ": ";
    if (r.contains("refusal")) {
        s << "refused (" << r["refusal"].get<std::string>() << ")";
    } else if (c.command == "analyze") {
        const auto& comps = r["report"]["components"];
        long certified = 0;
        for (const auto& x : comps) certified += x["certified"].get<bool>();
        s << certified << " certified component(s)";
        for (const auto& x : comps)
            if (x["certified"].get<bool>()) s << " [dim " << x["dim"] << "]";
        s << ", " << r["report"]["residuals"].size() << " residual point(s)";
    } else if (c.command == "ng") {
        s << "N_" << c.genus << " = " << r["N_g"];
    } else if (c.command == "certify") {
        s << r["component"]["status"].get<std::string>();
    } else if (c.command == "orbit") {
        s << "closure of dimension " << r["dim"];
    } else if (c.command == "dims") {
        s << "h0 = " << r["h0"] << ", h1 = " << r["h1"];
        if (r.contains("h2")) s << ", h2 = " << r["h2"];
    } else if (c.command == "weights") {
        s << r["weights"]["finiteness"].get<std::string>() << ", " << r["weights"]["W"].size() << " weight(s)";
    } else if (c.command == "finite-cover") {
        s << "cover of degree " << r["finite_cover"]["cover_degree"] << (r["finite_cover"]["passed"].get<bool>() ? ", passed" : ", failed");
    } else if (c.command == "cover") {
        if (r["certificate"].is_null()) s << "no positive-dimensional translated component";
        else s << "cover of degree " << r["certificate"]["cover_degree"];
    } else if (c.command == "higgs") {
        s << r["checks"] << " checks, " << (r["passed"].get<bool>() ? "all passed" : "failures");
    }
    s << "\n";
    return s.str();
}

int run(const AnalysisConfig& c, std::ostream& out, std::ostream& err) {
    nlohmann::json result;
    int code = 0;
    try {
        result = run_command(c);
    } catch (const Refusal& e) {
        err << "refused: " << e.what() << "\n";
        result = {{"refusal", e.what()}};
        code = 2;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const DomainError& e) {
        err << "invalid input: " << e.what() << "\n";
        return 1;
    } catch (const nlohmann::json::exception& e) {
        err << "parse error: " << e.what() << "\n";
        return 1;
    }
    const std::string text = render_report(c, result);
    if (c.output.empty()) {
        out << text;
    } else {
        std::ofstream f(c.output);
        if (!f) {
            err << "cannot write " << c.output << "\n";
            return 1;
        }
        f << text;
        out << summarize(c, result);
    }
    return code;
}

}  // namespace jumploci
