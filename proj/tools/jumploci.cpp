// Command-line front end; see README for the commands.

#include <iostream>

#include <CLI11.hpp>

#include "jumploci/cli_runner.hpp"

int main(int argc, char** argv) {
    jumploci::AnalysisConfig cfg;
    CLI::App app{"Cohomology jump loci of finitely presented groups"};
    app.require_subcommand(1);

    auto common = [&](CLI::App* sub, bool file) {
        if (file) sub->add_option("input", cfg.input, "presentation JSON")->required();
        sub->add_option("--out", cfg.output, "write the report here instead of stdout");
    };
    auto scan = [&](CLI::App* sub) { sub->add_option("--K", cfg.K, "scan torsion characters of order <= K"); };

    auto* analyze = app.add_subcommand("analyze", "discover and certify components of a jump locus");
    common(analyze, true);
    scan(analyze);
    analyze->add_option("--i", cfg.degree, "cohomological degree");
    analyze->add_option("--m", cfg.multiplicity, "multiplicity");
    analyze->add_flag("--numeric-fallback", cfg.numeric_fallback, "also sample random unitary characters");
    analyze->add_option("--seed", cfg.seed, "seed for numeric sampling");

    auto* ng = app.add_subcommand("ng", "count components of dimension 2g through 1");
    common(ng, true);
    scan(ng);
    ng->add_option("--g", cfg.genus, "genus");

    auto* certify = app.add_subcommand("certify", "certify a translated subtorus given in H_1 coordinates");
    common(certify, true);
    certify->add_option("--relations", cfg.relations, "annihilator rows, e.g. \"1,-2;0,1\"");
    certify->add_option("--moduli", cfg.moduli, "translate moduli on the free coordinates");
    certify->add_option("--angles", cfg.angles, "translate angles on the free coordinates");
    certify->add_option("--torsion", cfg.torsion, "translate angles on the torsion coordinates");
    certify->add_option("--i", cfg.degree, "cohomological degree");
    certify->add_option("--m", cfg.multiplicity, "multiplicity");

    auto* orbit = app.add_subcommand("orbit", "closure of an R+ orbit in (C*)^b");
    common(orbit, false);
    orbit->add_option("--moduli", cfg.moduli, "moduli, e.g. 4,2");
    orbit->add_option("--angles", cfg.angles, "angles in turns, e.g. 0,1/3")->required();
    orbit->add_option("--variant", cfg.variant, "A or B")->check(CLI::IsMember({"A", "B"}));

    auto* dims = app.add_subcommand("dims", "twisted cohomology at a character given on the generators");
    common(dims, true);
    dims->add_option("--moduli", cfg.moduli, "chi(x_j) moduli");
    dims->add_option("--angles", cfg.angles, "chi(x_j) angles in turns");
    dims->add_option("--i", cfg.degree, "2 to include h^2 (aspherical inputs only)");

    auto* weights = app.add_subcommand("weights", "weights of the maximal abelian cover and their jump loci");
    common(weights, true);
    scan(weights);
    weights->add_option("--N", cfg.N, "degrees below N");

    auto* finite = app.add_subcommand("finite-cover", "pass to the abelian cover killing finite jump loci");
    common(finite, true);
    scan(finite);
    finite->add_option("--N", cfg.N, "degrees below N");

    auto* cover = app.add_subcommand("cover", "abelian cover certificate for a positive-dimensional component");
    common(cover, true);
    scan(cover);

    auto* higgs = app.add_subcommand("higgs", "local systems against Higgs cohomology on complex tori");
    higgs->add_option("model", cfg.input, "torus model JSON (default: standard lattice)");
    higgs->add_option("--out", cfg.output, "write the report here instead of stdout");
    higgs->add_option("--n", cfg.n, "complex dimension of the standard torus");
    higgs->add_option("--samples", cfg.samples, "number of sampled characters");
    higgs->add_option("--seed", cfg.seed, "sampling seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
    return jumploci::run(cfg, std::cout, std::cerr);
}
