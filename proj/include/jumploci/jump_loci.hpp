#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "jumploci/character_torus.hpp"
#include "jumploci/exact_scalars.hpp"
#include "jumploci/presentation.hpp"

namespace jumploci {

struct ScanKernel;

/// A presentation together with its abelianization and Fox matrix.
struct GroupData {
    FinitePresentation presentation;
    AbelianizationData abelianization;
    AlexanderMatrix fox;
    std::shared_ptr<const ScanKernel> kernel;  // flattened Fox data for torsion scans

    static GroupData from(FinitePresentation p);
    std::size_t generator_count() const { return presentation.generator_count(); }
    std::size_t relator_count() const { return presentation.relator_count(); }
    std::size_t free_rank() const { return abelianization.free_rank; }
};

/// Cochain complex C^0 -> C^1 -> C^2 of the presentation 2-complex with
/// coefficients twisted by chi.
struct TwistedComplex {
    Character character;
    Matrix<Cyclotomic> d0;  // 1 x g, entries chi(x_j) - 1
    Matrix<Cyclotomic> d1;  // r x g, Fox matrix at chi
    bool degree2 = false;

    static TwistedComplex build(const GroupData& g, const Character& chi);
};

Matrix<Cyclotomic> evaluate_fox(const GroupData& g, const Character& chi);
Matrix<std::complex<double>> evaluate_fox_numeric(const GroupData& g, const Character& chi);

struct CohomologyDims {
    long h0 = 0;
    long h1 = 0;
    std::optional<long> h2;
};

/// Throws Refusal("H² undefined for this input") if degree 2 is requested on a
/// presentation not flagged aspherical.
CohomologyDims twisted_cohomology_dims(const GroupData& g, const Character& chi, bool want_h2 = false);
long cohomology_dim(const GroupData& g, const Character& chi, int degree);
bool sigma_membership(const GroupData& g, const Character& chi, int degree, long m);

/// Cohomology dimension at a torsion point, via a mod-p rank that settles most
/// points without exact arithmetic.
long cohomology_dim_at(const GroupData& g, const TorsionPoint& p, int degree);

enum class Status { certified, candidate, refuted };
std::string to_string(Status s);

struct Certification {
    Status status = Status::refuted;
    std::size_t generic_rank = 0;
    long generic_dim = 0;  // generic h^i along the component
};

/// Substitutes the monomial parametrisation of T into the Fox matrix and
/// decides from the generic rank whether h^i >= m holds identically on T.
Certification certify_component(const GroupData& g, const TranslatedSubtorus& t, int degree, long m);

/// The Fox matrix restricted to T as a matrix over Laurent polynomials in the
/// subtorus parameters.
Matrix<LaurentPoly> restricted_fox(const GroupData& g, const TranslatedSubtorus& t);

struct Component {
    TranslatedSubtorus torus;
    Certification certification;
    bool insufficient_sampling = false;
    std::size_t hits = 0;  // scanned members lying on it
};

struct NumericHit {
    Character character;
    long dim = 0;
    bool explained = false;
};

struct JumpLocusReport {
    int degree = 1;
    long multiplicity = 1;
    long scan_order = 0;
    std::size_t scanned = 0;
    std::vector<TorsionPoint> members;
    std::vector<Component> components;  // certified first, canonical order
    std::vector<TorsionPoint> residuals;
    std::vector<NumericHit> numeric_hits;

    std::vector<const Component*> certified() const;
    nlohmann::json to_json(const AbelianizationData& a) const;
};

struct DiscoveryOptions {
    long K = 6;
    bool numeric_fallback = false;
    std::size_t numeric_samples = 200;
    std::uint64_t seed = 1;
};

JumpLocusReport discover_components(const GroupData& g, int degree, long m, const DiscoveryOptions& opt);

/// Number of certified 2g-dimensional components of Sigma^1_1 through 1.
long count_Ng(const JumpLocusReport& report, long genus);
long count_Ng(const GroupData& g, long genus, long K);

/// Random unitary characters whose numerically computed h^i reaches m
/// (SVD rank, relative tolerance 1e-8).
std::vector<NumericHit> numeric_scan(const GroupData& g, int degree, long m, std::size_t samples,
                                     std::uint64_t seed);

struct CoverCertificate {
    CoverPresentation cover;
    TranslatedSubtorus source;    // component of Sigma^1(P)
    TranslatedSubtorus pullback;  // its pull back to Char(P')
    Certification certification;
    bool contains_trivial = false;
};

/// Picks a positive-dimensional certified component (nontrivial translate
/// preferred), builds the abelian cover on which its translate dies and pulls
/// the component back. nullopt when no positive-dimensional component exists.
std::optional<CoverCertificate> abelian_cover_certificate(const GroupData& g, const JumpLocusReport& report);
CoverCertificate cover_certificate_for(const GroupData& g, const TranslatedSubtorus& component);

/// The component as a translated subtorus of (C*)^g in generator-value
/// coordinates, so that presentations of one group can be compared.
TranslatedSubtorus generator_coordinates(const TranslatedSubtorus& t, const AbelianizationData& a);

/// Character with chi(x_j) = moduli_j exp(2 pi i angles_j) on the generators.
/// DomainError when these values do not kill the relators.
Character character_from_generator_values(const AbelianizationData& a, const std::vector<Rational>& moduli,
                                          const std::vector<Rational>& angles);

/// Coordinate change on (C*)^g matching tietze_permute(perm, signs).
TranslatedSubtorus permute_generator_torus(const TranslatedSubtorus& t, const std::vector<std::size_t>& perm,
                                           const std::vector<int>& signs);

/// Worker count from JUMPLOCI_WORKERS (default: hardware concurrency).
std::size_t worker_count();

}  // namespace jumploci
