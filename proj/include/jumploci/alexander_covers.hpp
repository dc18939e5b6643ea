#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "jumploci/jump_loci.hpp"

namespace jumploci {

/// Commuting invertible operators M_1..M_b on V = Q(zeta)^n.
struct ModuleAction {
    std::size_t rank = 0;
    std::size_t dimension = 0;
    std::vector<Matrix<Cyclotomic>> actions;

    std::size_t dim() const { return dimension; }
    /// Throws DomainError unless the matrices are square, of equal size,
    /// pairwise commuting and invertible.
    static ModuleAction make(std::vector<Matrix<Cyclotomic>> actions);
    static ModuleAction trivial(std::size_t b, std::size_t dim = 1);
    /// Contragredient action (M_j^{-1})^T.
    ModuleAction dual() const;
};

Matrix<Cyclotomic> inverse(const Matrix<Cyclotomic>& m);

/// All (g - k)-minors of an r x g matrix, each shifted to a polynomial and
/// scaled so its lex-least coefficient is 1; zeros dropped, sorted, unique.
std::vector<LaurentPoly> fitting_generators(const Matrix<LaurentPoly>& m, std::size_t k);

/// Fox matrix over Q(zeta)[H_free] on the slice of Char(G) where the torsion
/// part is the given character.
Matrix<LaurentPoly> alexander_matrix(const GroupData& g, const std::vector<Rational>& torsion_angles);

/// Some v != 0 with M_j v = chi_j v for all j.
bool is_weight(const std::vector<Cyclotomic>& chi, const ModuleAction& v);

/// Cohomology of Z^b with coefficients in V twisted by chi, from the Koszul
/// complex on N_j = chi_j M_j - 1. Entry p is h^p, p = 0..b.
std::vector<long> koszul_cohomology(const ModuleAction& v, const std::vector<Cyclotomic>& chi);

struct VanishingVerdict {
    std::vector<long> dims;
    bool inverse_is_weight = false;
    bool h0_nonzero = false;
    bool all_vanish = false;
    /// H^0 != 0 exactly when chi^{-1} is a weight, and everything vanishes
    /// when it is not.
    bool consistent = false;
};

VanishingVerdict vanishing_check(const ModuleAction& v, const std::vector<Cyclotomic>& chi);

enum class Finiteness { finite, infinite, undetermined };
std::string to_string(Finiteness f);

struct Weight {
    int degree = 0;  // H^degree(X^ab)
    bool exact = true;
    Character character;                             // exact weights
    std::vector<std::complex<double>> values;        // numeric weights: chi(basis_k)
    std::optional<unsigned long> order;
};

struct WeightReport {
    Finiteness finiteness = Finiteness::undetermined;
    std::string reason;
    std::vector<Weight> weights;          // W
    std::vector<Weight> inverse_weights;  // W^{-1}
    long scan_order = 0;
    std::size_t scanned = 0;
    /// torsion points where membership in the union of jump loci and in
    /// W^{-1} disagree
    std::vector<TorsionPoint> mismatches;
    bool identity_holds = false;

    nlohmann::json to_json(const AbelianizationData& a) const;
};

/// Weights of H^i(X^ab, C) for i < N (N in {1, 2}) and the comparison of
/// W^{-1} with the union of the Sigma^i over a torsion scan of order <= K.
WeightReport weights_and_W(const GroupData& g, int N, long K);

/// Finite abelian quotient of H_1 whose kernel is the joint kernel of the
/// given torsion characters.
AbelianQuotient joint_kernel_quotient(const AbelianizationData& a, const std::vector<TorsionPoint>& points);

struct FiniteCoverReport {
    std::vector<TorsionPoint> killed;
    CoverPresentation cover;
    std::size_t scanned = 0;
    std::vector<TorsionPoint> survivors;  // nontrivial members of Sigma(P') in the scan
    bool passed = false;

    nlohmann::json to_json(const AbelianizationData& base, const AbelianizationData& cover_ab) const;
};

/// When the jump loci below N are finite sets of torsion points, passes to the
/// abelian cover on which all of them die and rescans it. Refusal when a
/// positive-dimensional component exists.
FiniteCoverReport finite_cover_check(const GroupData& g, int N, long K);

}  // namespace jumploci
