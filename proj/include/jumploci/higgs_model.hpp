#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "jumploci/character_torus.hpp"
#include "jumploci/exact_scalars.hpp"

namespace jumploci {

/// Real number sum_p c_p log p with rational c_p over primes p (exact).
struct LogReal {
    std::map<Integer, Rational> terms;

    static LogReal log_of(const Rational& positive);
    bool is_zero() const { return terms.empty(); }
    double value() const;
    LogReal& operator+=(const LogReal& o);
    friend LogReal operator+(LogReal a, const LogReal& b) { return a += b; }
    friend LogReal operator*(const Rational& c, const LogReal& a);
    friend bool operator==(const LogReal&, const LogReal&) = default;
    std::string to_string() const;
};

/// C^n / Lambda with Lambda spanned by the 2n rows of the period matrix.
struct ComplexTorusModel {
    std::size_t n = 0;
    std::vector<std::vector<Rational>> re, im;  // 2n x n

    /// Throws DomainError("singular period data") unless the rows span C^n over R.
    static ComplexTorusModel make(std::vector<std::vector<Rational>> re, std::vector<std::vector<Rational>> im);
    /// Lambda = Z^n + i Z^n.
    static ComplexTorusModel standard(std::size_t n);
    static ComplexTorusModel from_json(const nlohmann::json& j);
    /// 2n x 2n real matrix of lambda -> 2 Re phi(lambda) in the unknowns
    /// (Re theta, Im theta).
    Matrix<Rational> real_system() const;
};

struct HiggsLineBundle {
    Character chi;          // unitary character of Lambda
    long torsion_class = 0;  // c_1 torsion, zero on a torus
    std::vector<LogReal> theta_re, theta_im;  // theta = sum theta_k dz_k

    bool theta_zero() const;
    nlohmann::json to_json() const;
};

/// rho -> (unitary part, (1,0)-part of log|rho|), normalised so that
/// rho(lambda) = chi(lambda) exp(2 Re phi(lambda)).
HiggsLineBundle psi(const ComplexTorusModel& x, const Character& rho);
/// Inverse of psi; inexact when some exp(2 Re phi(lambda)) is irrational.
Character psi_inverse(const ComplexTorusModel& x, const HiggsLineBundle& h);

HiggsLineBundle operator+(const HiggsLineBundle& a, const HiggsLineBundle& b);
HiggsLineBundle scale_theta(const HiggsLineBundle& h, const Rational& t);

long higgs_cohomology_dim(const ComplexTorusModel& x, const HiggsLineBundle& h, std::size_t p, std::size_t q);

/// h^i(X, C_rho) of the torus by the rank-2n Koszul complex.
long local_system_dim(const ComplexTorusModel& x, const Character& rho, std::size_t i);

struct DecompositionCheck {
    long lhs = 0;  // h^i(X, C_rho)
    long rhs = 0;  // sum over p + q = i of h^{pq}(psi(rho))
    bool holds() const { return lhs == rhs; }
};

DecompositionCheck verify_higgs_decomposition(const ComplexTorusModel& x, const Character& rho, std::size_t i);

bool sigma_pq_membership(const ComplexTorusModel& x, const HiggsLineBundle& h, std::size_t p, std::size_t q, long m);
/// dim H^q(X, Omega^p (x) L) >= m, i.e. the Higgs field set to zero.
bool S_pq_membership(const ComplexTorusModel& x, const HiggsLineBundle& h, std::size_t p, std::size_t q, long m);

struct PartitionCheck {
    bool in_sigma = false;      // rho in Sigma^i_m
    bool in_partition = false;  // psi(rho) in the union over mu of the intersections
    std::size_t partitions = 0;
    bool holds() const { return in_sigma == in_partition; }
};

PartitionCheck partition_check(const ComplexTorusModel& x, const Character& rho, std::size_t i, long m);

}  // namespace jumploci
