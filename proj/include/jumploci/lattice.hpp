#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "jumploci/cyclotomic.hpp"
#include "jumploci/matrix.hpp"

namespace jumploci {

using IntMatrix = Matrix<Integer>;
using IntVector = std::vector<Integer>;

IntMatrix identity_matrix(std::size_t n);
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);

/// left * m * right = diag, with left and right unimodular and the nonzero
/// diagonal entries d1 | d2 | ... positive.
struct SmithForm {
    IntMatrix left;
    IntMatrix diag;
    IntMatrix right;
    std::size_t rank = 0;
    std::vector<Integer> invariants() const;
};

SmithForm smith_normal_form(const IntMatrix& m);

/// Row-style Hermite normal form with zero rows dropped: echelon, positive
/// pivots, entries above each pivot reduced into [0, pivot).
IntMatrix hermite_rows(const IntMatrix& m);

/// Column-style Hermite normal form (transpose of the row form of m^T).
IntMatrix hermite_columns(const IntMatrix& m);

/// Rows form the HNF basis of {x in Z^n : m x = 0}; always saturated.
IntMatrix integer_kernel(const IntMatrix& m);

/// HNF basis of (Q-span of the rows) intersected with Z^n.
IntMatrix saturate_rows(const IntMatrix& rows);

std::size_t integer_rank(const IntMatrix& m);

/// Membership of v in the row lattice of an HNF basis.
bool row_lattice_contains(const IntMatrix& hnf, std::span<const Integer> v);

/// Inverse of a unimodular matrix.
IntMatrix unimodular_inverse(const IntMatrix& m);

IntMatrix to_int_matrix(const std::vector<std::vector<long>>& rows, std::size_t cols);
std::vector<std::vector<long>> to_long_rows(const IntMatrix& m);

}  // namespace jumploci
