#include "jumploci/lattice.hpp"

#include <algorithm>
#include <utility>

#include "jumploci/error.hpp"

namespace jumploci {

namespace {

Integer floor_div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

// row[a] -= q * row[b]
void row_axpy(IntMatrix& m, std::size_t a, std::size_t b, const Integer& q) {
    if (q == 0) return;
    for (std::size_t j = 0; j < m.cols(); ++j)
        if (m(b, j) != 0) m(a, j) -= q * m(b, j);
}

void col_axpy(IntMatrix& m, std::size_t a, std::size_t b, const Integer& q) {
    if (q == 0) return;
    for (std::size_t i = 0; i < m.rows(); ++i)
        if (m(i, b) != 0) m(i, a) -= q * m(i, b);
}

void negate_row(IntMatrix& m, std::size_t r) {
    for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

}  // namespace

IntMatrix identity_matrix(std::size_t n) {
    IntMatrix m(n, n, Integer(0));
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows()) throw DomainError("matrix product shape mismatch");
    IntMatrix c(a.rows(), b.cols(), Integer(0));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

std::vector<Integer> SmithForm::invariants() const {
    std::vector<Integer> out;
    for (std::size_t i = 0; i < rank; ++i) out.push_back(diag(i, i));
    return out;
}

SmithForm smith_normal_form(const IntMatrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    SmithForm s{identity_matrix(rows), m, identity_matrix(cols), 0};
    IntMatrix& a = s.diag;
    std::size_t t = 0;
    while (t < rows && t < cols) {
        // smallest nonzero entry of the trailing block becomes the pivot
        std::size_t pi = rows, pj = cols;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (a(i, j) != 0 && (pi == rows || abs(a(i, j)) < abs(a(pi, pj)))) {
                    pi = i;
                    pj = j;
                }
        if (pi == rows) break;
        a.swap_rows(t, pi);
        s.left.swap_rows(t, pi);
        a.swap_cols(t, pj);
        s.right.swap_cols(t, pj);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (a(i, t) == 0) continue;
                const Integer q = floor_div(a(i, t), a(t, t));
                row_axpy(a, i, t, q);
                row_axpy(s.left, i, t, q);
                if (a(i, t) != 0) {
                    a.swap_rows(t, i);
                    s.left.swap_rows(t, i);
                    clean = false;
                }
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (a(t, j) == 0) continue;
                const Integer q = floor_div(a(t, j), a(t, t));
                col_axpy(a, j, t, q);
                col_axpy(s.right, j, t, q);
                if (a(t, j) != 0) {
                    a.swap_cols(t, j);
                    s.right.swap_cols(t, j);
                    clean = false;
                }
            }
            if (!clean) continue;
            // pivot must divide the rest of the block
            for (std::size_t i = t + 1; i < rows && clean; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (a(i, j) % a(t, t) != 0) {
                        row_axpy(a, t, i, Integer(-1));
                        row_axpy(s.left, t, i, Integer(-1));
                        clean = false;
                        break;
                    }
        }
        if (a(t, t) < 0) {
            negate_row(a, t);
            negate_row(s.left, t);
        }
        ++t;
    }
    s.rank = t;
    return s;
}

IntMatrix hermite_rows(const IntMatrix& input) {
    IntMatrix a = input;
    const std::size_t rows = a.rows(), cols = a.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        // Euclid down the column until only row r is nonzero
        while (true) {
            std::size_t best = rows;
            for (std::size_t i = r; i < rows; ++i)
                if (a(i, c) != 0 && (best == rows || abs(a(i, c)) < abs(a(best, c)))) best = i;
            if (best == rows) break;
            a.swap_rows(r, best);
            bool done = true;
            for (std::size_t i = r + 1; i < rows; ++i) {
                if (a(i, c) == 0) continue;
                row_axpy(a, i, r, floor_div(a(i, c), a(r, c)));
                if (a(i, c) != 0) done = false;
            }
            if (done) break;
        }
        if (a(r, c) == 0) continue;
        if (a(r, c) < 0) negate_row(a, r);
        for (std::size_t i = 0; i < r; ++i) row_axpy(a, i, r, floor_div(a(i, c), a(r, c)));
        ++r;
    }
    IntMatrix out(0, cols);
    for (std::size_t i = 0; i < r; ++i) out.append_row(a.row(i));
    return out;
}

IntMatrix hermite_columns(const IntMatrix& m) { return hermite_rows(m.transposed()).transposed(); }

IntMatrix integer_kernel(const IntMatrix& m) {
    const std::size_t n = m.cols(), k = m.rows();
    IntMatrix aug(n, k + n, Integer(0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) aug(i, j) = m(j, i);
        aug(i, k + i) = 1;
    }
    // Echelon on the first k columns only, keeping every row.
    std::size_t r = 0;
    for (std::size_t c = 0; c < k && r < n; ++c) {
        while (true) {
            std::size_t best = n;
            for (std::size_t i = r; i < n; ++i)
                if (aug(i, c) != 0 && (best == n || abs(aug(i, c)) < abs(aug(best, c)))) best = i;
            if (best == n) break;
            aug.swap_rows(r, best);
            bool done = true;
            for (std::size_t i = r + 1; i < n; ++i) {
                if (aug(i, c) == 0) continue;
                row_axpy(aug, i, r, floor_div(aug(i, c), aug(r, c)));
                if (aug(i, c) != 0) done = false;
            }
            if (done) break;
        }
        if (aug(r, c) != 0) ++r;
    }
    IntMatrix ker(0, n);
    for (std::size_t i = r; i < n; ++i) {
        IntVector v(n);
        for (std::size_t j = 0; j < n; ++j) v[j] = aug(i, k + j);
        ker.append_row(v);
    }
    if (ker.rows() == 0) return IntMatrix(0, n);
    return hermite_rows(ker);
}

IntMatrix saturate_rows(const IntMatrix& rows) {
    if (rows.rows() == 0) return IntMatrix(0, rows.cols());
    return integer_kernel(integer_kernel(rows));
}

std::size_t integer_rank(const IntMatrix& m) { return hermite_rows(m).rows(); }

bool row_lattice_contains(const IntMatrix& hnf, std::span<const Integer> v) {
    IntVector w(v.begin(), v.end());
    std::size_t c = 0;
    for (std::size_t i = 0; i < hnf.rows(); ++i) {
        while (c < hnf.cols() && hnf(i, c) == 0) {
            if (w[c] != 0) return false;
            ++c;
        }
        if (c == hnf.cols()) break;
        if (w[c] % hnf(i, c) != 0) return false;
        const Integer q = w[c] / hnf(i, c);
        for (std::size_t j = c; j < hnf.cols(); ++j) w[j] -= q * hnf(i, j);
        ++c;
    }
    return std::all_of(w.begin(), w.end(), [](const Integer& x) { return x == 0; });
}

IntMatrix unimodular_inverse(const IntMatrix& m) {
    const std::size_t n = m.rows();
    IntMatrix aug(n, 2 * n, Integer(0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    IntMatrix h = hermite_rows(aug);
    IntMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (h(i, i) != 1) throw DomainError("matrix is not unimodular");
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = h(i, n + j);
    }
    return inv;
}

IntMatrix to_int_matrix(const std::vector<std::vector<long>>& rows, std::size_t cols) {
    IntMatrix m(0, cols);
    for (const auto& r : rows) {
        IntVector v(r.begin(), r.end());
        m.append_row(v);
    }
    return m;
}

std::vector<std::vector<long>> to_long_rows(const IntMatrix& m) {
    std::vector<std::vector<long>> out(m.rows(), std::vector<long>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j).get_si();
    return out;
}

}  // namespace jumploci
