#include "cohom/snf.hpp"

#include <cstdlib>

namespace cohom {

namespace {

// Row/column operations applied simultaneously to the work matrix and the
// accumulated transform.  U tracks row ops (left), V column ops (right).

void swap_rows(Dense& A, Dense& U, long i, long j) {
    if (i == j) return;
    for (long c = 0; c < A.cols(); ++c) std::swap(A(i, c), A(j, c));
    for (long c = 0; c < U.cols(); ++c) std::swap(U(i, c), U(j, c));
}

void swap_cols(Dense& A, Dense& V, long i, long j) {
    if (i == j) return;
    for (long r = 0; r < A.rows(); ++r) std::swap(A(r, i), A(r, j));
    for (long r = 0; r < V.rows(); ++r) std::swap(V(r, i), V(r, j));
}

// row_i -= q * row_t
void row_axpy(Dense& A, Dense& U, long i, long t, const Int& q) {
    if (q == 0) return;
    for (long c = 0; c < A.cols(); ++c)
        if (A(t, c) != 0) A(i, c) -= q * A(t, c);
    for (long c = 0; c < U.cols(); ++c)
        if (U(t, c) != 0) U(i, c) -= q * U(t, c);
}

void col_axpy(Dense& A, Dense& V, long i, long t, const Int& q) {
    if (q == 0) return;
    for (long r = 0; r < A.rows(); ++r)
        if (A(r, t) != 0) A(r, i) -= q * A(r, t);
    for (long r = 0; r < V.rows(); ++r)
        if (V(r, t) != 0) V(r, i) -= q * V(r, t);
}

// Replace rows (t, i) by the unimodular combination sending the pivot pair
// (a, b) to (g, 0) where g = gcd(a, b).  det of the 2x2 block is +1.
void row_gcd_combine(Dense& A, Dense& U, long t, long i) {
    Int a = A(t, t), b = A(i, t), g, x, y;
    mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    Int ag = a / g, bg = b / g;
    for (long c = 0; c < A.cols(); ++c) {
        Int at = A(t, c), ai = A(i, c);
        A(t, c) = x * at + y * ai;
        A(i, c) = -bg * at + ag * ai;
    }
    for (long c = 0; c < U.cols(); ++c) {
        Int ut = U(t, c), ui = U(i, c);
        U(t, c) = x * ut + y * ui;
        U(i, c) = -bg * ut + ag * ui;
    }
}

void col_gcd_combine(Dense& A, Dense& V, long t, long j) {
    Int a = A(t, t), b = A(t, j), g, x, y;
    mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    Int ag = a / g, bg = b / g;
    for (long r = 0; r < A.rows(); ++r) {
        Int at = A(r, t), aj = A(r, j);
        A(r, t) = x * at + y * aj;
        A(r, j) = -bg * at + ag * aj;
    }
    for (long r = 0; r < V.rows(); ++r) {
        Int vt = V(r, t), vj = V(r, j);
        V(r, t) = x * vt + y * vj;
        V(r, j) = -bg * vt + ag * vj;
    }
}

}  // namespace

SmithResult smith_normal_form(const SparseMat& Ain) {
    const long m = Ain.rows(), n = Ain.cols();
    Dense A = Dense::from_sparse(Ain);
    Dense U = Dense::identity(m);  // row transform, applied on the left
    Dense V = Dense::identity(n);  // column transform, applied on the right

    long t = 0;
    const long tmax = std::min(m, n);
    while (t < tmax) {
        // Pivot search: smallest nonzero absolute value in A[t.., t..].
        long pr = -1, pc = -1;
        Int best = 0;
        for (long r = t; r < m; ++r) {
            for (long c = t; c < n; ++c) {
                const Int& v = A(r, c);
                if (v == 0) continue;
                Int av = abs(v);
                if (pr < 0 || av < best) {
                    best = av;
                    pr = r;
                    pc = c;
                    if (best == 1) break;
                }
            }
            if (best == 1) break;
        }
        if (pr < 0) break;  // submatrix is zero
        swap_rows(A, U, t, pr);
        swap_cols(A, V, t, pc);

        // Clear row and column t.  gcd-combines may reintroduce entries, so
        // loop until both are clean.
        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (long i = t + 1; i < m; ++i) {
                if (A(i, t) == 0) continue;
                if (A(i, t) % A(t, t) == 0)
                    row_axpy(A, U, i, t, A(i, t) / A(t, t));
                else {
                    row_gcd_combine(A, U, t, i);
                    dirty = true;
                }
            }
            for (long j = t + 1; j < n; ++j) {
                if (A(t, j) == 0) continue;
                if (A(t, j) % A(t, t) == 0)
                    col_axpy(A, V, j, t, A(t, j) / A(t, t));
                else {
                    col_gcd_combine(A, V, t, j);
                    dirty = true;
                }
            }
        }

        // Pivot must divide the remaining submatrix; if not, fold the
        // offending row in and redo this pivot.
        bool redo = false;
        for (long i = t + 1; i < m && !redo; ++i) {
            for (long j = t + 1; j < n && !redo; ++j) {
                if (A(i, j) % A(t, t) != 0) {
                    row_axpy(A, U, t, i, Int(-1));  // row_t += row_i
                    redo = true;
                }
            }
        }
        if (redo) continue;

        if (A(t, t) < 0) {
            for (long c = 0; c < n; ++c) A(t, c) = -A(t, c);
            for (long c = 0; c < m; ++c) U(t, c) = -U(t, c);
        }
        ++t;
    }

    SmithResult res;
    res.rank = t;
    res.divisors.reserve(t);
    for (long i = 0; i < t; ++i) res.divisors.push_back(A(i, i));
    res.U = U.to_sparse();
    res.V = V.to_sparse();
    res.D = A.to_sparse();

    if (debug_checks()) {
        SparseMat lhs = res.U.mul(Ain).mul(res.V);
        if (!lhs.equal(res.D)) throw Error("smith_normal_form: U*A*V != D");
        for (long i = 0; i + 1 < t; ++i)
            if (res.divisors[i + 1] % res.divisors[i] != 0)
                throw Error("smith_normal_form: divisibility chain broken");
    }
    return res;
}

SparseMat kernel_lattice(const SparseMat& A) {
    SmithResult s = smith_normal_form(A);
    // A = U^-1 D V^-1, so A x = 0 iff D (V^-1 x) = 0 iff x in span of the
    // V-columns past the rank.
    std::vector<long> idx;
    for (long c = s.rank; c < A.cols(); ++c) idx.push_back(c);
    return s.V.columns(idx);
}

std::optional<std::vector<Int>> solve(const SparseMat& A, const std::vector<Int>& b) {
    auto X = solve_mat(A, SparseMat::from_columns(A.rows(), {b}));
    if (!X) return std::nullopt;
    return X->column(0);
}

std::optional<SparseMat> solve_mat(const SparseMat& A, const SparseMat& B) {
    if (A.rows() != B.rows()) throw Error("solve_mat: shape mismatch");
    SmithResult s = smith_normal_form(A);
    SparseMat Ub = s.U.mul(B);
    // Solve D y = U b, then x = V y.
    SparseMat Y(A.cols(), B.cols());
    Dense ub = Dense::from_sparse(Ub);
    for (long c = 0; c < B.cols(); ++c) {
        for (long r = 0; r < A.rows(); ++r) {
            const Int& rhs = ub(r, c);
            if (r < s.rank) {
                if (rhs % s.divisors[r] != 0) return std::nullopt;
                Y.add(r, c, rhs / s.divisors[r]);
            } else if (rhs != 0) {
                return std::nullopt;
            }
        }
    }
    return s.V.mul(Y);
}

SparseMat lattice_basis(const SparseMat& G) {
    if (G.cols() == 0) return SparseMat(G.rows(), 0);
    SmithResult s = smith_normal_form(G);
    // im G = im(U^-1 D): basis d_i * (U^-1 e_i), i < rank.
    auto Uinv = solve_mat(s.U, SparseMat::identity(G.rows()));
    if (!Uinv) throw Error("lattice_basis: U not invertible");
    SparseMat basis(G.rows(), s.rank);
    Dense ui = Dense::from_sparse(*Uinv);
    for (long i = 0; i < s.rank; ++i)
        for (long r = 0; r < G.rows(); ++r)
            if (ui(r, i) != 0) basis.add(r, i, ui(r, i) * s.divisors[i]);
    basis.compress();
    return basis;
}

bool in_span(const SparseMat& G, const std::vector<Int>& v) { return solve(G, v).has_value(); }

// ---- F_p elimination --------------------------------------------------------

FpMat FpMat::from_sparse(const SparseMat& m, uint32_t p) {
    FpMat f(m.rows(), m.cols(), p);
    Int P = p;
    for (const auto& e : m.entries()) {
        Int r = e.v % P;
        if (r < 0) r += P;
        f(e.r, e.c) = (f(e.r, e.c) + (uint32_t)r.get_ui()) % p;
    }
    return f;
}

SparseMat FpMat::to_sparse() const {
    SparseMat m(rows_, cols_);
    for (long r = 0; r < rows_; ++r)
        for (long c = 0; c < cols_; ++c)
            if ((*this)(r, c)) m.add(r, c, (*this)(r, c));
    return m;
}

namespace {

uint32_t fp_inv(uint32_t a, uint32_t p) {
    // extended Euclid; p prime, a != 0 mod p
    int64_t t = 0, newt = 1, r = p, newr = a % p;
    while (newr != 0) {
        int64_t q = r / newr;
        int64_t tmp = t - q * newt;
        t = newt;
        newt = tmp;
        tmp = r - q * newr;
        r = newr;
        newr = tmp;
    }
    if (t < 0) t += p;
    return (uint32_t)t;
}

// Row echelon form in place; returns pivot columns.
std::vector<long> fp_echelon(FpMat& A) {
    const uint32_t p = A.p();
    std::vector<long> pivots;
    long row = 0;
    for (long col = 0; col < A.cols() && row < A.rows(); ++col) {
        long pr = -1;
        for (long r = row; r < A.rows(); ++r)
            if (A(r, col)) {
                pr = r;
                break;
            }
        if (pr < 0) continue;
        if (pr != row)
            for (long c = 0; c < A.cols(); ++c) std::swap(A(pr, c), A(row, c));
        uint32_t inv = fp_inv(A(row, col), p);
        for (long c = col; c < A.cols(); ++c) A(row, c) = (uint32_t)((uint64_t)A(row, c) * inv % p);
        for (long r = 0; r < A.rows(); ++r) {
            if (r == row || !A(r, col)) continue;
            uint64_t f = A(r, col);
            for (long c = col; c < A.cols(); ++c)
                A(r, c) = (uint32_t)((A(r, c) + (p - 1) * f % p * A(row, c)) % p);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace

long fp_rank(FpMat A) { return (long)fp_echelon(A).size(); }

FpMat fp_kernel(const FpMat& A) {
    FpMat E = A;
    std::vector<long> pivots = fp_echelon(E);
    const uint32_t p = A.p();
    std::vector<bool> is_pivot(A.cols(), false);
    for (long c : pivots) is_pivot[c] = true;
    std::vector<long> free_cols;
    for (long c = 0; c < A.cols(); ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    FpMat K(A.cols(), (long)free_cols.size(), p);
    for (size_t k = 0; k < free_cols.size(); ++k) {
        long fc = free_cols[k];
        K(fc, (long)k) = 1;
        for (size_t r = 0; r < pivots.size(); ++r) {
            uint32_t v = E((long)r, fc);
            if (v) K(pivots[r], (long)k) = p - v;
        }
    }
    return K;
}

std::optional<std::vector<uint32_t>> fp_solve(const FpMat& A, const std::vector<uint32_t>& b) {
    FpMat B(A.rows(), 1, A.p());
    for (long r = 0; r < A.rows(); ++r) B(r, 0) = b[r] % A.p();
    auto X = fp_solve_mat(A, B);
    if (!X) return std::nullopt;
    std::vector<uint32_t> x(A.cols());
    for (long r = 0; r < A.cols(); ++r) x[r] = (*X)(r, 0);
    return x;
}

std::optional<FpMat> fp_solve_mat(const FpMat& A, const FpMat& B) {
    const uint32_t p = A.p();
    FpMat aug(A.rows(), A.cols() + B.cols(), p);
    for (long r = 0; r < A.rows(); ++r) {
        for (long c = 0; c < A.cols(); ++c) aug(r, c) = A(r, c);
        for (long c = 0; c < B.cols(); ++c) aug(r, A.cols() + c) = B(r, c);
    }
    std::vector<long> pivots = fp_echelon(aug);
    for (long c : pivots)
        if (c >= A.cols()) return std::nullopt;  // inconsistent row
    FpMat X(A.cols(), B.cols(), p);
    for (size_t r = 0; r < pivots.size(); ++r)
        for (long c = 0; c < B.cols(); ++c) X(pivots[r], c) = aug((long)r, A.cols() + c);
    return X;
}

FpMat fp_column_basis(const FpMat& A) {
    FpMat E = A;
    std::vector<long> pivots = fp_echelon(E);
    FpMat B(A.rows(), (long)pivots.size(), A.p());
    for (size_t k = 0; k < pivots.size(); ++k)
        for (long r = 0; r < A.rows(); ++r) B(r, (long)k) = A(r, pivots[k]);
    return B;
}

}  // namespace cohom
