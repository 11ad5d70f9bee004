#pragma once

#include "cohom/mat.hpp"

#include <optional>
#include <vector>

namespace cohom {

// Dense row-major integer matrix used inside the elimination kernels.
class Dense {
public:
    Dense() : rows_(0), cols_(0) {}
    Dense(long rows, long cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}
    static Dense identity(long n) {
        Dense d(n, n);
        for (long i = 0; i < n; ++i) d(i, i) = 1;
        return d;
    }
    long rows() const { return rows_; }
    long cols() const { return cols_; }
    Int& operator()(long r, long c) { return a_[size_t(r) * cols_ + c]; }
    const Int& operator()(long r, long c) const { return a_[size_t(r) * cols_ + c]; }
    SparseMat to_sparse() const {
        SparseMat m(rows_, cols_);
        for (long r = 0; r < rows_; ++r)
            for (long c = 0; c < cols_; ++c)
                if ((*this)(r, c) != 0) m.add(r, c, (*this)(r, c));
        return m;
    }
    static Dense from_sparse(const SparseMat& m) {
        Dense d(m.rows(), m.cols());
        for (const auto& e : m.entries()) d(e.r, e.c) += e.v;
        return d;
    }

private:
    long rows_, cols_;
    std::vector<Int> a_;
};

// U * A * V = D with U, V unimodular and D diagonal with d1 | d2 | ... .
// Pivots are nonnegative; the divisibility chain is enforced.
struct SmithResult {
    SparseMat U, D, V;
    long rank = 0;
    std::vector<Int> divisors;  // the nonzero diagonal, length == rank
};

SmithResult smith_normal_form(const SparseMat& A);

// Basis of the integer kernel lattice {x : A x = 0}; columns are a Z-basis.
SparseMat kernel_lattice(const SparseMat& A);

// One particular integer solution of A x = b, if any.
std::optional<std::vector<Int>> solve(const SparseMat& A, const std::vector<Int>& b);

// Columnwise solve A X = B.
std::optional<SparseMat> solve_mat(const SparseMat& A, const SparseMat& B);

// A Z-basis for the column span of G (columns of the result are independent).
SparseMat lattice_basis(const SparseMat& G);

// Does v lie in the column span of G?
bool in_span(const SparseMat& G, const std::vector<Int>& v);

// ---- prime field fast path -------------------------------------------------

// Dense matrix over F_p with p < 2^31, entries stored reduced.
class FpMat {
public:
    FpMat() : p_(2), rows_(0), cols_(0) {}
    FpMat(long rows, long cols, uint32_t p) : p_(p), rows_(rows), cols_(cols), a_(size_t(rows) * cols, 0) {}
    static FpMat from_sparse(const SparseMat& m, uint32_t p);
    static FpMat identity(long n, uint32_t p) {
        FpMat f(n, n, p);
        for (long i = 0; i < n; ++i) f(i, i) = 1;
        return f;
    }
    long rows() const { return rows_; }
    long cols() const { return cols_; }
    uint32_t p() const { return p_; }
    uint32_t& operator()(long r, long c) { return a_[size_t(r) * cols_ + c]; }
    uint32_t operator()(long r, long c) const { return a_[size_t(r) * cols_ + c]; }
    SparseMat to_sparse() const;

private:
    uint32_t p_;
    long rows_, cols_;
    std::vector<uint32_t> a_;
};

long fp_rank(FpMat A);
// Basis of the null space over F_p (columns), entries lifted to {0..p-1}.
FpMat fp_kernel(const FpMat& A);
// Particular solution of A x = b over F_p.
std::optional<std::vector<uint32_t>> fp_solve(const FpMat& A, const std::vector<uint32_t>& b);
// Columnwise solve over F_p.
std::optional<FpMat> fp_solve_mat(const FpMat& A, const FpMat& B);
// Column-space basis.
FpMat fp_column_basis(const FpMat& A);

}  // namespace cohom
