#pragma once

#include "cohom/shukla.hpp"

#include <array>

namespace cohom {

// Finite abelian group or finite ring given by element tables; elements are
// 0..size-1 with 0 the additive zero.
struct FiniteRing {
    long size = 0;
    std::vector<std::vector<long>> add;
    std::vector<std::vector<long>> mul;  // empty for a plain group
    long one = -1;                       // multiplicative unit when a ring

    bool is_ring() const { return !mul.empty(); }
    static FiniteRing cyclic(long n, bool ring = true);
    static FiniteRing product(const FiniteRing& a, const FiniteRing& b);
};

// The Eilenberg-Mac Lane complex through degree 2 on reduced generators.
struct QComplex {
    FiniteRing A;
    std::vector<long> q0;                   // nonzero elements
    std::vector<std::array<long, 2>> q1;    // pairs with both entries nonzero
    std::vector<std::array<long, 4>> q2;    // 4-tuples surviving the relations
    SparseMat d1, d2;

    long index0(long a) const;                       // -1 if reduced to zero
    long index1(long a, long b) const;
    long index2(const std::array<long, 4>& t) const;
    std::vector<Int> chain0(long a) const;           // [a] as a Q0 vector
    std::vector<Int> chain1(long a, long b) const;
    std::vector<Int> chain2(const std::array<long, 4>& t) const;

    // ring structure on basis generators (degrees d1 + d2 <= 2)
    std::vector<Int> product(int deg1, long i, int deg2, long j) const;
};

QComplex build_q(const FiniteRing& A, long cap = 16);

struct QLowHomology {
    ElementaryDivisors h0, h1;
};
QLowHomology q_low_homology(const QComplex& Q);

// gamma(a) = [0, a, a, 0]; always a d2-cycle.
std::vector<Int> gamma(const QComplex& Q, long a);

// checks d(xy) = d(x) y + (-1)^{|x|} x d(y) on all basis pairs of total
// degree <= 2; returns the first failing pair if any
std::optional<std::pair<std::pair<int, long>, std::pair<int, long>>> q_leibniz_failure(
    const QComplex& Q);

// V_*(R) = (0 -> Ker(eps) -> Q_0(R)) as a chain algebra over Z, with its
// degree <= 2 cohomology compared against the shukla module.
struct VCompareReport {
    std::map<int, ElementaryDivisors> v_side;
    std::map<int, ElementaryDivisors> shukla_side;
    bool agree = true;
    std::string out_of_scope_note;
};
VCompareReport v_complex_compare(long n, long cap = 16);

}  // namespace cohom
