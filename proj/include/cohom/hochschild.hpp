#pragma once

#include "cohom/algebra.hpp"
#include "cohom/subquotient.hpp"

#include <map>
#include <memory>

namespace cohom {

struct CoefficientsNotAlgebra : Error {
    CoefficientsNotAlgebra() : Error("cup product needs coefficients in the algebra itself") {}
};

// Computation budgets.  max_degree bounds the cochain degree reachable per
// call; max_columns bounds any single cochain space's ambient rank.  The
// COCHAIN_BUDGET environment variable overrides max_columns globally.
struct Budget {
    int max_degree = 6;
    long max_columns = 200000;
    static Budget global();
    Budget with_degree(int d) const {
        Budget b = *this;
        b.max_degree = d;
        return b;
    }
};

// A cochain on basis tuples of R with values in the carrier of M.  Tuples
// index the original basis; absent tuples are zero.
struct Cochain {
    int degree = 0;
    long r_dim = 0;
    long m_gens = 0;
    std::map<std::vector<long>, std::vector<Int>> coeffs;

    std::vector<Int> value(const std::vector<long>& tuple) const {
        auto it = coeffs.find(tuple);
        return it == coeffs.end() ? std::vector<Int>(m_gens, 0) : it->second;
    }
    void set(std::vector<long> tuple, std::vector<Int> v) {
        bool nonzero = false;
        for (const auto& x : v)
            if (x != 0) nonzero = true;
        if (nonzero) coeffs[std::move(tuple)] = std::move(v);
    }
    Cochain operator-(const Cochain& o) const;
    bool is_zero_mod(const FPModule& carrier) const;
};

// The Hochschild coboundary evaluated directly from the defining formula.
Cochain bar_coboundary(const StructureAlgebra& R, const Bimodule& M, const Cochain& f);

// (f cup g)(r_1..r_{n+m}) = f(r_1..r_n) g(r_{n+1}..r_{n+m}); coefficients in R.
Cochain cup_product(const StructureAlgebra& R, const Cochain& f, const Cochain& g);

// Bar cochain complex of R over `ground` with coefficients in M, materialized
// as a subquotient complex through degree `top`.  The normalized variant
// works over the unit-complement of an adapted basis; it computes the same
// cohomology with much smaller matrices.
class BarComplex {
public:
    BarComplex(BaseRing ground, const StructureAlgebra& R, const Bimodule& M, int top,
               bool normalized, const Budget& budget = Budget::global());

    const SubquotientComplex& cx() const { return cx_; }
    int top() const { return top_; }
    bool normalized() const { return normalized_; }
    long ebasis() const { return eb_; }
    long words(int n) const;
    long ambient(int n) const { return words(n) * gM_; }
    long index(const std::vector<long>& word, long mgen) const;

    // Cochain (original basis tuples) -> ambient coordinates.  For the
    // normalized complex the cochain must vanish on unit slots; this is the
    // caller's responsibility (cocycles produced by this library are).
    std::vector<Int> to_ambient(const Cochain& f) const;
    Cochain to_cochain(int degree, const std::vector<Int>& v) const;

private:
    void build();
    BaseRing ground_;
    const StructureAlgebra& R_;
    const Bimodule& M_;
    int top_;
    bool normalized_;
    long eb_, gM_;
    SubquotientComplex cx_;
    std::vector<SparseMat> act_left_, act_right_;        // effective basis actions
    std::vector<std::vector<std::vector<Int>>> emult_;   // effective mult table
};

struct HochschildResult {
    CohomologyResult coh;
    std::shared_ptr<BarComplex> complex;  // normalized complex used
};

// H^n(R / ground, M) for 0 <= n <= n_max.
HochschildResult hochschild_cohomology(const BaseRing& ground, const StructureAlgebra& R,
                                       const Bimodule& M, int n_max,
                                       const Budget& budget = Budget::global());
inline HochschildResult hochschild_cohomology(const StructureAlgebra& R, const Bimodule& M,
                                              int n_max, const Budget& budget = Budget::global()) {
    return hochschild_cohomology(R.base(), R, M, n_max, budget);
}

// H^0 computed directly from the commutant condition r m == m r.
ElementaryDivisors h0_direct(const StructureAlgebra& R, const Bimodule& M);

struct DerivationsReport {
    FPModule der;                  // Der(R, M) as an abstract module
    SparseMat der_basis;           // columns: ambient (gM x dim R) vectors of the basis
    ElementaryDivisors der_divisors;
    ElementaryDivisors inner_divisors;   // image of ad
    ElementaryDivisors h0, h1;           // from the four-term sequence
    bool four_term_exact = false;        // 0 -> H0 -> M -> Der -> H1 -> 0 verified
};
DerivationsReport derivations(const StructureAlgebra& R, const Bimodule& M);

struct DimensionShiftResult {
    Bimodule shifted;          // N = coker(mu : M -> Hom(R, M))
    SparseMat mu;              // the embedding
    bool mu_split = false;     // retraction exists
    std::map<int, ElementaryDivisors> lhs;  // H^{i+1}(R, M)
    std::map<int, ElementaryDivisors> rhs;  // H^i(R, N)
    bool agree = true;         // over the compared range i = 1 .. n_max-1
};
DimensionShiftResult dimension_shift(const BaseRing& ground, const StructureAlgebra& R,
                                     const Bimodule& M, int n_max,
                                     const Budget& budget = Budget::global());

// Class comparison helpers on the unnormalized complex: is f a coboundary /
// are f and g cohomologous?  f must be a cocycle.
bool is_coboundary(const BaseRing& ground, const StructureAlgebra& R, const Bimodule& M,
                   const Cochain& f);
std::optional<Cochain> coboundary_witness(const BaseRing& ground, const StructureAlgebra& R,
                                          const Bimodule& M, const Cochain& f);

}  // namespace cohom
