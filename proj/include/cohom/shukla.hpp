#pragma once

#include "cohom/chainalg.hpp"

namespace cohom {

enum class ShuklaStrategy { Auto, Builtin, KillingCycles, User };

struct ShuklaQuery {
    BaseRing ground = BaseRing::integers();
    StructureAlgebra R;
    Bimodule M;  // over R, carrier over ground
    int n_max = 6;
    ShuklaStrategy strategy = ShuklaStrategy::Auto;
    // lifting of R to the ground for the builtin strategy (dim R > 1): an
    // algebra over the ground whose reduction is R
    std::optional<StructureAlgebra> lift;
    // user strategy: a degreewise free chain algebra weakly equivalent to R
    std::shared_ptr<const ChainAlgebra> user_resolution;
    Budget budget = Budget::global();
};

struct ShuklaResult {
    CohomologyResult coh;
    std::string strategy_used;
};

ShuklaResult shukla_cohomology(const ShuklaQuery& q);

// Shukla over a two-level ground K (an algebra over a prime field) of the
// rank-1 quotient K/(ker aug), via killing cycles and the Der complex.
CohomologyResult shukla_two_level(const Ground& ground, const std::vector<Int>& aug,
                                  const DerCoefficients& M, int n_max);

// The natural map H^n(R/ground, M) -> Shukla^n(R/ground, M) induced by the
// resolution augmentation.
struct ComparisonMap {
    std::map<int, ElementaryDivisors> hochschild;
    std::map<int, ElementaryDivisors> shukla;
    // matrix of the induced map in the computed bases (columns = H^n basis)
    std::map<int, SparseMat> matrix;
    // per-degree: map is an isomorphism (decided by divisors + surjectivity
    // + injectivity on the finite groups involved)
    std::map<int, bool> iso;
};
ComparisonMap comparison_map(const BaseRing& ground, const StructureAlgebra& R, const Bimodule& M,
                             int n_max, const std::optional<StructureAlgebra>& lift = {});

// The obstruction e((d)) = p [P] in H^0(A, M) for a crossed extension of
// Z/p^2-algebras with A an F_p-algebra; [P] solves d[P] = p * 1.
std::vector<Int> e_invariant(const CrossedExtension& X);

// The canonical class (sigma)_A = (0 -> A -> R(A)/p^2 -> Z/p^2[A] -> A -> 0)
// for a finite F_p-algebra A, |A| <= cap.
struct CanonicalClass {
    CrossedExtension extension;            // over ground Z/p^2
    DeltaExtension integral_witness;       // S = Z[A]/p^2 R(A): b((sigma)_A) = 0
    CrossedExtension integral_view;        // the same extension over ground Z
};
CanonicalClass canonical_class_sigma(const StructureAlgebra& A, long cap = 9);

// Base change Shukla^n(F_p / Z/p^2, M) -> Shukla^n(F_p / Z, M) realized by
// lifting the integral killing-cycles resolution into the Z/p^2 resolution
// viewed as a Z-chain algebra.
struct BaseChange {
    std::map<int, ElementaryDivisors> source;  // over Z/p^2
    std::map<int, ElementaryDivisors> target;  // over Z
    std::map<int, SparseMat> matrix;
};
BaseChange base_change_fp(long p, const FPModule& M, int n_max);

}  // namespace cohom
