#pragma once

#include "cohom/snf.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cohom {

// Canonical description of a finitely generated module over Z or Z/m:
// an ordered divisibility chain d1 | d2 | ..., with 0 marking a free summand.
// Entries equal to 1 are never retained.  Over a prime field the module is
// a vector space and the chain is p repeated dim times.
struct ElementaryDivisors {
    std::vector<Int> divisors;

    bool is_zero() const { return divisors.empty(); }
    long free_rank() const {
        long n = 0;
        for (const auto& d : divisors)
            if (d == 0) ++n;
        return n;
    }
    long torsion_count() const { return (long)divisors.size() - free_rank(); }
    // Dimension when every divisor equals the same prime (vector space case).
    long dimension() const { return (long)divisors.size(); }
    bool operator==(const ElementaryDivisors& o) const { return divisors == o.divisors; }
    bool operator!=(const ElementaryDivisors& o) const { return !(*this == o); }
    std::string str() const;

    static ElementaryDivisors from_diagonal(const std::vector<Int>& diag, long free_rank);
};

// Finitely presented module over base: coker(relations : Z^k -> Z^g).
// Over Z/m the relation m*I is implicit and appended by lifted_relations().
struct FPModule {
    BaseRing base = BaseRing::integers();
    long gens = 0;
    SparseMat relations;  // gens x k

    FPModule() : relations(0, 0) {}
    FPModule(BaseRing b, long g, SparseMat rels) : base(b), gens(g), relations(std::move(rels)) {
        if (relations.rows() != gens) throw Error("FPModule: relation row count != gens");
        relations = relations.reduced(base);
    }
    static FPModule free_module(BaseRing b, long g) { return FPModule(b, g, SparseMat(g, 0)); }
    static FPModule cyclic(BaseRing b, const Int& n) {
        SparseMat r(1, 1);
        r.add(0, 0, n);
        return FPModule(b, 1, r);
    }
    static FPModule zero(BaseRing b) { return FPModule(b, 0, SparseMat(0, 0)); }

    // Relations with the base modulus folded in, so all computations can run
    // over Z.
    SparseMat lifted_relations() const;

    ElementaryDivisors invariants() const;
    bool is_zero_module() const { return invariants().is_zero(); }
    // Number of elements; nullopt when infinite.
    std::optional<Int> order() const;
};

// A homomorphism is a matrix on generators; well-definedness means it maps
// the relation lattice of the source into that of the target.
bool is_module_map(const FPModule& A, const FPModule& B, const SparseMat& f);

// x == y in B?
bool same_element(const FPModule& B, const std::vector<Int>& x, const std::vector<Int>& y);
bool is_zero_element(const FPModule& B, const std::vector<Int>& x);

FPModule tensor_modules(const FPModule& A, const FPModule& B);
// Induced map f (x) g on the tensor presentations.
SparseMat tensor_maps(const SparseMat& f, const SparseMat& g);

// Hom(A, B) presented as an FPModule; hom_basis[i] is the actual matrix
// (B.gens x A.gens) realizing generator i.
struct HomModule {
    FPModule module;
    std::vector<SparseMat> hom_basis;
};
HomModule hom_modules(const FPModule& A, const FPModule& B);

struct SplitSurjection {
    bool split = false;
    SparseMat section;  // A.gens x B.gens, with f*section == id_B when split
};
// Precondition: f surjective (throws NotSurjective otherwise).
SplitSurjection is_split_surjection(const FPModule& A, const FPModule& B, const SparseMat& f);

// Does a module map g : B -> A with g o f == id_A exist (retraction of an
// injective f)?  Used for K-split monomorphism checks.
std::optional<SparseMat> retraction_of(const FPModule& A, const FPModule& B, const SparseMat& f);

// Kernel of f : A -> B as a sublattice of A's generator space: returns a
// matrix whose columns generate {x : f x == 0 in B} together with A's
// relations folded in.
SparseMat kernel_of_map(const FPModule& A, const FPModule& B, const SparseMat& f);

FPModule cokernel_of_map(const FPModule& A, const FPModule& B, const SparseMat& f);
bool is_surjective_map(const FPModule& A, const FPModule& B, const SparseMat& f);
bool is_injective_map(const FPModule& A, const FPModule& B, const SparseMat& f);

// Solve f x = b in B with x ranging over A (mod relations).  Returns some
// preimage of b under f if one exists.
std::optional<std::vector<Int>> preimage(const FPModule& A, const FPModule& B, const SparseMat& f,
                                         const std::vector<Int>& b);

}  // namespace cohom
