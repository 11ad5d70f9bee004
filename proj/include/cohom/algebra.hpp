#pragma once

#include "cohom/fpmodule.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cohom {

struct NotAssociative : Error {
    long i, j, k;
    NotAssociative(long i_, long j_, long k_)
        : Error("multiplication table not associative at basis triple (" + std::to_string(i_) +
                "," + std::to_string(j_) + "," + std::to_string(k_) + ")"),
          i(i_), j(j_), k(k_) {}
};
struct NoUnit : Error {
    NoUnit() : Error("unit vector does not act as identity") {}
};

// Finite-rank associative unital algebra given by a basis and structure
// constants over its base ring.  The carrier is the free module base^dim.
class StructureAlgebra {
public:
    StructureAlgebra(BaseRing base, std::vector<std::string> names,
                     std::vector<std::vector<std::vector<Int>>> mult, std::vector<Int> unit);

    const BaseRing& base() const { return base_; }
    long dim() const { return dim_; }
    const std::vector<std::string>& names() const { return names_; }
    const std::vector<Int>& unit() const { return unit_; }
    // Coordinates of e_i * e_j.
    const std::vector<Int>& mult(long i, long j) const { return mult_[i][j]; }

    // Product of two coordinate vectors.
    std::vector<Int> product(const std::vector<Int>& x, const std::vector<Int>& y) const;
    // Left/right multiplication matrices on the free carrier.
    SparseMat left_mul(long i) const;
    SparseMat right_mul(long i) const;
    SparseMat left_mul_by(const std::vector<Int>& x) const;
    SparseMat right_mul_by(const std::vector<Int>& x) const;

    bool is_commutative() const;

    // Carrier viewed as a module over `ground` (base must be a quotient of
    // ground): free basis with the characteristic gap as diagonal relations.
    FPModule carrier_over(const BaseRing& ground) const;

    // Change of basis with the unit as the first basis vector: returns P
    // (columns are the new basis in old coordinates) and its inverse mod the
    // base modulus.  P.column(0) == unit().
    struct AdaptedBasis {
        SparseMat P, Pinv;
    };
    const AdaptedBasis& adapted_basis() const;
    // Structure constants rewritten in the adapted basis.
    const std::vector<std::vector<std::vector<Int>>>& adapted_mult() const;

private:
    void validate() const;
    BaseRing base_;
    long dim_;
    std::vector<std::string> names_;
    std::vector<std::vector<std::vector<Int>>> mult_;
    std::vector<Int> unit_;
    mutable std::optional<AdaptedBasis> adapted_;
    mutable std::optional<std::vector<std::vector<std::vector<Int>>>> adapted_mult_;
};

StructureAlgebra algebra_from_table(BaseRing base, std::vector<std::string> names,
                                    std::vector<std::vector<std::vector<Int>>> mult,
                                    std::vector<Int> unit);

// Bimodule over R whose carrier is finitely presented over a ground ring
// (the ground may sit under R's base, e.g. M = F_2 over Z with R an
// F_2-algebra).  left[i]/right[i] are the action matrices of basis element i.
class Bimodule {
public:
    Bimodule(const StructureAlgebra& R, BaseRing ground, FPModule carrier,
             std::vector<SparseMat> left, std::vector<SparseMat> right);

    const BaseRing& ground() const { return ground_; }
    const FPModule& carrier() const { return carrier_; }
    const SparseMat& left(long i) const { return left_[i]; }
    const SparseMat& right(long i) const { return right_[i]; }
    long algebra_dim() const { return (long)left_.size(); }

    SparseMat left_by(const std::vector<Int>& r) const;
    SparseMat right_by(const std::vector<Int>& r) const;

    // Actions rewritten in R's adapted (unit-first) basis.
    SparseMat left_adapted(const StructureAlgebra& R, long i) const;
    SparseMat right_adapted(const StructureAlgebra& R, long i) const;

private:
    BaseRing ground_;
    FPModule carrier_;
    std::vector<SparseMat> left_, right_;
};

// Validates the bimodule axioms for M over R; throws on failure.
Bimodule bimodule_over(const StructureAlgebra& R, BaseRing ground, FPModule carrier,
                       std::vector<SparseMat> left, std::vector<SparseMat> right);

// R as a bimodule over itself (regular actions), over the given ground.
Bimodule regular_bimodule(const StructureAlgebra& R, const BaseRing& ground);
Bimodule regular_bimodule(const StructureAlgebra& R);

// One-dimensional bimodule ground/(c) where every non-unit adapted basis
// element acts as zero (the augmentation-style trivial module).
Bimodule trivial_bimodule(const StructureAlgebra& R, const BaseRing& ground, const Int& torsion);

// Algebra on a finitely presented carrier: multiplication given on
// generators, compatible with the relations.  Used for extension middles.
class FPAlgebra {
public:
    FPAlgebra(BaseRing ground, FPModule carrier, std::vector<std::vector<std::vector<Int>>> mult,
              std::vector<Int> unit);

    const BaseRing& ground() const { return ground_; }
    const FPModule& carrier() const { return carrier_; }
    long gens() const { return carrier_.gens; }
    const std::vector<Int>& unit() const { return unit_; }
    std::vector<Int> product(const std::vector<Int>& x, const std::vector<Int>& y) const;
    SparseMat left_mul_by(const std::vector<Int>& x) const;
    SparseMat right_mul_by(const std::vector<Int>& x) const;
    const std::vector<Int>& mult(long i, long j) const { return mult_[i][j]; }

    // Throws NotAssociative / NoUnit; also checks the table descends to the
    // quotient by the relations.
    void validate() const;

    static FPAlgebra from_structure(const StructureAlgebra& A, const BaseRing& ground);

private:
    BaseRing ground_;
    FPModule carrier_;
    std::vector<std::vector<std::vector<Int>>> mult_;
    std::vector<Int> unit_;
};

struct InducedBimodule {
    Bimodule module;       // Hom(R, M) with (r f s)(a) = r f(s a)
    SparseMat embedding;   // mu : M -> Hom(R, M), mu(m)(r) = m r
    FPModule hom_carrier;  // carrier of the induced module (gens = dim R * gens M)
};

// Hom(R, A) for a left module A presented by the left actions of M (the
// bimodule's left part is used; its right part is ignored).
InducedBimodule induced_bimodule(const StructureAlgebra& R, const Bimodule& M);

struct OppositeEnveloping {
    StructureAlgebra opposite;
    StructureAlgebra enveloping;        // R (x) R^op
    std::vector<SparseMat> regular_action;  // action of e_{(i,i')} on R: x -> e_i x e_{i'}
};
OppositeEnveloping opposite_enveloping(const StructureAlgebra& R);

// Helpers shared by the higher modules.
bool matrices_congruent(const SparseMat& A, const SparseMat& B, const FPModule& M);
bool matrix_zero_mod(const SparseMat& A, const FPModule& M);

}  // namespace cohom
