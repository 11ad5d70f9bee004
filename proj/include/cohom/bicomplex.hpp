#pragma once

#include "cohom/extensions.hpp"

namespace cohom {

struct GroundNotOverField : Error {
    GroundNotOverField() : Error("bicomplex requires a ground algebra over a prime field") {}
};
struct NotAPair : Error {
    int relation;
    explicit NotAPair(int rel)
        : Error("(f,g) fails Z^2 relation " + std::to_string(rel)), relation(rel) {}
};

// The data of section-6 computations: a commutative algebra K over the prime
// field k, a k-algebra R with a central unital structure map K -> R, and an
// R-bimodule M (carrier over k).
struct BicomplexSpec {
    BaseRing k = BaseRing::prime_field(2);
    StructureAlgebra K;
    StructureAlgebra R;
    SparseMat phi;  // K -> R, unital, central image
    Bimodule M;     // over R, ground k
    int n_max = 5;
    long bidegree_cap = 1 << 16;  // (dim K)^{pq} (dim R)^q dim M per bidegree

    void validate() const;
};

// The total complex of the K-bar bicomplex: row q = 0 collapsed to M in
// bidegree (0,0), rows q >= 1 in full.  Total differential D = d + delta with
// the displayed section-6 signs; D o D == 0 is asserted at construction.
class BicomplexTotal {
public:
    struct Block {
        int p, q;
        long offset, dim;
    };

    BicomplexTotal(const BicomplexSpec& spec, int top);
    const SubquotientComplex& cx() const { return cx_; }
    const std::vector<Block>& blocks(int n) const { return blocks_[n]; }
    long ambient(int n) const;
    // index of (a-matrix, r-tuple, m) inside degree p+q; a is row-major p x q
    long index(int p, int q, const std::vector<long>& a, const std::vector<long>& r,
               long m) const;
    const BicomplexSpec& spec() const { return spec_; }

private:
    void build();
    BicomplexSpec spec_;
    int top_;
    long dK_, dR_, gM_;
    std::vector<std::vector<Block>> blocks_;
    SubquotientComplex cx_;
};

CohomologyResult total_cohomology(const BicomplexSpec& spec);

struct AlphaMap {
    std::map<int, ElementaryDivisors> relative;  // H^n(R/K, M)
    std::map<int, ElementaryDivisors> total;     // H^n(K, R, M)
    std::map<int, SparseMat> matrix;
    std::map<int, bool> injective;
    std::map<int, bool> isomorphism;
};
AlphaMap alpha_map(const BicomplexSpec& spec);

// 2-classes as pairs: f : R (x) R -> M at (0,2) and g : K (x) R -> M at (1,1).
struct CochainPair {
    Cochain f;       // degree-2 cochain on R
    SparseMat g;     // gM x (dK * dR): g(a, r) columns indexed a * dR + r
};

// An abelian extension of R by M in the category of K-algebras: a k-algebra
// S with a K-action realizing the extension.
struct KAlgebraExtension {
    StructureAlgebra S;               // over k
    std::vector<SparseMat> kaction;   // per K-basis element
    SparseMat incl;                   // M -> S
    SparseMat proj;                   // S -> R
};

KAlgebraExtension pair_to_extension(const BicomplexSpec& spec, const CochainPair& pair);
CochainPair extension_to_pair(const BicomplexSpec& spec, const KAlgebraExtension& E);
// class comparison inside the total complex
std::vector<Int> pair_to_total(const BicomplexTotal& T, const CochainPair& pair);
bool pairs_cohomologous(const BicomplexSpec& spec, const CochainPair& a, const CochainPair& b);

// 3-classes as triples: f at (0,3), g : K^2 (x) R^2 -> M at (1,2),
// h : K^2 (x) R -> M at (2,1).
struct CochainTriple {
    Cochain f;
    SparseMat g;  // gM x (dK^2 * dR^2): columns (a*dK+b)*dR^2 + r*dR + s
    SparseMat h;  // gM x (dK^2 * dR): columns (a*dK+b)*dR + r
};

// A crossed extension of K-algebras: the plain crossed extension over the
// field k together with the structure map kappa : K -> C0.
struct KCrossedExtension {
    CrossedExtension X;  // ground k
    SparseMat kappa;     // K -> C0, unital algebra map with pi kappa == phi
};
void validate_kcrossed(const BicomplexSpec& spec, const KCrossedExtension& X);

CochainTriple crossed_to_triple(const BicomplexSpec& spec, const KCrossedExtension& X,
                                uint64_t perturb_seed = 0);
std::vector<Int> triple_to_total(const BicomplexTotal& T, const CochainTriple& t);
bool triples_cohomologous(const BicomplexSpec& spec, const CochainTriple& a,
                          const CochainTriple& b);

}  // namespace cohom
