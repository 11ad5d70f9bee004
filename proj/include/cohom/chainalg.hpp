#pragma once

#include "cohom/extensions.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace cohom {

struct NotQuasiFree : Error {
    NotQuasiFree() : Error("operation requires a quasi-free chain algebra") {}
};
struct InsufficientDegreeBound : Error {
    explicit InsufficientDegreeBound(const std::string& w) : Error(w) {}
};
struct LiftFailure : Error {
    explicit LiftFailure(const std::string& w) : Error(w) {}
};
struct NotAcyclicFibration : Error {
    explicit NotAcyclicFibration(const std::string& w) : Error(w) {}
};

// Ground of a chain algebra: a plain base ring, or a commutative algebra K
// over a prime field (the two-level situation of the bicomplex sections).
// All linear algebra happens at the scalar level.
struct Ground {
    BaseRing scalar = BaseRing::integers();
    std::shared_ptr<const StructureAlgebra> kalg;  // null for plain grounds

    static Ground plain(BaseRing b) { return Ground{b, nullptr}; }
    static Ground over_algebra(std::shared_ptr<const StructureAlgebra> K) {
        if (!K->base().is_field()) throw Error("Ground: K must be an algebra over a field");
        if (!K->is_commutative()) throw Error("Ground: K must be commutative");
        // the K-coordinate bookkeeping assumes the unit is the first basis vector
        std::vector<Int> e0(K->dim(), 0);
        e0[0] = 1;
        if (K->unit() != e0) throw Error("Ground: K must have its unit as the first basis vector");
        return Ground{K->base(), std::move(K)};
    }
    bool two_level() const { return kalg != nullptr; }
    long kdim() const { return kalg ? kalg->dim() : 1; }
    bool operator==(const Ground& o) const {
        if (scalar != o.scalar || two_level() != o.two_level()) return false;
        return !two_level() || kalg.get() == o.kalg.get();
    }
};

// Non-negatively graded chain algebra with degreewise free carrier over the
// ground.  Elements of degree n are scalar coordinate vectors indexed by
// (word, kappa) with kappa running over the K-basis (trivial when plain).
//
// Two storage modes:
//  - explicit tables per degree (builtins, tensor products);
//  - quasi-free: generators with degrees, products are concatenation, word
//    bases expanded lazily per degree (guarded for concurrent readers).
class ChainAlgebra {
public:
    struct Generator {
        std::string name;
        int degree;
    };

    // table mode
    ChainAlgebra(Ground g, int bound, std::vector<long> word_counts,
                 std::map<std::pair<int, int>, std::vector<std::vector<std::vector<Int>>>> mult,
                 std::vector<SparseMat> diff, StructureAlgebra degree0);
    // quasi-free mode; dgen[i] is the scalar vector of d(gen_i) in degree
    // gen_i.degree - 1 (empty for degree-0 generators).  word_cap bounds the
    // word length and is only required when degree-0 generators exist.
    ChainAlgebra(Ground g, int bound, std::vector<Generator> gens,
                 std::vector<std::vector<Int>> dgen, long word_cap = -1);

    const Ground& ground() const { return ground_; }
    int bound() const { return bound_; }
    bool quasi_free() const { return qf_; }
    const std::vector<Generator>& generators() const { return gens_; }
    const std::vector<std::vector<Int>>& generator_diff() const { return dgen_; }
    const std::vector<std::vector<long>>& words(int n) const;  // generator id sequences
    long word_count(int n) const;
    long srank(int n) const { return word_count(n) * ground_.kdim(); }

    // differential matrix srank(n) -> srank(n-1); zero matrix at n == 0
    const SparseMat& diff(int n) const;
    // product of scalar basis vectors i (degree d1) and j (degree d2)
    std::vector<Int> basis_product(int d1, long i, int d2, long j) const;
    std::vector<Int> product(int d1, const std::vector<Int>& x, int d2,
                             const std::vector<Int>& y) const;
    // the degree-0 algebra (for plain grounds in table mode; quasi-free mode
    // with no degree-0 generators returns the scalar/K algebra)
    const StructureAlgebra& degree0() const;
    std::vector<Int> unit() const;  // scalar coords in degree 0

    // homology of the underlying complex as modules over the scalar ring
    ElementaryDivisors homology(int n) const;

    void validate() const;  // d o d == 0, Leibniz, degree-0 unit

private:
    void ensure_words(int n) const;
    Ground ground_;
    int bound_;
    bool qf_;
    // table mode
    std::vector<long> word_counts_;
    std::map<std::pair<int, int>, std::vector<std::vector<std::vector<Int>>>> mult_;
    mutable std::vector<SparseMat> diff_;
    std::optional<StructureAlgebra> degree0_;
    // quasi-free mode
    std::vector<Generator> gens_;
    std::vector<std::vector<Int>> dgen_;
    long word_cap_ = -1;
    struct Memo {
        std::mutex mu;
        std::map<int, std::vector<std::vector<long>>> words;
        std::map<int, SparseMat> diffs;
    };
    std::shared_ptr<Memo> memo_ = std::make_shared<Memo>();
};

// ---- standard chain algebras -------------------------------------------------

enum class StandardKind { Exterior, ExteriorTensorDividedPower, Disc, Sphere, LiftedAlgebra };

struct StandardParams {
    Int n = 0;                                    // Exterior: d(x) = n; Disc/Sphere: degree
    std::optional<StructureAlgebra> lift;         // LiftedAlgebra: A_0
    long word_cap = 6;                            // Disc/Sphere with degree-0 generators
};

// Exterior(n): Lambda_Z(x), |x| = 1, dx = n, over Z.
// ExteriorTensorDividedPower(p): Lambda(x) (x) Gamma(y) over Z/p^2, dx = p,
//   dy = p x, divided-power basis y^[k].
// Disc(n) / Sphere(n): the generating cofibration cells D(n), S(n).
// LiftedAlgebra(A0, n): A0 (x) Lambda_Z(x) with dx = n, over Z.
ChainAlgebra standard_chain_algebra(StandardKind kind, const StandardParams& params,
                                    int degree_bound);

// A structure algebra viewed as a chain algebra concentrated in degree 0.
ChainAlgebra from_structure_algebra(const StructureAlgebra& A, const BaseRing& ground,
                                    int degree_bound);

ChainAlgebra tensor_chain_algebras(const ChainAlgebra& A, const ChainAlgebra& B, int degree_bound);

// ---- chain maps and FP targets -------------------------------------------------

// Chain algebra with finitely presented components; used as lifting target
// (extensions viewed as chain algebras) and as the output of truncation.
struct FPChainAlgebra {
    BaseRing ground = BaseRing::integers();
    int top = 0;
    std::vector<FPModule> comp;
    std::map<std::pair<int, int>, std::vector<std::vector<std::vector<Int>>>> mult;
    std::vector<SparseMat> diff;  // diff[n] : comp[n] -> comp[n-1] for n >= 1
    std::vector<Int> unit;

    std::vector<Int> product(int d1, const std::vector<Int>& x, int d2,
                             const std::vector<Int>& y) const;
    ElementaryDivisors homology(int n) const;
    void validate() const;
};

FPChainAlgebra fp_from_structure(const StructureAlgebra& A, const BaseRing& ground, int top);
// View a table-mode chain algebra over Z/m as an FP chain algebra over a
// smaller ground (e.g. a Z/p^2 resolution as a Z-chain algebra).
FPChainAlgebra fp_view(const ChainAlgebra& A, const BaseRing& ground);
// E_* with E_0 = E, E_1 = M (abelian extension as a chain algebra).
FPChainAlgebra fp_from_abelian_extension(const AbelianExtension& X);
// C_* with C_0, C_1 and C_2 = M; the pairing C_1 (x) C_1 -> C_2 is zero.
FPChainAlgebra fp_from_crossed_extension(const CrossedExtension& X);

struct FPChainMap {
    std::vector<SparseMat> comp;  // comp[n] : source_n -> target_n
};

// surjective in every degree with acyclic kernel through `through_degree`
void check_acyclic_fibration(const FPChainAlgebra& X, const FPChainAlgebra& Y,
                             const FPChainMap& p, int through_degree);

// Lift of g : A -> Y along the acyclic fibration p : X -> Y, built generator
// by generator.  A must be quasi-free.  Returns f with p o f == g.
FPChainMap lift_quasi_free(const ChainAlgebra& A, const FPChainAlgebra& X,
                           const FPChainAlgebra& Y, const FPChainMap& p, const FPChainMap& g,
                           int through_degree);

// ---- Der complex ---------------------------------------------------------------

// Coefficients for the derivation complex: a module over the scalar ring with
// a K-action (two-level grounds) and H_0-bimodule actions through the
// augmentation.  For resolutions of rank-1 algebras both bimodule actions are
// scalar multiplications and may be omitted.
struct DerCoefficients {
    FPModule carrier;
    std::vector<SparseMat> kaction;  // per K-basis element; empty when plain
};

struct DerComplex {
    SubquotientComplex cx;
    std::vector<long> gens_per_degree;
};
DerComplex der_complex(const ChainAlgebra& A, const DerCoefficients& M, int top);

// ---- naive Hochschild total complex --------------------------------------------

// Total complex of the cosimplicial Hochschild construction for a degreewise
// free chain algebra over a plain ground, with M a bimodule over the
// degree-0 algebra killing im(d_1).  Normalized in the cosimplicial direction.
class ChainTotalComplex {
public:
    struct Slot {
        int q;      // internal degree of the slot
        long word;  // index into the effective basis of that degree
        bool operator==(const Slot& o) const { return q == o.q && word == o.word; }
    };

    ChainTotalComplex(const ChainAlgebra& A, const Bimodule& M, int top,
                      const Budget& budget = Budget::global());
    const SubquotientComplex& cx() const { return cx_; }
    long ambient(int n) const;
    long value_gens() const { return gM_; }
    const std::vector<std::vector<Slot>>& slot_words(int n) const { return words_[n]; }
    long word_index(int n, const std::vector<Slot>& w) const {
        for (size_t i = 0; i < words_[n].size(); ++i)
            if (words_[n][i] == w) return (long)i;
        return -1;
    }

private:
    void build(const ChainAlgebra& A, const Bimodule& M);
    int top_;
    long gM_;
    // effective bases: degree 0 uses the unit-complement of the adapted
    // basis; positive degrees use the full word basis
    std::vector<long> ebasis_;
    std::vector<std::vector<std::vector<Slot>>> words_;  // per total degree: list of slot words
    SubquotientComplex cx_;
};

CohomologyResult chain_hochschild_total(const ChainAlgebra& A, const Bimodule& M, int n_max,
                                        const Budget& budget = Budget::global());

// ---- truncation ------------------------------------------------------------------

FPChainAlgebra truncate(const ChainAlgebra& X, int m);
// tau_{<=1} of a chain algebra as a crossed bimodule (plain grounds).
CrossedBimodule truncate_to_crossed(const ChainAlgebra& X);

// ---- killing cycles ---------------------------------------------------------------

// Quasi-free resolution of the rank-1 algebra ground/(ker aug) built by
// adjoining generators that kill homology classes degree by degree.  For
// plain grounds aug is the quotient onto `target` (Z -> Z/n etc.); for
// two-level grounds aug : K -> k is an algebra map given on the K-basis.
struct KillingCyclesResult {
    ChainAlgebra resolution;
    // augmentation to the target in degree 0: srank(0) -> target gens
    SparseMat augmentation;
};
KillingCyclesResult killing_cycles_resolution(const Ground& ground, const BaseRing& target,
                                              const std::vector<Int>& aug, int degree_bound);

}  // namespace cohom
